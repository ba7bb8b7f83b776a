// Copyright 2026 The qctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCTRL_CONTROLLABILITY_HPP
#define QCTRL_CONTROLLABILITY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qctrl/common.hpp"
#include "qctrl/propagator.hpp"
#include "qctrl/spin_model.hpp"

namespace qctrl {

// Dynamical Lie algebra closure: orthonormal basis of the smallest real
// Lie algebra containing the generators, under the Hilbert-Schmidt inner
// product <A, B> = tr(A† B) (real on skew-Hermitian pairs).
struct LieClosureReport {
  int generator_count = 0;
  int dimension = 0;
  std::vector<Matrix> basis;
  bool truncated = false;
};

namespace detail {

inline void check_skew_traceless(const Matrix& m, const char* what) {
  if (max_abs(m + m.adjoint()) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": not skew-Hermitian");
  }
  if (std::abs(m.trace()) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": not traceless");
  }
}

inline double hs_inner(const Matrix& a, const Matrix& b) {
  return adjoint_trace(a, b).real();
}

// Orthogonal residual of `m` against the basis. Two classical Gram-Schmidt
// passes; near the d^2-1 ceiling a single pass leaks enough floating point
// error to admit spurious directions.
inline Matrix project_out(const std::vector<Matrix>& basis, Matrix m) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Matrix& b : basis) {
      m -= hs_inner(b, m) * b;
    }
  }
  return m;
}

}  // namespace detail

inline LieClosureReport lie_closure(const std::vector<Matrix>& generators,
                                    double tolerance = 1e-8) {
  if (generators.empty()) {
    throw std::invalid_argument("lie_closure: no generators");
  }
  const Eigen::Index d = generators.front().rows();
  const int max_dim = static_cast<int>(d * d) - 1;
  for (const Matrix& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw std::invalid_argument("lie_closure: generator dimension mismatch");
    }
    detail::check_skew_traceless(g, "lie_closure generator");
  }

  LieClosureReport report;
  report.generator_count = static_cast<int>(generators.size());

  auto try_insert = [&](const Matrix& candidate) -> bool {
    double scale = std::sqrt(detail::hs_inner(candidate, candidate));
    // commutators that vanish in exact arithmetic come back as rounding
    // noise with tiny norm; normalizing those would pollute the basis
    if (scale <= tolerance) return false;
    Matrix residual = detail::project_out(report.basis, candidate);
    double norm = std::sqrt(detail::hs_inner(residual, residual));
    if (norm <= tolerance * scale) return false;
    report.basis.push_back(residual / norm);
    return true;
  };

  for (const Matrix& g : generators) try_insert(g);

  // breadth-first closure: only new x all pairs need commuting, commutators
  // among already-processed pairs are in the span
  std::size_t processed = 0;
  int idle_sweeps = 0;
  while (processed < report.basis.size() && idle_sweeps < 10) {
    std::size_t frontier_end = report.basis.size();
    bool grew = false;
    for (std::size_t i = processed; i < frontier_end; ++i) {
      for (std::size_t j = 0; j < frontier_end; ++j) {
        if (j >= processed && j <= i) continue;  // (new, new) pairs once
        Matrix comm =
            report.basis[i] * report.basis[j] - report.basis[j] * report.basis[i];
        if (try_insert(comm)) grew = true;
        if (static_cast<int>(report.basis.size()) > max_dim) {
          throw std::runtime_error(
              "lie_closure: basis exceeded d^2 - 1, inconsistent input");
        }
      }
    }
    processed = frontier_end;
    idle_sweeps = grew ? 0 : idle_sweeps + 1;
  }
  report.truncated = processed < report.basis.size();
  report.dimension = static_cast<int>(report.basis.size());
  return report;
}

// true iff the candidate's residual against the basis span is below
// tolerance relative to the candidate's own norm
inline bool in_span(const LieClosureReport& report, const Matrix& candidate,
                    double tolerance = 1e-8) {
  detail::check_skew_traceless(candidate, "in_span candidate");
  if (!report.basis.empty() &&
      report.basis.front().rows() != candidate.rows()) {
    throw std::invalid_argument("in_span: dimension mismatch");
  }
  double scale = std::sqrt(detail::hs_inner(candidate, candidate));
  if (scale <= tolerance) return true;
  Matrix residual = detail::project_out(report.basis, candidate);
  return std::sqrt(detail::hs_inner(residual, residual)) < tolerance * scale;
}

inline std::vector<Axis> scheme_control_axes(ControlScheme scheme) {
  switch (scheme) {
    case ControlScheme::XOnly: return {Axis::X};
    case ControlScheme::XyAlternating: return {Axis::X, Axis::Y};
    case ControlScheme::XzAlternating: return {Axis::X, Axis::Z};
  }
  throw std::logic_error("bad scheme");
}

inline std::vector<Matrix> control_lie_generators(const SpinChainModel& model,
                                                  ControlScheme scheme) {
  const Complex mi(0.0, -1.0);
  std::vector<Matrix> gens;
  gens.push_back(mi * build_h0(model).matrix);
  for (Axis a : scheme_control_axes(scheme)) {
    gens.push_back(mi * build_control_operator(model, a).matrix);
  }
  return gens;
}

struct ControllabilityVerdict {
  bool fully_controllable = false;
  LieClosureReport report;
};

// complete controllability <=> dim of the dynamical Lie algebra is d^2 - 1
inline ControllabilityVerdict is_fully_controllable(const SpinChainModel& model,
                                                    ControlScheme scheme) {
  ControllabilityVerdict v;
  v.report = lie_closure(control_lie_generators(model, scheme));
  v.fully_controllable = v.report.dimension == model.dim * model.dim - 1;
  return v;
}

struct XReachabilityRecord {
  bool exp_identity_ok = false;  // exp(-i (pi/2) X_Ns) == -i X_Ns
  bool generator_in_span = false;  // -i (pi/2) X_Ns in the x-only closure
  LieClosureReport closure;
};

// Certifies that the last-spin flip is reachable with an x control only:
// A = -i (pi/2) X_Ns lies in the closure of {-iH0, -iS1x} and exp(A) equals
// -i X_Ns (X squares to the identity).
inline XReachabilityRecord verify_x_reachability(const SpinChainModel& model) {
  XReachabilityRecord rec;
  Matrix x_last = build_target(model, GateKind::XLast).matrix;

  const double pi = std::numbers::pi;
  Matrix exp_a = spectral_unitary(x_last, pi / 2.0);
  rec.exp_identity_ok = max_abs(exp_a - Complex(0.0, -1.0) * x_last) < 1e-10;

  rec.closure = lie_closure(control_lie_generators(model, ControlScheme::XOnly));
  rec.generator_in_span =
      in_span(rec.closure, Complex(0.0, -pi / 2.0) * x_last, 1e-8);
  return rec;
}

}  // namespace qctrl

#endif  // QCTRL_CONTROLLABILITY_HPP
