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

#ifndef QCTRL_FIDELITY_OPTIM_HPP
#define QCTRL_FIDELITY_OPTIM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qctrl/common.hpp"
#include "qctrl/parallel.hpp"
#include "qctrl/propagator.hpp"
#include "qctrl/rng.hpp"
#include "qctrl/spin_model.hpp"

namespace qctrl {

// F = |tr(U† U_target)| / d, invariant under a global phase of either side
inline double gate_fidelity(const Matrix& u, const Matrix& target) {
  if (u.rows() != target.rows()) {
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  }
  return std::abs(adjoint_trace(u, target)) / static_cast<double>(u.rows());
}

inline double gate_fidelity(const UnitaryMatrix& u, const TargetGate& target) {
  return gate_fidelity(u.matrix, target.matrix);
}

struct OptimizationConfig {
  SpinChainModel model;
  TargetGate target;
  ControlScheme scheme;
  int n_t;
  double segment_duration;
  int restarts = 20;
  double init_amplitude_bound = 20.0;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  std::uint64_t rng_seed = 0;
  int threads = 1;

  void validate() const {
    if (n_t < 1) throw std::invalid_argument("OptimizationConfig: n_t >= 1");
    if (scheme_requires_even(scheme) && n_t % 2 != 0) {
      throw std::invalid_argument(
          "OptimizationConfig: alternating schemes need even n_t");
    }
    if (!(segment_duration > 0.0)) {
      throw std::invalid_argument("OptimizationConfig: segment_duration > 0");
    }
    if (restarts < 1) throw std::invalid_argument("OptimizationConfig: restarts >= 1");
    if (!(init_amplitude_bound > 0.0)) {
      throw std::invalid_argument("OptimizationConfig: init_amplitude_bound > 0");
    }
    if (target.matrix.rows() != model.dim) {
      throw std::invalid_argument("OptimizationConfig: target/model mismatch");
    }
  }
};

struct OptimizationResult {
  std::vector<double> best_amplitudes;
  double best_fidelity = 0.0;
  std::vector<double> per_restart_fidelities;
  std::vector<int> iterations_used;
  std::uint64_t seed_used = 0;
};

namespace detail {

// Fidelity of the piecewise-constant evolution as a function of the N_t
// amplitudes, with its exact gradient. The derivative of each segment
// exponential is taken in the segment Hamiltonian's eigenbasis
// (Daleckii-Krein / Loewner form): for exp(-i H T) with H = H0 + h S,
//   (d/dh)_{mn} = <m|S|n> (e^{-i lam_m T} - e^{-i lam_n T}) / (lam_m - lam_n),
// with the limit -i T e^{-i lam_m T} <m|S|m> on near-degenerate pairs.
class FidelityProblem {
 public:
  FidelityProblem(const SpinChainModel& model, const TargetGate& target,
                  ControlScheme scheme, int n_t, double segment_duration)
      : d_(model.dim),
        n_(n_t),
        t_(segment_duration),
        h0_(build_h0(model).matrix),
        target_(target.matrix),
        target_adj_(target.matrix.adjoint()) {
    Matrix ctrl[3] = {build_control_operator(model, Axis::X).matrix,
                      build_control_operator(model, Axis::Y).matrix,
                      build_control_operator(model, Axis::Z).matrix};
    controls_.reserve(n_);
    for (int k = 0; k < n_; ++k) {
      controls_.push_back(ctrl[static_cast<int>(scheme_axis(scheme, k))]);
    }
  }

  int size() const { return n_; }

  double value(const RealVector& amps) const {
    Matrix u = Matrix::Identity(d_, d_);
    for (int k = 0; k < n_; ++k) {
      u = spectral_unitary(h0_ + amps[k] * controls_[k], t_) * u;
    }
    return std::abs(adjoint_trace(u, target_)) / d_;
  }

  // returns F and writes dF/dh into grad
  double value_and_gradient(const RealVector& amps, RealVector& grad) const {
    std::vector<Eigen::SelfAdjointEigenSolver<Matrix>> eig;
    eig.reserve(n_);
    std::vector<Matrix> unitaries(n_);
    std::vector<Matrix> prefix(n_ + 1);
    prefix[0] = Matrix::Identity(d_, d_);
    for (int k = 0; k < n_; ++k) {
      eig.emplace_back(h0_ + amps[k] * controls_[k]);
      const auto& lam = eig[k].eigenvalues();
      const Matrix& v = eig[k].eigenvectors();
      Eigen::VectorXcd phase(d_);
      for (int m = 0; m < d_; ++m) {
        phase(m) = std::exp(Complex(0.0, -lam(m) * t_));
      }
      unitaries[k] = v * phase.asDiagonal() * v.adjoint();
      prefix[k + 1] = unitaries[k] * prefix[k];
    }

    Complex z = adjoint_trace(prefix[n_], target_);  // tr(U† G)... conj below
    // adjoint_trace(U, G) = tr(U† G); F = |z|/d either way
    double az = std::abs(z);
    double f = az / d_;

    grad.setZero(n_);
    if (az < 1e-14) return f;  // |tr| not differentiable at 0

    Matrix suffix = Matrix::Identity(d_, d_);  // U_{n-1} ... U_{k+1}
    for (int k = n_ - 1; k >= 0; --k) {
      const auto& lam = eig[k].eigenvalues();
      const Matrix& v = eig[k].eigenvectors();
      Matrix w = v.adjoint() * controls_[k] * v;
      Matrix e(d_, d_);
      for (int m = 0; m < d_; ++m) {
        Complex pm = std::exp(Complex(0.0, -lam(m) * t_));
        for (int n = 0; n < d_; ++n) {
          double dl = lam(m) - lam(n);
          if (std::abs(dl) < 1e-10) {
            e(m, n) = Complex(0.0, -t_) * pm * w(m, n);
          } else {
            Complex pn = std::exp(Complex(0.0, -lam(n) * t_));
            e(m, n) = (pm - pn) / dl * w(m, n);
          }
        }
      }
      // d tr(U† G)/dh_k = conj(tr(G† R D L)) ; work with y = tr(G† R D L)
      Matrix b = v.adjoint() * (prefix[k] * target_adj_ * suffix) * v;
      Complex y = (b.transpose().cwiseProduct(e)).sum();
      // z = conj(tr(G† U)); d|z| = Re(conj(z) dz)
      grad[k] = (std::conj(z) * std::conj(y)).real() / (d_ * az);
      suffix = suffix * unitaries[k];
    }
    return f;
  }

 private:
  int d_;
  int n_;
  double t_;
  Matrix h0_;
  Matrix target_;
  Matrix target_adj_;
  std::vector<Matrix> controls_;
};

struct BfgsOutcome {
  RealVector best_x;
  double best_f = 1.0;  // objective 1 - F at the best evaluated iterate
  int iterations = 0;
  bool line_search_failed = false;
};

// BFGS with strong Wolfe line search (c1 = 1e-4, c2 = 0.9), minimizing
// 1 - F. Tracks the best point seen across all evaluations, including line
// search trials, so the reported fidelity is never below an evaluated one.
class BfgsMinimizer {
 public:
  BfgsMinimizer(const FidelityProblem& problem, int max_iterations,
                double gradient_tolerance)
      : problem_(problem),
        max_iter_(max_iterations),
        gtol_(gradient_tolerance) {}

  BfgsOutcome run(RealVector x) {
    const int n = problem_.size();
    BfgsOutcome out;
    out.best_x = x;

    RealVector g(n);
    double f = eval(x, g, out);
    RealMatrix hinv = RealMatrix::Identity(n, n);
    RealVector p(n), g_new(n), x_new(n);

    for (int iter = 0; iter < max_iter_; ++iter) {
      out.iterations = iter;
      if (g.lpNorm<Eigen::Infinity>() < gtol_) return out;

      p = -hinv * g;
      if (g.dot(p) >= 0.0) {  // lost positive definiteness; restart
        hinv.setIdentity();
        p = -g;
      }

      double alpha = line_search(x, p, f, g.dot(p), x_new, g_new, out);
      if (alpha <= 0.0) {
        out.line_search_failed = true;
        return out;
      }
      double f_new = last_f_;

      RealVector s = x_new - x;
      RealVector y = g_new - g;
      double sy = s.dot(y);
      if (sy > 1e-10 * s.norm() * y.norm()) {
        double rho = 1.0 / sy;
        RealMatrix left =
            RealMatrix::Identity(n, n) - rho * s * y.transpose();
        hinv = left * hinv * left.transpose() + rho * s * s.transpose();
      }
      x = x_new;
      g = g_new;
      f = f_new;
    }
    out.iterations = max_iter_;
    return out;
  }

 private:
  double eval(const RealVector& x, RealVector& grad_obj, BfgsOutcome& out) {
    RealVector df(problem_.size());
    double fid = problem_.value_and_gradient(x, df);
    grad_obj = -df;
    double f = 1.0 - fid;
    if (f < out.best_f) {
      out.best_f = f;
      out.best_x = x;
    }
    last_f_ = f;
    return f;
  }

  // Nocedal & Wright Algorithm 3.5/3.6. Returns alpha, or 0 on failure.
  // On success x_out/g_out hold the accepted point and gradient.
  double line_search(const RealVector& x, const RealVector& p, double f0,
                     double dphi0, RealVector& x_out, RealVector& g_out,
                     BfgsOutcome& out) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    if (dphi0 >= 0.0) return 0.0;

    auto phi = [&](double a, RealVector& g) {
      x_out = x + a * p;
      double f = eval(x_out, g, out);
      return std::pair<double, double>{f, g.dot(p)};
    };

    double a_prev = 0.0, f_prev = f0, d_prev = dphi0;
    double a = 1.0;
    for (int i = 0; i < 30; ++i) {
      auto [fa, da] = phi(a, g_out);
      if (fa > f0 + c1 * a * dphi0 || (i > 0 && fa >= f_prev)) {
        return zoom(a_prev, f_prev, d_prev, a, fa, x, p, f0, dphi0, x_out,
                    g_out, out);
      }
      if (std::abs(da) <= -c2 * dphi0) return a;
      if (da >= 0.0) {
        return zoom(a, fa, da, a_prev, f_prev, x, p, f0, dphi0, x_out, g_out,
                    out);
      }
      a_prev = a;
      f_prev = fa;
      d_prev = da;
      a *= 2.0;
    }
    return 0.0;
  }

  double zoom(double lo, double f_lo, double d_lo, double hi, double f_hi,
              const RealVector& x, const RealVector& p, double f0,
              double dphi0, RealVector& x_out, RealVector& g_out,
              BfgsOutcome& out) {
    constexpr double c1 = 1e-4;
    constexpr double c2 = 0.9;
    auto phi = [&](double a, RealVector& g) {
      x_out = x + a * p;
      double f = eval(x_out, g, out);
      return std::pair<double, double>{f, g.dot(p)};
    };
    for (int i = 0; i < 50; ++i) {
      // quadratic interpolation using (lo, f_lo, d_lo) and (hi, f_hi),
      // safeguarded by bisection
      double a;
      double denom = 2.0 * (f_hi - f_lo - d_lo * (hi - lo));
      if (std::abs(denom) > 1e-300) {
        a = lo - d_lo * (hi - lo) * (hi - lo) / denom;
        double lo_b = std::min(lo, hi), hi_b = std::max(lo, hi);
        double margin = 0.1 * (hi_b - lo_b);
        if (!(a > lo_b + margin && a < hi_b - margin)) a = 0.5 * (lo + hi);
      } else {
        a = 0.5 * (lo + hi);
      }
      auto [fa, da] = phi(a, g_out);
      if (fa > f0 + c1 * a * dphi0 || fa >= f_lo) {
        hi = a;
        f_hi = fa;
      } else {
        if (std::abs(da) <= -c2 * dphi0) return a;
        if (da * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = f_lo;
        }
        lo = a;
        f_lo = fa;
        d_lo = da;
      }
      if (std::abs(hi - lo) < 1e-16) break;
    }
    return 0.0;
  }

  const FidelityProblem& problem_;
  int max_iter_;
  double gtol_;
  double last_f_ = 1.0;
};

}  // namespace detail

// dF/dh_k at the given amplitudes, exact (spectral Fréchet derivative)
inline std::vector<double> fidelity_gradient(const OptimizationConfig& config,
                                             const std::vector<double>& amps) {
  config.validate();
  if (static_cast<int>(amps.size()) != config.n_t) {
    throw std::invalid_argument("fidelity_gradient: amplitude count != n_t");
  }
  detail::FidelityProblem problem(config.model, config.target, config.scheme,
                                  config.n_t, config.segment_duration);
  RealVector x = Eigen::Map<const RealVector>(amps.data(), amps.size());
  RealVector g(config.n_t);
  problem.value_and_gradient(x, g);
  return std::vector<double>(g.data(), g.data() + g.size());
}

inline double evaluate_fidelity(const OptimizationConfig& config,
                                const std::vector<double>& amps) {
  config.validate();
  detail::FidelityProblem problem(config.model, config.target, config.scheme,
                                  config.n_t, config.segment_duration);
  return problem.value(Eigen::Map<const RealVector>(amps.data(), amps.size()));
}

// Multi-start BFGS maximization of the gate fidelity. Each restart draws
// its initial amplitudes i.i.d. uniform in [-bound, bound] from a stream
// derived from (rng_seed, restart index), so the result is independent of
// the thread count. Ties between restarts go to the lowest index.
// `warm_starts` entries, if any, replace the random guess of the leading
// restart indices.
inline OptimizationResult optimize(
    const OptimizationConfig& config,
    const std::vector<std::vector<double>>& warm_starts = {}) {
  config.validate();
  detail::FidelityProblem problem(config.model, config.target, config.scheme,
                                  config.n_t, config.segment_duration);

  struct RestartRecord {
    double fidelity = 0.0;
    RealVector amplitudes;
    int iterations = 0;
  };
  std::vector<RestartRecord> records(config.restarts);

  parallel_for(config.restarts, config.threads, [&](int r) {
    RealVector x0(config.n_t);
    if (r < static_cast<int>(warm_starts.size())) {
      if (static_cast<int>(warm_starts[r].size()) != config.n_t) {
        throw std::invalid_argument("optimize: warm start length != n_t");
      }
      x0 = Eigen::Map<const RealVector>(warm_starts[r].data(), config.n_t);
    } else {
      SplitMix64 rng = derive_stream(config.rng_seed, static_cast<std::uint64_t>(r));
      for (int k = 0; k < config.n_t; ++k) {
        x0[k] = rng.uniform(-config.init_amplitude_bound,
                            config.init_amplitude_bound);
      }
    }
    detail::BfgsMinimizer minimizer(problem, config.max_iterations,
                                    config.gradient_tolerance);
    detail::BfgsOutcome outcome = minimizer.run(std::move(x0));
    records[r] = {1.0 - outcome.best_f, std::move(outcome.best_x),
                  outcome.iterations};
  });

  OptimizationResult result;
  result.seed_used = config.rng_seed;
  int best = 0;
  for (int r = 0; r < config.restarts; ++r) {
    result.per_restart_fidelities.push_back(records[r].fidelity);
    result.iterations_used.push_back(records[r].iterations);
    if (records[r].fidelity > records[best].fidelity) best = r;
  }
  result.best_fidelity = records[best].fidelity;
  result.best_amplitudes.assign(
      records[best].amplitudes.data(),
      records[best].amplitudes.data() + records[best].amplitudes.size());
  return result;
}

}  // namespace qctrl

#endif  // QCTRL_FIDELITY_OPTIM_HPP
