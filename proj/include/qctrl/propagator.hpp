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

#ifndef QCTRL_PROPAGATOR_HPP
#define QCTRL_PROPAGATOR_HPP

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qctrl/common.hpp"
#include "qctrl/spin_model.hpp"

namespace qctrl {

// Piecewise-constant control pulse train: N_t segments of duration T, each
// applying field amplitudes[k] along axes[k] on the first spin. Total time
// t_f = N_t * T.
struct PulseSequence {
  ControlScheme scheme;
  double segment_duration;
  std::vector<Axis> axes;
  std::vector<double> amplitudes;

  PulseSequence(ControlScheme scheme_, double t,
                std::vector<double> amplitudes_)
      : scheme(scheme_),
        segment_duration(t),
        amplitudes(std::move(amplitudes_)) {
    axes.reserve(amplitudes.size());
    for (std::size_t k = 0; k < amplitudes.size(); ++k) {
      axes.push_back(scheme_axis(scheme, static_cast<int>(k)));
    }
    validate();
  }

  PulseSequence(ControlScheme scheme_, double t, std::vector<Axis> axes_,
                std::vector<double> amplitudes_)
      : scheme(scheme_),
        segment_duration(t),
        axes(std::move(axes_)),
        amplitudes(std::move(amplitudes_)) {
    validate();
  }

  int segment_count() const { return static_cast<int>(amplitudes.size()); }
  double total_time() const { return segment_count() * segment_duration; }

 private:
  void validate() const {
    if (amplitudes.empty()) {
      throw std::invalid_argument("PulseSequence: need at least one segment");
    }
    if (axes.size() != amplitudes.size()) {
      throw std::invalid_argument("PulseSequence: axes/amplitudes mismatch");
    }
    if (!(segment_duration > 0.0)) {
      throw std::invalid_argument("PulseSequence: segment duration must be > 0");
    }
    if (scheme_requires_even(scheme) && amplitudes.size() % 2 != 0) {
      throw std::invalid_argument(
          "PulseSequence: alternating schemes need an even segment count");
    }
    for (std::size_t k = 0; k < axes.size(); ++k) {
      if (axes[k] != scheme_axis(scheme, static_cast<int>(k))) {
        throw std::invalid_argument(
            "PulseSequence: axis pattern inconsistent with scheme");
      }
    }
  }
};

struct UnitaryMatrix {
  Matrix matrix;

  explicit UnitaryMatrix(Matrix m) : matrix(std::move(m)) {
    if (!is_unitary(matrix, 1e-10)) {
      throw std::invalid_argument("UnitaryMatrix: matrix not unitary");
    }
  }
};

// exp(-i h t) via eigendecomposition
inline UnitaryMatrix expm_hermitian(const Matrix& h, double t) {
  if (!is_hermitian(h, 1e-10)) {
    throw std::invalid_argument("expm_hermitian: input not Hermitian");
  }
  return UnitaryMatrix(spectral_unitary(h, t));
}

inline UnitaryMatrix expm_hermitian(const HermitianOperator& h, double t) {
  return UnitaryMatrix(spectral_unitary(h.matrix, t));
}

// U(t_f) = U_{N_t} ... U_2 U_1 with U_k = exp(-i (H_0 + h_k S_{1,axis_k}) T)
inline UnitaryMatrix propagate(const SpinChainModel& model,
                               const HermitianOperator& h0,
                               const PulseSequence& seq) {
  if (h0.matrix.rows() != model.dim) {
    throw std::invalid_argument("propagate: operator/model dimension mismatch");
  }
  Matrix controls[3] = {build_control_operator(model, Axis::X).matrix,
                        build_control_operator(model, Axis::Y).matrix,
                        build_control_operator(model, Axis::Z).matrix};
  Matrix u = Matrix::Identity(model.dim, model.dim);
  for (int k = 0; k < seq.segment_count(); ++k) {
    Matrix hk =
        h0.matrix + seq.amplitudes[k] * controls[static_cast<int>(seq.axes[k])];
    u = spectral_unitary(hk, seq.segment_duration) * u;
  }
  return UnitaryMatrix(std::move(u));
}

// Same pulse train but with every switching event smoothed by a first-order
// exponential ramp of time constant tau: the active axis relaxes from the
// amplitude it held at the end of its previous segment toward the commanded
// amplitude, while all inactive axes decay toward zero with the same tau.
// Each segment is integrated as a product of `substeps` exponentials using
// a two-point Gauss Magnus rule, fourth order in the substep size. tau = 0
// reproduces propagate exactly.
inline UnitaryMatrix propagate_with_rise_time(const SpinChainModel& model,
                                              const HermitianOperator& h0,
                                              const PulseSequence& seq,
                                              double tau, int substeps) {
  if (tau < 0.0) {
    throw std::invalid_argument("propagate_with_rise_time: tau must be >= 0");
  }
  if (substeps < 1) {
    throw std::invalid_argument("propagate_with_rise_time: substeps must be >= 1");
  }
  if (h0.matrix.rows() != model.dim) {
    throw std::invalid_argument(
        "propagate_with_rise_time: operator/model dimension mismatch");
  }
  Matrix controls[3] = {build_control_operator(model, Axis::X).matrix,
                        build_control_operator(model, Axis::Y).matrix,
                        build_control_operator(model, Axis::Z).matrix};

  const double t_seg = seq.segment_duration;
  const double dt = t_seg / substeps;
  double held[3] = {0.0, 0.0, 0.0};  // field on each axis at segment start
  Matrix u = Matrix::Identity(model.dim, model.dim);

  for (int k = 0; k < seq.segment_count(); ++k) {
    int active = static_cast<int>(seq.axes[k]);
    double target = seq.amplitudes[k];
    auto field_hamiltonian = [&](double t) {
      Matrix h = h0.matrix;
      for (int a = 0; a < 3; ++a) {
        double amp;
        if (tau == 0.0) {
          amp = (a == active) ? target : 0.0;
        } else {
          double decay = std::exp(-t / tau);
          amp = (a == active) ? target + (held[a] - target) * decay
                              : held[a] * decay;
        }
        if (amp != 0.0) h += amp * controls[a];
      }
      return h;
    };
    const double node = std::sqrt(3.0) / 6.0;  // Gauss offsets (1/2 -+ node)
    for (int s = 0; s < substeps; ++s) {
      Matrix h1 = field_hamiltonian((s + 0.5 - node) * dt);
      Matrix h2 = field_hamiltonian((s + 0.5 + node) * dt);
      // exp(-i M) with M from the second-order Magnus expansion; the
      // commutator is anti-Hermitian, so i times it keeps M Hermitian
      Matrix m = 0.5 * dt * (h1 + h2) +
                 Complex(0.0, std::sqrt(3.0) * dt * dt / 12.0) *
                     (h1 * h2 - h2 * h1);
      u = spectral_unitary(m, 1.0) * u;
    }
    // advance held fields to the segment boundary
    if (tau == 0.0) {
      for (int a = 0; a < 3; ++a) held[a] = (a == active) ? target : 0.0;
    } else {
      double decay = std::exp(-t_seg / tau);
      for (int a = 0; a < 3; ++a) {
        held[a] = (a == active) ? target + (held[a] - target) * decay
                                : held[a] * decay;
      }
    }
  }
  return UnitaryMatrix(std::move(u));
}

}  // namespace qctrl

#endif  // QCTRL_PROPAGATOR_HPP
