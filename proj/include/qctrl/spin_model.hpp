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

#ifndef QCTRL_SPIN_MODEL_HPP
#define QCTRL_SPIN_MODEL_HPP

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qctrl/common.hpp"

namespace qctrl {

enum class Axis { X, Y, Z };

enum class GateKind { XLast, CnotLast2, SqrtSwapLast2 };

enum class ControlScheme { XyAlternating, XzAlternating, XOnly };

inline const char* to_string(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  throw std::logic_error("bad axis");
}

inline const char* to_string(GateKind g) {
  switch (g) {
    case GateKind::XLast: return "x";
    case GateKind::CnotLast2: return "cnot";
    case GateKind::SqrtSwapLast2: return "sqrtswap";
  }
  throw std::logic_error("bad gate kind");
}

inline const char* to_string(ControlScheme s) {
  switch (s) {
    case ControlScheme::XyAlternating: return "xy";
    case ControlScheme::XzAlternating: return "xz";
    case ControlScheme::XOnly: return "x";
  }
  throw std::logic_error("bad scheme");
}

// Spin-1/2 XXZ chain: length ns, anisotropy delta, coupling j. Units are
// hbar = 1, energies in units of j, times in units of 1/j. The Hilbert
// space dimension d = 2^ns is kept dense; site 1 is the most significant
// qubit in Kronecker ordering.
struct SpinChainModel {
  int ns;
  double delta;
  double j;
  int dim;

  SpinChainModel(int ns_, double delta_, double j_ = 1.0)
      : ns(ns_), delta(delta_), j(j_), dim(1 << ns_) {
    if (ns < 2) throw std::invalid_argument("SpinChainModel: ns must be >= 2");
    if (j <= 0.0) throw std::invalid_argument("SpinChainModel: j must be > 0");
    if (delta <= 0.0) {
      throw std::invalid_argument("SpinChainModel: delta must be > 0");
    }
    if (ns > 8) {
      std::cerr << "SpinChainModel: warning: ns = " << ns
                << " gives a dense " << dim << "x" << dim
                << " Hilbert space; expect long runtimes\n";
    }
  }
};

// A Hermitian matrix validated at construction (entrywise 1e-12).
struct HermitianOperator {
  Matrix matrix;

  explicit HermitianOperator(Matrix m) : matrix(std::move(m)) {
    if (matrix.rows() != matrix.cols()) {
      throw std::invalid_argument("HermitianOperator: matrix not square");
    }
    if (!is_hermitian(matrix, 1e-12)) {
      throw std::invalid_argument("HermitianOperator: matrix not Hermitian");
    }
  }
};

struct TargetGate {
  GateKind kind;
  Matrix matrix;

  TargetGate(GateKind kind_, Matrix m) : kind(kind_), matrix(std::move(m)) {
    if (!is_unitary(matrix, 1e-12)) {
      throw std::invalid_argument("TargetGate: matrix not unitary");
    }
  }
};

namespace detail {

inline Matrix pauli(Axis a) {
  Matrix p(2, 2);
  switch (a) {
    case Axis::X:
      p << 0, 1, 1, 0;
      break;
    case Axis::Y:
      p << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Axis::Z:
      p << 1, 0, 0, -1;
      break;
  }
  return p;
}

// place a 2^k-dimensional block at qubit positions [site, site+k) of an
// ns-qubit register, identity elsewhere; site is 1-based, site 1 most
// significant
inline Matrix embed(int ns, int site, const Matrix& block) {
  int k = 0;
  while ((1 << k) < block.rows()) ++k;
  Matrix left = Matrix::Identity(1 << (site - 1), 1 << (site - 1));
  int right_qubits = ns - (site - 1) - k;
  Matrix right = Matrix::Identity(1 << right_qubits, 1 << right_qubits);
  return kron(kron(left, block), right);
}

}  // namespace detail

// S_{site,axis} = (Pauli/2) at `site`, identity elsewhere
inline HermitianOperator spin_operator(const SpinChainModel& model, int site,
                                       Axis axis) {
  if (site < 1 || site > model.ns) {
    throw std::invalid_argument("spin_operator: site out of range [1, ns]");
  }
  return HermitianOperator(
      detail::embed(model.ns, site, 0.5 * detail::pauli(axis)));
}

// H_0 = J sum_i (S_ix S_{i+1}x + S_iy S_{i+1}y + delta S_iz S_{i+1}z)
inline HermitianOperator build_h0(const SpinChainModel& model) {
  Matrix h = Matrix::Zero(model.dim, model.dim);
  for (int i = 1; i < model.ns; ++i) {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      double w = (a == Axis::Z) ? model.delta : 1.0;
      h += model.j * w * spin_operator(model, i, a).matrix *
           spin_operator(model, i + 1, a).matrix;
    }
  }
  return HermitianOperator(std::move(h));
}

// S_{1,axis}; the control Hamiltonian at field amplitude h is h * S_{1,axis}
inline HermitianOperator build_control_operator(const SpinChainModel& model,
                                                Axis axis) {
  return spin_operator(model, 1, axis);
}

// exchange operator X⊗X + Y⊗Y + Z⊗Z on the last two sites, embedded
inline HermitianOperator last_two_site_exchange(const SpinChainModel& model) {
  Matrix k4 = Matrix::Zero(4, 4);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    k4 += kron(detail::pauli(a), detail::pauli(a));
  }
  return HermitianOperator(detail::embed(model.ns, model.ns - 1, k4));
}

inline TargetGate build_target(const SpinChainModel& model, GateKind kind) {
  switch (kind) {
    case GateKind::XLast:
      return TargetGate(kind,
                        detail::embed(model.ns, model.ns, detail::pauli(Axis::X)));
    case GateKind::CnotLast2: {
      Matrix cnot = Matrix::Zero(4, 4);
      cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
      return TargetGate(kind, detail::embed(model.ns, model.ns - 1, cnot));
    }
    case GateKind::SqrtSwapLast2: {
      // e^{i pi/8} exp(-i (pi/8) (XX + YY + ZZ)) on the last two qubits
      Matrix k4 = Matrix::Zero(4, 4);
      for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        k4 += kron(detail::pauli(a), detail::pauli(a));
      }
      const double pi = std::numbers::pi;
      Matrix g = std::exp(Complex(0, pi / 8.0)) * spectral_unitary(k4, pi / 8.0);
      return TargetGate(kind, detail::embed(model.ns, model.ns - 1, g));
    }
  }
  throw std::logic_error("bad gate kind");
}

// axis pattern of a control scheme: xy -> x,y,x,y,...  xz -> x,z,x,z,...
inline Axis scheme_axis(ControlScheme scheme, int segment_index) {
  switch (scheme) {
    case ControlScheme::XOnly: return Axis::X;
    case ControlScheme::XyAlternating:
      return (segment_index % 2 == 0) ? Axis::X : Axis::Y;
    case ControlScheme::XzAlternating:
      return (segment_index % 2 == 0) ? Axis::X : Axis::Z;
  }
  throw std::logic_error("bad scheme");
}

inline bool scheme_requires_even(ControlScheme scheme) {
  return scheme != ControlScheme::XOnly;
}

}  // namespace qctrl

#endif  // QCTRL_SPIN_MODEL_HPP
