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

#ifndef QCTRL_COMMON_HPP
#define QCTRL_COMMON_HPP

#include <complex>

#include <Eigen/Dense>

namespace qctrl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr const char* kVersion = "0.1.0";

// tr(A† B) as a cheap entrywise sum, no temporary product matrix
inline Complex adjoint_trace(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const Matrix& m, double tol) {
  return max_abs(m - m.adjoint()) <= tol;
}

inline bool is_unitary(const Matrix& m, double tol) {
  Matrix id = Matrix::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= tol;
}

// exp(-i h t) for Hermitian h via its spectral form V diag(e^{-i lambda t}) V†.
// Unitary to eigensolver accuracy for any t. Does not validate hermiticity;
// callers on untrusted input go through propagator::expm_hermitian.
inline Matrix spectral_unitary(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& lambda = es.eigenvalues();
  Matrix phases = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases(k, k) = std::exp(Complex(0.0, -lambda(k) * t));
  }
  return es.eigenvectors() * phases * es.eigenvectors().adjoint();
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qctrl

#endif  // QCTRL_COMMON_HPP
