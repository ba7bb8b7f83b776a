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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "qctrl/controllability.hpp"

using namespace qctrl;

namespace {
const Complex kMinusI(0.0, -1.0);
}

TEST_CASE("closure input validation") {
  CHECK_THROWS_AS(lie_closure({}), std::invalid_argument);

  Matrix not_skew(2, 2);
  not_skew << 1, 0, 0, -1;  // Hermitian, not skew
  CHECK_THROWS_AS(lie_closure({not_skew}), std::invalid_argument);

  Matrix traceful(2, 2);
  traceful << Complex(0, 1), 0, 0, Complex(0, 1);
  CHECK_THROWS_AS(lie_closure({traceful}), std::invalid_argument);
}

TEST_CASE("su(2) closure from two generators") {
  // -i σx/2 and -i σy/2 generate all of su(2)
  Matrix sx(2, 2), sy(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sy << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
  LieClosureReport r = lie_closure({kMinusI * sx, kMinusI * sy});
  CHECK(r.dimension == 3);
  CHECK(!r.truncated);
}

TEST_CASE("closure basis is orthonormal, skew-Hermitian, traceless") {
  SpinChainModel m(3, 1.2);
  LieClosureReport r =
      lie_closure(control_lie_generators(m, ControlScheme::XOnly));
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    CHECK(max_abs(r.basis[i] + r.basis[i].adjoint()) < 1e-10);
    CHECK(std::abs(r.basis[i].trace()) < 1e-10);
    for (std::size_t j = i; j < r.basis.size(); ++j) {
      double ip = adjoint_trace(r.basis[i], r.basis[j]).real();
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("three-spin closure dimensions match the known values") {
  SpinChainModel m12(3, 1.2);
  CHECK(lie_closure(control_lie_generators(m12, ControlScheme::XyAlternating))
            .dimension == 63);
  CHECK(lie_closure(control_lie_generators(m12, ControlScheme::XOnly))
            .dimension == 30);

  SpinChainModel m10(3, 1.0);
  CHECK(lie_closure(control_lie_generators(m10, ControlScheme::XOnly))
            .dimension == 18);
}

TEST_CASE("closure dimension invariant under ordering and positive scaling") {
  SpinChainModel m(3, 1.2);
  std::vector<Matrix> gens = control_lie_generators(m, ControlScheme::XOnly);
  int dim = lie_closure(gens).dimension;

  std::reverse(gens.begin(), gens.end());
  CHECK(lie_closure(gens).dimension == dim);

  for (std::size_t i = 0; i < gens.size(); ++i) gens[i] *= 2.5 + i;
  CHECK(lie_closure(gens).dimension == dim);
}

TEST_CASE("xy and xz schemes agree in closure dimension") {
  for (int ns : {2, 3}) {
    for (double delta : {0.5, 1.0, 1.2}) {
      SpinChainModel m(ns, delta);
      int dxy = lie_closure(control_lie_generators(m, ControlScheme::XyAlternating))
                    .dimension;
      int dxz = lie_closure(control_lie_generators(m, ControlScheme::XzAlternating))
                    .dimension;
      CHECK(dxy == dxz);
    }
  }
}

TEST_CASE("closure is idempotent") {
  SpinChainModel m(3, 1.0);
  LieClosureReport r =
      lie_closure(control_lie_generators(m, ControlScheme::XOnly));
  LieClosureReport again = lie_closure(r.basis);
  CHECK(again.dimension == r.dimension);
}

TEST_CASE("isotropic point has the smaller x-only algebra") {
  SpinChainModel iso(3, 1.0);
  SpinChainModel aniso(3, 1.2);
  int d_iso = lie_closure(control_lie_generators(iso, ControlScheme::XOnly))
                  .dimension;
  int d_aniso = lie_closure(control_lie_generators(aniso, ControlScheme::XOnly))
                    .dimension;
  CHECK(d_iso < d_aniso);
}

TEST_CASE("is_fully_controllable") {
  CHECK(is_fully_controllable(SpinChainModel(3, 0.9), ControlScheme::XyAlternating)
            .fully_controllable);
  ControllabilityVerdict v =
      is_fully_controllable(SpinChainModel(3, 1.2), ControlScheme::XOnly);
  CHECK(!v.fully_controllable);
  CHECK(v.report.dimension == 30);

  // d = 4 oracle: rerun the closure itself at ns = 2
  ControllabilityVerdict v2 =
      is_fully_controllable(SpinChainModel(2, 1.5), ControlScheme::XzAlternating);
  CHECK(v2.fully_controllable);
  CHECK(v2.report.dimension == 15);
}

TEST_CASE("in_span membership verdicts") {
  SpinChainModel m(3, 1.2);
  LieClosureReport r =
      lie_closure(control_lie_generators(m, ControlScheme::XOnly));

  const double pi = std::numbers::pi;
  Matrix x3 = build_target(m, GateKind::XLast).matrix;
  CHECK(in_span(r, Complex(0, -pi / 2) * x3));

  CHECK(in_span(r, kMinusI * last_two_site_exchange(m).matrix));

  // S1y is outside the x-only algebra
  CHECK(!in_span(r, kMinusI * build_control_operator(m, Axis::Y).matrix));

  Matrix wrong_dim(2, 2);
  wrong_dim << 0, Complex(0, 1), Complex(0, 1), 0;
  CHECK_THROWS_AS(in_span(r, wrong_dim), std::invalid_argument);
}

TEST_CASE("x reachability record") {
  for (double delta : {1.2, 5.0}) {
    XReachabilityRecord rec = verify_x_reachability(SpinChainModel(3, delta));
    CHECK(rec.exp_identity_ok);
    CHECK(rec.generator_in_span);
  }
}

TEST_CASE("exp(-i pi/2 X) = -iX for any involution") {
  // cos(pi/2) I - i sin(pi/2) X with X^2 = I
  SpinChainModel m(2, 1.0);
  Matrix x = build_target(m, GateKind::XLast).matrix;
  Matrix u = spectral_unitary(x, std::numbers::pi / 2.0);
  CHECK(max_abs(u - Complex(0, -1) * x) < 1e-10);
}
