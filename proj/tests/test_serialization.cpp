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

#include <sstream>

#include "qctrl/serialization.hpp"
#include "test_oracles.hpp"

using namespace qctrl;

TEST_CASE("matrix json round trip is lossless") {
  SplitMix64 rng(2);
  Matrix m = oracles::random_hermitian(8, rng);
  json j = matrix_to_json(m);
  CHECK(j["dim"] == 8);
  Matrix back = matrix_from_json(json::parse(j.dump()));
  CHECK(max_abs(m - back) == 0.0);  // shortest round-trip doubles are exact
}

TEST_CASE("pulse sequence json round trip") {
  PulseSequence seq(ControlScheme::XyAlternating, 0.42,
                    {1.5, -2.25, 0.125, 19.0});
  json j = sequence_to_json(seq);
  CHECK(j["scheme"] == "xy");
  CHECK(j["axes"][1] == "y");
  PulseSequence back = sequence_from_json(json::parse(j.dump()));
  CHECK(back.segment_duration == seq.segment_duration);
  CHECK(back.amplitudes == seq.amplitudes);
  CHECK(back.axes == seq.axes);
}

TEST_CASE("stored result round trip rebuilds model and target") {
  StoredResult r{GateKind::CnotLast2,
                 3,
                 1.3,
                 1.0,
                 0.987654321,
                 42,
                 PulseSequence(ControlScheme::XyAlternating, 0.6, {1, 2, 3, 4})};
  StoredResult back = stored_result_from_json(json::parse(
      stored_result_to_json(r).dump()));
  CHECK(back.gate == r.gate);
  CHECK(back.fidelity == r.fidelity);
  CHECK(back.seed == r.seed);
  CHECK(back.model().dim == 8);
  CHECK(max_abs(back.target().matrix -
                build_target(SpinChainModel(3, 1.3), GateKind::CnotLast2).matrix) ==
        0.0);
}

TEST_CASE("serialization is byte-stable") {
  StoredResult r{GateKind::XLast,
                 3,
                 5.0,
                 1.0,
                 0.9991234,
                 7,
                 PulseSequence(ControlScheme::XOnly, 0.5, {0.1, 0.2, 0.3})};
  CHECK(stored_result_to_json(r).dump() == stored_result_to_json(r).dump());
}

TEST_CASE("bad inputs throw") {
  CHECK_THROWS_AS(gate_from_string("hadamard"), std::invalid_argument);
  CHECK_THROWS_AS(scheme_from_string("yz"), std::invalid_argument);
  CHECK_THROWS_AS(axis_from_string("w"), std::invalid_argument);
  json j{{"scheme", "xy"}, {"T", 0.5}, {"axes", {"x"}}, {"amplitudes", {1.0, 2.0}}};
  CHECK_THROWS(sequence_from_json(j));
}

TEST_CASE("closure report json") {
  SpinChainModel m(2, 1.5);
  LieClosureReport report =
      lie_closure(control_lie_generators(m, ControlScheme::XzAlternating));
  json j = closure_report_to_json(report);
  CHECK(j["dimension"] == 15);
  CHECK(j["generator_count"] == 3);
  CHECK(!j.contains("basis"));
  json with_basis = closure_report_to_json(report, true);
  CHECK(with_basis["basis"].size() == 15);
  Matrix b0 = matrix_from_json(with_basis["basis"][0]);
  CHECK(max_abs(b0 - report.basis[0]) == 0.0);
}

TEST_CASE("csv emitters") {
  std::ostringstream os;
  write_robustness_csv(os, {{0.5, 0.75, 0.01, 0.001, 100}});
  CHECK(os.str() ==
        "delta_noise,mean,std,stderr,n\n0.5,0.75,0.01,0.001,100\n");

  std::ostringstream os2;
  write_scan_csv(os2, {{1.2, 3.0, 6, 0.5}});
  CHECK(os2.str() == "delta,t_f,n_t,fidelity\n1.2,3,6,0.5\n");
}
