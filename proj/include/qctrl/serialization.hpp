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

#ifndef QCTRL_SERIALIZATION_HPP
#define QCTRL_SERIALIZATION_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qctrl/common.hpp"
#include "qctrl/controllability.hpp"
#include "qctrl/experiments.hpp"
#include "qctrl/fidelity_optim.hpp"
#include "qctrl/propagator.hpp"
#include "qctrl/spin_model.hpp"

namespace qctrl {

using nlohmann::json;

inline Axis axis_from_string(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("unknown axis: " + s);
}

inline GateKind gate_from_string(const std::string& s) {
  if (s == "x") return GateKind::XLast;
  if (s == "cnot") return GateKind::CnotLast2;
  if (s == "sqrtswap") return GateKind::SqrtSwapLast2;
  throw std::invalid_argument("unknown gate: " + s);
}

inline ControlScheme scheme_from_string(const std::string& s) {
  if (s == "xy") return ControlScheme::XyAlternating;
  if (s == "xz") return ControlScheme::XzAlternating;
  if (s == "x") return ControlScheme::XOnly;
  throw std::invalid_argument("unknown scheme: " + s);
}

// {"dim": d, "re": [[...]], "im": [[...]]}, row-major
inline json matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array(), im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix matrix_from_json(const json& j) {
  int d = j.at("dim").get<int>();
  Matrix m(d, d);
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
    }
  }
  return m;
}

// {"scheme": ..., "T": ..., "axes": [...], "amplitudes": [...]}
inline json sequence_to_json(const PulseSequence& seq) {
  json axes = json::array();
  for (Axis a : seq.axes) axes.push_back(to_string(a));
  return json{{"scheme", to_string(seq.scheme)},
              {"T", seq.segment_duration},
              {"axes", std::move(axes)},
              {"amplitudes", seq.amplitudes}};
}

inline PulseSequence sequence_from_json(const json& j) {
  std::vector<Axis> axes;
  for (const auto& a : j.at("axes")) {
    axes.push_back(axis_from_string(a.get<std::string>()));
  }
  return PulseSequence(scheme_from_string(j.at("scheme").get<std::string>()),
                       j.at("T").get<double>(), std::move(axes),
                       j.at("amplitudes").get<std::vector<double>>());
}

// Persisted optimization outcome: the pulse sequence plus everything needed
// to rebuild the model and target it was optimized for. This file is the
// hand-off between `optimize` and the robustness / rise-time sweeps.
struct StoredResult {
  GateKind gate;
  int ns;
  double delta;
  double j;
  double fidelity;
  std::uint64_t seed;
  PulseSequence sequence;

  SpinChainModel model() const { return SpinChainModel(ns, delta, j); }
  TargetGate target() const { return build_target(model(), gate); }
};

inline json stored_result_to_json(const StoredResult& r) {
  return json{{"gate", to_string(r.gate)}, {"ns", r.ns},
              {"delta", r.delta},          {"j", r.j},
              {"fidelity", r.fidelity},    {"seed", r.seed},
              {"sequence", sequence_to_json(r.sequence)}};
}

inline StoredResult stored_result_from_json(const json& j) {
  return StoredResult{gate_from_string(j.at("gate").get<std::string>()),
                      j.at("ns").get<int>(),
                      j.at("delta").get<double>(),
                      j.at("j").get<double>(),
                      j.at("fidelity").get<double>(),
                      j.at("seed").get<std::uint64_t>(),
                      sequence_from_json(j.at("sequence"))};
}

inline json closure_report_to_json(const LieClosureReport& report,
                                   bool include_basis = false) {
  json out{{"generator_count", report.generator_count},
           {"dimension", report.dimension},
           {"truncated", report.truncated}};
  if (include_basis) {
    json basis = json::array();
    for (const Matrix& b : report.basis) basis.push_back(matrix_to_json(b));
    out["basis"] = std::move(basis);
  }
  return out;
}

// ---- CSV emitters (hand-off format for external plotting) ----
// 17 significant digits so values survive a text round trip unchanged

inline void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& trace) {
  os.precision(17);
  os << "delta,t_f,n_t,fidelity\n";
  for (const auto& p : trace) {
    os << p.delta << ',' << p.t_f << ',' << p.n_t << ',' << p.fidelity << '\n';
  }
}

inline void write_ladder_csv(std::ostream& os,
                             const std::vector<LadderPoint>& ladder) {
  os.precision(17);
  os << "n_t,fidelity\n";
  for (const auto& p : ladder) os << p.n_t << ',' << p.fidelity << '\n';
}

inline void write_robustness_csv(std::ostream& os,
                                 const std::vector<RobustnessPoint>& points) {
  os.precision(17);
  os << "delta_noise,mean,std,stderr,n\n";
  for (const auto& p : points) {
    os << p.noise_half_width << ',' << p.mean << ',' << p.stddev << ','
       << p.stderr_mean << ',' << p.samples << '\n';
  }
}

inline void write_risetime_csv(std::ostream& os,
                               const std::vector<RiseTimePoint>& points) {
  os.precision(17);
  os << "tau,fidelity\n";
  for (const auto& p : points) os << p.tau << ',' << p.fidelity << '\n';
}

}  // namespace qctrl

#endif  // QCTRL_SERIALIZATION_HPP
