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

// Command-line front end: pulse optimization, Lie-algebra controllability
// reports, minimal-time scans, noise and rise-time robustness sweeps.
// Every run writes a manifest next to its outputs with the fully resolved
// configuration, so results can be reproduced from the manifest alone.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 quality threshold not met.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qctrl/controllability.hpp"
#include "qctrl/experiments.hpp"
#include "qctrl/fidelity_optim.hpp"
#include "qctrl/serialization.hpp"

namespace fs = std::filesystem;
using namespace qctrl;

namespace {

fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("QCTRL_OUT_DIR")) {
    return fs::path(dir) / p;
  }
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << text;
}

class ManifestTimer {
 public:
  ManifestTimer(std::string command, json config)
      : command_(std::move(command)),
        config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {}

  void add_output(const fs::path& p) { outputs_.push_back(p.string()); }

  void write(const fs::path& manifest_path, std::uint64_t seed) const {
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
    json m{{"command", command_}, {"config", config_},
           {"rng_seed", seed},    {"version", kVersion},
           {"outputs", outputs_}, {"wall_seconds", secs}};
    write_text(manifest_path, m.dump(2) + "\n");
  }

 private:
  std::string command_;
  json config_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + s);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double d : parse_double_list(s)) out.push_back(static_cast<int>(d));
  return out;
}

struct TfRange {
  double lo, hi, step;
};

TfRange parse_tf_range(const std::string& s) {
  TfRange r;
  std::stringstream ss(s);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
      !std::getline(ss, c, ':')) {
    throw CLI::ValidationError("--tf-range expects lo:hi:step, got " + s);
  }
  r.lo = std::stod(a);
  r.hi = std::stod(b);
  r.step = std::stod(c);
  return r;
}

StoredResult load_stored_result(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read sequence file " + path);
  json j;
  is >> j;
  return stored_result_from_json(j);
}

int run(int argc, char** argv) {
  CLI::App app{"local control of XXZ Heisenberg spin chains"};
  app.require_subcommand(1);

  // ---- optimize ----
  auto* opt = app.add_subcommand("optimize",
                                 "optimize pulse amplitudes for a target gate");
  std::string gate_s, scheme_s = "xy", out_path = "result.json";
  int ns = 3, n_t = 0, restarts = 20, max_iter = 500, threads = 1;
  double delta = 1.0, jcoup = 1.0, tf = 0.0, init_bound = 20.0, gtol = 1e-8;
  std::uint64_t seed = 0;
  std::optional<double> require;
  opt->add_option("--gate", gate_s, "target gate: x | cnot | sqrtswap")->required();
  opt->add_option("--ns", ns, "chain length");
  opt->add_option("--delta", delta, "anisotropy")->required();
  opt->add_option("--j", jcoup, "coupling strength (default 1)");
  opt->add_option("--scheme", scheme_s, "control scheme: xy | xz | x");
  opt->add_option("--tf", tf, "total evolution time (units of 1/J)")->required();
  opt->add_option("--nt", n_t, "number of pulses")->required();
  opt->add_option("--restarts", restarts, "random restarts");
  opt->add_option("--init-bound", init_bound, "initial-guess amplitude half-range");
  opt->add_option("--max-iterations", max_iter, "BFGS iteration cap");
  opt->add_option("--gradient-tolerance", gtol, "BFGS gradient tolerance");
  opt->add_option("--seed", seed, "RNG seed (explicit for reproducibility)")
      ->required();
  opt->add_option("--threads", threads, "parallel restarts");
  opt->add_option("--out", out_path, "output JSON path");
  opt->add_option("--require", require,
                  "exit 2 unless the best fidelity reaches this value");

  // ---- liedim ----
  auto* lie = app.add_subcommand("liedim", "dynamical Lie algebra dimension");
  std::string controls_s = "xy", lie_out;
  bool check_x = false;
  lie->add_option("--ns", ns, "chain length");
  lie->add_option("--delta", delta, "anisotropy")->required();
  lie->add_option("--controls", controls_s, "control axes: x | xy | xz");
  lie->add_flag("--check-x-reachability", check_x,
                "also verify last-spin-flip reachability for x-only control");
  lie->add_option("--out", lie_out, "optional JSON report path");

  // ---- scan ----
  auto* scan = app.add_subcommand("scan", "minimal gate time scan over t_f");
  std::string delta_list_s, tf_range_s, out_prefix = "scan";
  double threshold = 0.999, t_max = 0.5;
  int nt_cap = 100;
  scan->add_option("--gate", gate_s, "target gate")->required();
  scan->add_option("--ns", ns, "chain length");
  scan->add_option("--scheme", scheme_s, "control scheme");
  scan->add_option("--delta-list", delta_list_s, "comma-separated anisotropies")
      ->required();
  scan->add_option("--tf-range", tf_range_s, "lo:hi:step grid")->required();
  scan->add_option("--threshold", threshold, "fidelity threshold");
  scan->add_option("--tmax", t_max, "longest allowed segment duration");
  scan->add_option("--nt-cap", nt_cap, "pulse count cap");
  scan->add_option("--restarts", restarts, "random restarts per grid point");
  scan->add_option("--seed", seed, "RNG seed")->required();
  scan->add_option("--threads", threads, "parallel restarts");
  scan->add_option("--out", out_prefix, "output CSV prefix");

  // ---- ladder ----
  auto* ladder = app.add_subcommand("ladder",
                                    "fidelity vs pulse count at fixed t_f");
  std::string nt_list_s, ladder_out = "ladder.csv";
  bool warm = false;
  ladder->add_option("--gate", gate_s, "target gate")->required();
  ladder->add_option("--ns", ns, "chain length");
  ladder->add_option("--delta", delta, "anisotropy")->required();
  ladder->add_option("--scheme", scheme_s, "control scheme");
  ladder->add_option("--tf", tf, "total evolution time")->required();
  ladder->add_option("--nt-list", nt_list_s, "comma-separated pulse counts")
      ->required();
  ladder->add_option("--restarts", restarts, "random restarts");
  ladder->add_option("--seed", seed, "RNG seed")->required();
  ladder->add_option("--threads", threads, "parallel restarts");
  ladder->add_flag("--warm-start", warm, "seed each rung with the previous optimum");
  ladder->add_option("--out", ladder_out, "output CSV path");

  // ---- robustness ----
  auto* rob = app.add_subcommand("robustness",
                                 "amplitude-noise Monte Carlo for a stored sequence");
  std::string seq_path, noise_list_s, rob_out = "robustness.csv";
  int samples = 1000;
  rob->add_option("--sequence", seq_path, "stored optimization result JSON")
      ->required();
  rob->add_option("--delta-noise-list", noise_list_s,
                  "comma-separated noise half-widths")->required();
  rob->add_option("--samples", samples, "Monte Carlo samples per half-width");
  rob->add_option("--seed", seed, "RNG seed")->required();
  rob->add_option("--threads", threads, "parallel samples");
  rob->add_option("--out", rob_out, "output CSV path");

  // ---- risetime ----
  auto* rise = app.add_subcommand("risetime",
                                  "fidelity vs pulse rise time for a stored sequence");
  std::string tau_list_s, rise_out = "risetime.csv";
  int substeps = 64;
  rise->add_option("--sequence", seq_path, "stored optimization result JSON")
      ->required();
  rise->add_option("--tau-list", tau_list_s, "comma-separated rise times")
      ->required();
  rise->add_option("--substeps", substeps, "integration substeps per segment");
  rise->add_option("--out", rise_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage problems are exit code 1; --help and --version stay 0
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (opt->parsed()) {
    GateKind gate = gate_from_string(gate_s);
    ControlScheme scheme = scheme_from_string(scheme_s);
    SpinChainModel model(ns, delta, jcoup);
    OptimizerSettings settings{restarts, init_bound, max_iter, gtol, seed, threads};
    json cfg{{"gate", gate_s},   {"ns", ns},           {"delta", delta},
             {"j", jcoup},       {"scheme", scheme_s}, {"tf", tf},
             {"nt", n_t},        {"restarts", restarts},
             {"init_bound", init_bound}, {"max_iterations", max_iter},
             {"gradient_tolerance", gtol}, {"threads", threads}};
    ManifestTimer manifest("optimize", cfg);

    OptimizationConfig oc = make_config(model, gate, scheme, n_t, tf / n_t, settings);
    OptimizationResult result = optimize(oc);

    StoredResult stored{gate,
                        ns,
                        delta,
                        jcoup,
                        result.best_fidelity,
                        seed,
                        PulseSequence(scheme, tf / n_t, result.best_amplitudes)};
    fs::path out = resolve_out(out_path);
    write_text(out, stored_result_to_json(stored).dump(2) + "\n");
    manifest.add_output(out);
    manifest.write(out.string() + ".manifest.json", seed);

    std::cout.precision(17);
    std::cout << "best fidelity: " << result.best_fidelity << "\n";
    if (require && result.best_fidelity < *require) return 2;
    return 0;
  }

  if (lie->parsed()) {
    ControlScheme scheme = scheme_from_string(controls_s);
    SpinChainModel model(ns, delta);
    ControllabilityVerdict verdict = is_fully_controllable(model, scheme);
    int full = model.dim * model.dim - 1;
    std::cout << "dimension " << verdict.report.dimension << " / " << full
              << (verdict.fully_controllable ? ": completely controllable"
                                             : ": not completely controllable")
              << "\n";
    json report = closure_report_to_json(verdict.report);
    report["ns"] = ns;
    report["delta"] = delta;
    report["controls"] = controls_s;
    report["fully_controllable"] = verdict.fully_controllable;
    if (check_x) {
      XReachabilityRecord rec = verify_x_reachability(model);
      std::cout << "exp(-i pi/2 X_Ns) = -i X_Ns: "
                << (rec.exp_identity_ok ? "ok" : "FAILED") << "\n"
                << "-i pi/2 X_Ns in x-only closure: "
                << (rec.generator_in_span ? "yes" : "no") << "\n";
      report["x_reachability"] = {{"exp_identity_ok", rec.exp_identity_ok},
                                  {"generator_in_span", rec.generator_in_span}};
    }
    if (!lie_out.empty()) {
      json cfg{{"ns", ns}, {"delta", delta}, {"controls", controls_s},
               {"check_x_reachability", check_x}};
      ManifestTimer manifest("liedim", cfg);
      fs::path out = resolve_out(lie_out);
      write_text(out, report.dump(2) + "\n");
      manifest.add_output(out);
      manifest.write(out.string() + ".manifest.json", 0);
    }
    return 0;
  }

  if (scan->parsed()) {
    GateKind gate = gate_from_string(gate_s);
    ControlScheme scheme = scheme_from_string(scheme_s);
    TfRange range = parse_tf_range(tf_range_s);
    std::vector<double> deltas = parse_double_list(delta_list_s);
    json cfg{{"gate", gate_s},        {"ns", ns},
             {"scheme", scheme_s},    {"delta_list", deltas},
             {"tf_range", tf_range_s}, {"threshold", threshold},
             {"tmax", t_max},         {"nt_cap", nt_cap},
             {"restarts", restarts},  {"threads", threads}};
    ManifestTimer manifest("scan", cfg);

    std::cout.precision(17);
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      SpinChainModel model(ns, deltas[i]);
      MinimalTimeScanConfig sc{model,     gate,      scheme, threshold,
                               range.lo,  range.hi,  range.step,
                               t_max,     nt_cap,
                               OptimizerSettings{restarts, init_bound, max_iter,
                                                 gtol, mix64(seed ^ mix64(i)),
                                                 threads}};
      MinimalTimeResult result = minimal_gate_time(sc);

      std::ostringstream name;
      name << out_prefix << "_delta" << deltas[i] << ".csv";
      fs::path out = resolve_out(name.str());
      std::ostringstream csv;
      write_scan_csv(csv, result.trace);
      write_text(out, csv.str());
      manifest.add_output(out);

      if (result.reached) {
        std::cout << "delta=" << deltas[i] << " minimal_tf=" << result.minimal_tf
                  << " fidelity=" << result.best->best_fidelity << "\n";
      } else {
        std::cout << "delta=" << deltas[i] << " not reached on grid\n";
      }
    }
    fs::path mpath = resolve_out(out_prefix + ".manifest.json");
    manifest.write(mpath, seed);
    return 0;
  }

  if (ladder->parsed()) {
    GateKind gate = gate_from_string(gate_s);
    ControlScheme scheme = scheme_from_string(scheme_s);
    std::vector<int> nts = parse_int_list(nt_list_s);
    SpinChainModel model(ns, delta);
    json cfg{{"gate", gate_s},  {"ns", ns},       {"delta", delta},
             {"scheme", scheme_s}, {"tf", tf},    {"nt_list", nts},
             {"restarts", restarts}, {"warm_start", warm}, {"threads", threads}};
    ManifestTimer manifest("ladder", cfg);

    OptimizerSettings settings{restarts, init_bound, max_iter, gtol, seed, threads};
    std::vector<LadderPoint> points =
        fidelity_ladder(model, gate, scheme, tf, nts, settings, warm);

    fs::path out = resolve_out(ladder_out);
    std::ostringstream csv;
    write_ladder_csv(csv, points);
    write_text(out, csv.str());
    manifest.add_output(out);
    manifest.write(out.string() + ".manifest.json", seed);

    std::cout.precision(17);
    for (const auto& p : points) {
      std::cout << "nt=" << p.n_t << " fidelity=" << p.fidelity << "\n";
    }
    return 0;
  }

  if (rob->parsed()) {
    StoredResult stored = load_stored_result(seq_path);
    json cfg{{"sequence", seq_path},
             {"delta_noise_list", noise_list_s},
             {"samples", samples},
             {"threads", threads}};
    ManifestTimer manifest("robustness", cfg);

    RobustnessConfig rc{stored.model(),  stored.target(), stored.sequence,
                        parse_double_list(noise_list_s), samples, seed, threads};
    std::vector<RobustnessPoint> points = noise_robustness(rc);

    fs::path out = resolve_out(rob_out);
    std::ostringstream csv;
    write_robustness_csv(csv, points);
    write_text(out, csv.str());
    manifest.add_output(out);
    manifest.write(out.string() + ".manifest.json", seed);

    std::cout.precision(17);
    for (const auto& p : points) {
      std::cout << "delta_noise=" << p.noise_half_width << " mean=" << p.mean
                << " std=" << p.stddev << "\n";
    }
    return 0;
  }

  if (rise->parsed()) {
    StoredResult stored = load_stored_result(seq_path);
    json cfg{{"sequence", seq_path},
             {"tau_list", tau_list_s},
             {"substeps", substeps}};
    ManifestTimer manifest("risetime", cfg);

    std::vector<RiseTimePoint> points =
        rise_time_sweep(stored.model(), stored.target(), stored.sequence,
                        parse_double_list(tau_list_s), substeps);

    fs::path out = resolve_out(rise_out);
    std::ostringstream csv;
    write_risetime_csv(csv, points);
    write_text(out, csv.str());
    manifest.add_output(out);
    manifest.write(out.string() + ".manifest.json", 0);

    std::cout.precision(17);
    for (const auto& p : points) {
      std::cout << "tau=" << p.tau << " fidelity=" << p.fidelity << "\n";
    }
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
