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

#ifndef QCTRL_EXPERIMENTS_HPP
#define QCTRL_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qctrl/common.hpp"
#include "qctrl/fidelity_optim.hpp"
#include "qctrl/parallel.hpp"
#include "qctrl/propagator.hpp"
#include "qctrl/rng.hpp"
#include "qctrl/spin_model.hpp"

namespace qctrl {

// Optimizer knobs shared by the sweep drivers; model/target/timing come
// from the sweep itself.
struct OptimizerSettings {
  int restarts = 20;
  double init_amplitude_bound = 20.0;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  std::uint64_t rng_seed = 0;
  int threads = 1;
};

inline OptimizationConfig make_config(const SpinChainModel& model,
                                      GateKind gate, ControlScheme scheme,
                                      int n_t, double segment_duration,
                                      const OptimizerSettings& s) {
  OptimizationConfig c{model, build_target(model, gate), scheme,
                       n_t,   segment_duration,          s.restarts,
                       s.init_amplitude_bound, s.max_iterations,
                       s.gradient_tolerance,   s.rng_seed,
                       s.threads};
  return c;
}

// smallest pulse count with segments no longer than t_max, respecting the
// scheme's parity and the cap
inline int pulse_count_for(double t_f, double t_max, ControlScheme scheme,
                           int cap = 100) {
  int n = static_cast<int>(std::ceil(t_f / t_max - 1e-12));
  if (n < 1) n = 1;
  if (scheme_requires_even(scheme) && n % 2 != 0) ++n;
  if (n > cap) n = cap;
  if (scheme_requires_even(scheme) && n % 2 != 0) --n;
  return n;
}

struct MinimalTimeScanConfig {
  SpinChainModel model;
  GateKind gate;
  ControlScheme scheme;
  double fidelity_threshold = 0.999;
  double tf_start = 0.5;
  double tf_stop = 30.0;
  double tf_step = 0.1;
  double t_max = 0.5;  // longest allowed segment
  int nt_cap = 100;
  OptimizerSettings optimizer;

  void validate() const {
    if (!(tf_start < tf_stop)) {
      throw std::invalid_argument("MinimalTimeScanConfig: start < stop");
    }
    if (!(tf_step > 0.0)) {
      throw std::invalid_argument("MinimalTimeScanConfig: step > 0");
    }
    if (!(fidelity_threshold > 0.0 && fidelity_threshold < 1.0)) {
      throw std::invalid_argument("MinimalTimeScanConfig: threshold in (0,1)");
    }
  }
};

struct ScanPoint {
  double delta;
  double t_f;
  int n_t;
  double fidelity;
};

struct MinimalTimeResult {
  bool reached = false;
  double minimal_tf = 0.0;
  std::optional<OptimizationResult> best;
  std::vector<ScanPoint> trace;
};

// Ascending grid scan over t_f: first grid point whose optimized fidelity
// exceeds the threshold wins. Fidelity is not assumed monotone in t_f, so
// this is a scan, not a bisection.
inline MinimalTimeResult minimal_gate_time(const MinimalTimeScanConfig& config) {
  config.validate();
  MinimalTimeResult result;
  int steps = static_cast<int>(
      std::floor((config.tf_stop - config.tf_start) / config.tf_step + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    double t_f = config.tf_start + i * config.tf_step;
    int n_t = pulse_count_for(t_f, config.t_max, config.scheme, config.nt_cap);
    OptimizerSettings s = config.optimizer;
    s.rng_seed = mix64(config.optimizer.rng_seed ^
                       mix64(static_cast<std::uint64_t>(i) + 1));
    OptimizationConfig oc = make_config(config.model, config.gate,
                                        config.scheme, n_t, t_f / n_t, s);
    OptimizationResult r = optimize(oc);
    result.trace.push_back({config.model.delta, t_f, n_t, r.best_fidelity});
    if (r.best_fidelity > config.fidelity_threshold) {
      result.reached = true;
      result.minimal_tf = t_f;
      result.best = std::move(r);
      return result;
    }
  }
  return result;  // not reached on grid; trace tells the story
}

struct LadderPoint {
  int n_t;
  double fidelity;
  std::vector<double> amplitudes;
};

// Optimizes at fixed t_f for each pulse count in `n_t_list`. With
// `warm_start`, the previous optimum is resampled onto the finer grid and
// added as an extra initial guess.
inline std::vector<LadderPoint> fidelity_ladder(
    const SpinChainModel& model, GateKind gate, ControlScheme scheme,
    double t_f, const std::vector<int>& n_t_list,
    const OptimizerSettings& settings, bool warm_start = false) {
  std::vector<LadderPoint> ladder;
  std::vector<double> previous;
  int previous_nt = 0;
  for (std::size_t i = 0; i < n_t_list.size(); ++i) {
    int n_t = n_t_list[i];
    if (scheme_requires_even(scheme) && n_t % 2 != 0) {
      throw std::invalid_argument("fidelity_ladder: n_t violates scheme parity");
    }
    OptimizerSettings s = settings;
    s.rng_seed = mix64(settings.rng_seed ^ mix64(static_cast<std::uint64_t>(i) + 1));
    OptimizationConfig oc =
        make_config(model, gate, scheme, n_t, t_f / n_t, s);

    std::vector<std::vector<double>> warm;
    if (warm_start && !previous.empty()) {
      // piecewise-constant resample per axis at the finer grid's midpoints
      std::vector<double> guess(n_t);
      for (int k = 0; k < n_t; ++k) {
        double t_mid = (k + 0.5) * (t_f / n_t);
        int src = std::min(previous_nt - 1,
                           static_cast<int>(t_mid / (t_f / previous_nt)));
        // keep the axis pattern aligned for alternating schemes
        if (scheme_requires_even(scheme) &&
            scheme_axis(scheme, k) != scheme_axis(scheme, src)) {
          src += (src + 1 < previous_nt) ? 1 : -1;
        }
        guess[k] = previous[src];
      }
      warm.push_back(std::move(guess));
    }
    OptimizationResult r = optimize(oc, warm);
    ladder.push_back({n_t, r.best_fidelity, r.best_amplitudes});
    previous = ladder.back().amplitudes;
    previous_nt = n_t;
  }
  return ladder;
}

struct RobustnessConfig {
  SpinChainModel model;
  TargetGate target;
  PulseSequence sequence;
  std::vector<double> noise_half_widths;
  int samples = 1000;
  std::uint64_t rng_seed = 0;
  int threads = 1;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("RobustnessConfig: samples >= 1");
    for (double d : noise_half_widths) {
      if (d < 0.0) {
        throw std::invalid_argument("RobustnessConfig: noise half-width >= 0");
      }
    }
  }
};

struct RobustnessPoint {
  double noise_half_width;
  double mean;
  double stddev;
  double stderr_mean;
  int samples;
};

// Monte Carlo over amplitude noise: every segment amplitude is shifted by
// an independent uniform draw from [-delta, delta] and the fidelity is
// recomputed. Sample j of grid point i uses the stream (seed, i, j), so
// statistics do not depend on evaluation order or thread count, and
// growing `samples` extends the stream instead of reshuffling it.
inline std::vector<RobustnessPoint> noise_robustness(
    const RobustnessConfig& config) {
  config.validate();
  HermitianOperator h0 = build_h0(config.model);
  double clean = gate_fidelity(
      propagate(config.model, h0, config.sequence).matrix, config.target.matrix);

  std::vector<RobustnessPoint> out;
  for (std::size_t i = 0; i < config.noise_half_widths.size(); ++i) {
    double delta = config.noise_half_widths[i];
    if (delta == 0.0) {
      // all samples coincide; report the clean value exactly
      out.push_back({0.0, clean, 0.0, 0.0, config.samples});
      continue;
    }
    std::vector<double> fid(config.samples);
    {
      parallel_for(config.samples, config.threads, [&](int j) {
        SplitMix64 rng = derive_stream(config.rng_seed,
                                       static_cast<std::uint64_t>(i),
                                       static_cast<std::uint64_t>(j));
        PulseSequence noisy = config.sequence;
        for (double& h : noisy.amplitudes) h += rng.uniform(-delta, delta);
        fid[j] = gate_fidelity(propagate(config.model, h0, noisy).matrix,
                               config.target.matrix);
      });
    }
    double mean = 0.0;
    for (double f : fid) mean += f;
    mean /= config.samples;
    double var = 0.0;
    for (double f : fid) var += (f - mean) * (f - mean);
    double stddev =
        config.samples > 1 ? std::sqrt(var / (config.samples - 1)) : 0.0;
    out.push_back({delta, mean, stddev, stddev / std::sqrt(double(config.samples)),
                   config.samples});
  }
  return out;
}

struct RiseTimePoint {
  double tau;
  double fidelity;
};

inline std::vector<RiseTimePoint> rise_time_sweep(
    const SpinChainModel& model, const TargetGate& target,
    const PulseSequence& sequence, const std::vector<double>& tau_grid,
    int substeps = 64) {
  HermitianOperator h0 = build_h0(model);
  std::vector<RiseTimePoint> out;
  for (double tau : tau_grid) {
    UnitaryMatrix u = propagate_with_rise_time(model, h0, sequence, tau, substeps);
    out.push_back({tau, gate_fidelity(u.matrix, target.matrix)});
  }
  return out;
}

}  // namespace qctrl

#endif  // QCTRL_EXPERIMENTS_HPP
