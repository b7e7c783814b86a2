// Copyright 2026 The qcp developers
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcp/bench/rpg.hpp"
#include "qcp/device.hpp"

namespace qcp::bench {

enum class ClockMode { Simulated, WallClock };
enum class ProgramFamily { RPG, GhzLine, MaxCutQaoaComplete };

struct BenchConfig {
  uint32_t m = 2;
  ProgramFamily family = ProgramFamily::RPG;
  std::vector<uint64_t> shots_list;
  uint32_t repetitions = 100;     // runs per (set, n); medians reported
  uint32_t permutation_sets = 5;  // aggregated by median
  ClockMode mode = ClockMode::Simulated;
  bool parametric = true;
  bool active_reset = false;
  uint32_t reset_rounds = 3;
  uint64_t seed = 0;
};

/// The Fig.-6-style default shot sweep.
const std::vector<uint64_t>& default_shot_sweep();

/// Benchmark configuration probing the computationally relevant latencies:
/// m = log2(quantum volume) and the RPG family.
BenchConfig computationally_relevant_config(const DeviceModel& device);

struct LatencySample {
  uint64_t n = 0;
  double total_s = 0.0;  // median over runs, then over permutation sets
  uint32_t repetitions = 0;
  std::vector<double> per_set_medians;
  double per_shot_s = 0.0;       // model per-shot duration (median set)
  double step_overhead_s = 0.0;  // charged every run
  double compile_s = 0.0;        // charged per the parametric attribution
};

struct LatencyFit {
  double t_v_s = 0.0;  // intercept
  double t_q_s = 0.0;  // slope
  std::optional<double> n_c;  // t_v / t_q when the slope is positive
  double residual_max = 0.0;
  double residual_rms = 0.0;
  size_t samples_used = 0;
  bool clamped = false;  // a negative slope/intercept was clamped to zero
};

/// Sweeps shot counts for the configured circuit family. Permutation sets
/// are fixed across the `repetitions` runs of a sample; alphas are
/// redrawn per run. Parametric mode compiles once per permutation set and
/// charges the compile overhead only to the first run (the median then
/// excludes it); non-parametric mode recompiles and charges every run.
///
/// In simulated-clock mode the per-shot schedule is measured by executing
/// one probe shot per set; totals follow exactly because the compiled
/// schedule is shot-invariant (reset branches are latency-padded).
/// Wall-clock mode executes every run in full.
std::vector<LatencySample> measure_latency(const DeviceModel& device,
                                           const BenchConfig& config);

/// Ordinary least squares of total vs n: T(n) = T_V + n * T_Q.
/// Requires two distinct n values. Negative estimates clamp to zero with
/// the `clamped` diagnostic set.
LatencyFit fit_latency(const std::vector<LatencySample>& samples);

std::string samples_to_csv(const std::vector<LatencySample>& samples,
                           const LatencyFit& fit);
std::string fit_to_json(const BenchConfig& config,
                        const std::vector<LatencySample>& samples,
                        const LatencyFit& fit);

}  // namespace qcp::bench
