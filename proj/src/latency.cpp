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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcp/bench/latency.hpp"
#include "qcp/compiler/compile.hpp"
#include "qcp/exec/execute.hpp"

namespace qcp::bench {
namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  size_t half = values.size() / 2;
  if (values.size() % 2 == 1) return values[half];
  return 0.5 * (values[half - 1] + values[half]);
}

quil::Program family_program(const BenchConfig& config, const RPGSpec& spec,
                             bool parametric) {
  switch (config.family) {
    case ProgramFamily::RPG:
      return build_rpg_program(spec, parametric);
    case ProgramFamily::GhzLine:
      return ghz_line(config.m);
    case ProgramFamily::MaxCutQaoaComplete:
      return maxcut_qaoa_complete(config.m, parametric);
  }
  throw std::invalid_argument("unknown program family");
}

exec::MemoryMap alpha_map(const RPGSpec& spec) {
  exec::MemoryMap map;
  uint32_t gadgets = spec.gadgets_per_layer();
  for (uint32_t i = 0; i < spec.d; ++i) {
    for (uint32_t j = 0; j < gadgets; ++j) {
      map.set_real("alpha", i * gadgets + j, spec.alphas[i][j]);
    }
  }
  return map;
}

exec::MemoryMap family_map(const BenchConfig& config, const RPGSpec& spec,
                           Rng& rng) {
  if (config.family == ProgramFamily::RPG) return alpha_map(spec);
  if (config.family == ProgramFamily::MaxCutQaoaComplete) {
    exec::MemoryMap map;
    map.set_real("gamma", 0, rng.uniform(-kPi, kPi));
    map.set_real("beta", 0, rng.uniform(-kPi, kPi));
    return map;
  }
  return {};
}

}  // namespace

const std::vector<uint64_t>& default_shot_sweep() {
  static const std::vector<uint64_t> sweep = {
      1,    2,    5,     10,    20,    50,     100,   200,
      500,  1000, 2000,  5000,  10000, 20000,  50000, 100000};
  return sweep;
}

BenchConfig computationally_relevant_config(const DeviceModel& device) {
  BenchConfig config;
  config.m = device.log2_quantum_volume;
  config.family = ProgramFamily::RPG;
  config.shots_list = default_shot_sweep();
  return config;
}

std::vector<LatencySample> measure_latency(const DeviceModel& device,
                                           const BenchConfig& config) {
  if (config.shots_list.empty()) {
    throw std::invalid_argument("shots_list must not be empty");
  }
  if (config.repetitions < 1) {
    throw std::invalid_argument("need at least one repetition");
  }

  const exec::ResetMode mode = config.active_reset ? exec::ResetMode::Active
                                                   : exec::ResetMode::Passive;
  Rng root(config.seed);

  struct SetModel {
    double per_shot_s = 0.0;
    double step_overhead_s = 0.0;
  };
  std::vector<SetModel> models;
  // Wall-clock mode keeps the per-set compiled artifacts around.
  std::vector<compiler::ParametricBinary> set_binaries;
  std::vector<RPGSpec> set_specs;

  for (uint32_t s = 0; s < config.permutation_sets; ++s) {
    Rng set_rng = root.split(0x5e7 + s);
    RPGSpec spec = make_rpg_spec(config.m, set_rng.next_u64());
    quil::Program program = family_program(config, spec, config.parametric);
    program.reset_requested = config.active_reset;
    compiler::ParametricBinary binary =
        compiler::compile(program, device, {config.reset_rounds});
    exec::PatchedBinary patched =
        exec::patch(binary, config.parametric
                                ? family_map(config, spec, set_rng)
                                : exec::MemoryMap{});
    auto probe = exec::execute(patched, device, {1, set_rng.next_u64(), mode});
    models.push_back(
        {probe.shots[0].simulated_duration, probe.step_overhead_s});
    set_binaries.push_back(std::move(binary));
    set_specs.push_back(std::move(spec));
  }

  std::vector<LatencySample> samples;
  for (uint64_t n : config.shots_list) {
    LatencySample sample;
    sample.n = n;
    sample.repetitions = config.repetitions;

    for (uint32_t s = 0; s < config.permutation_sets; ++s) {
      Rng run_rng = root.split((uint64_t{s} << 32) ^ n);
      RPGSpec spec = set_specs[s];
      std::vector<double> run_totals;
      run_totals.reserve(config.repetitions);
      for (uint32_t run = 0; run < config.repetitions; ++run) {
        randomize_alphas(spec, run_rng);
        double compile_charge = 0.0;
        if (!config.parametric) {
          // Every iteration step recompiles the updated literal program.
          quil::Program literal = family_program(config, spec, false);
          literal.reset_requested = config.active_reset;
          compiler::compile(literal, device, {config.reset_rounds});
          compile_charge = device.step_overheads.compile;
        } else if (run == 0) {
          // The single compile of the permutation set is attributed to the
          // first run; medians over the repetitions exclude it.
          compile_charge = device.step_overheads.compile;
        }

        double total;
        if (config.mode == ClockMode::Simulated) {
          total = compile_charge + models[s].step_overhead_s +
                  static_cast<double>(n) * models[s].per_shot_s;
        } else {
          exec::PatchedBinary patched = exec::patch(
              set_binaries[s], config.parametric
                                   ? family_map(config, spec, run_rng)
                                   : exec::MemoryMap{});
          auto report =
              exec::execute(patched, device, {n, run_rng.next_u64(), mode});
          total = compile_charge + report.wall_clock_s;
        }
        run_totals.push_back(total);
      }
      sample.per_set_medians.push_back(median(run_totals));
    }

    sample.total_s = median(sample.per_set_medians);
    sample.per_shot_s = median([&] {
      std::vector<double> v;
      for (const auto& m : models) v.push_back(m.per_shot_s);
      return v;
    }());
    sample.step_overhead_s = models.empty() ? 0.0 : models[0].step_overhead_s;
    sample.compile_s = config.parametric ? 0.0 : device.step_overheads.compile;
    samples.push_back(std::move(sample));
  }
  return samples;
}

LatencyFit fit_latency(const std::vector<LatencySample>& samples) {
  std::vector<uint64_t> distinct;
  for (const auto& s : samples) distinct.push_back(s.n);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) {
    throw std::invalid_argument(
        "latency fit requires at least two distinct shot counts");
  }

  double mean_n = 0.0, mean_t = 0.0;
  for (const auto& s : samples) {
    mean_n += static_cast<double>(s.n);
    mean_t += s.total_s;
  }
  mean_n /= samples.size();
  mean_t /= samples.size();

  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    double dn = static_cast<double>(s.n) - mean_n;
    sxx += dn * dn;
    sxy += dn * (s.total_s - mean_t);
  }
  LatencyFit fit;
  fit.t_q_s = sxy / sxx;
  fit.t_v_s = mean_t - fit.t_q_s * mean_n;
  if (fit.t_q_s < 0.0) {
    fit.t_q_s = 0.0;
    fit.clamped = true;
  }
  if (fit.t_v_s < 0.0) {
    fit.t_v_s = 0.0;
    fit.clamped = true;
  }
  if (fit.t_q_s > 0.0) fit.n_c = fit.t_v_s / fit.t_q_s;

  double sum_sq = 0.0;
  for (const auto& s : samples) {
    double r = s.total_s - (fit.t_v_s + fit.t_q_s * static_cast<double>(s.n));
    fit.residual_max = std::max(fit.residual_max, std::abs(r));
    sum_sq += r * r;
  }
  fit.residual_rms = std::sqrt(sum_sq / samples.size());
  fit.samples_used = samples.size();
  return fit;
}

std::string samples_to_csv(const std::vector<LatencySample>& samples,
                           const LatencyFit& fit) {
  std::ostringstream out;
  out << "n,median_total_s,T_V_s,T_Q_s,n_c\n";
  for (const auto& s : samples) {
    out << s.n << ',' << format_double(s.total_s) << ','
        << format_double(fit.t_v_s) << ',' << format_double(fit.t_q_s) << ',';
    if (fit.n_c) {
      out << format_double(*fit.n_c);
    } else {
      out << "undefined";
    }
    out << '\n';
  }
  return out.str();
}

std::string fit_to_json(const BenchConfig& config,
                        const std::vector<LatencySample>& samples,
                        const LatencyFit& fit) {
  nlohmann::json j;
  j["m"] = config.m;
  switch (config.family) {
    case ProgramFamily::RPG:
      j["family"] = "RPG";
      break;
    case ProgramFamily::GhzLine:
      j["family"] = "GHZ_LINE";
      break;
    case ProgramFamily::MaxCutQaoaComplete:
      j["family"] = "MAXCUTQAOA_COMPLETE";
      break;
  }
  j["mode"] =
      config.mode == ClockMode::Simulated ? "simulated_clock" : "wall_clock";
  j["parametric"] = config.parametric;
  j["active_reset"] = config.active_reset;
  j["repetitions"] = config.repetitions;
  j["permutation_sets"] = config.permutation_sets;
  j["seed"] = config.seed;
  j["T_V_s"] = fit.t_v_s;
  j["T_Q_s"] = fit.t_q_s;
  if (fit.n_c) {
    j["n_c"] = *fit.n_c;
  } else {
    j["n_c"] = nullptr;
  }
  j["residual_max"] = fit.residual_max;
  j["residual_rms"] = fit.residual_rms;
  j["clamped"] = fit.clamped;
  auto arr = nlohmann::json::array();
  for (const auto& s : samples) {
    arr.push_back({{"n", s.n},
                   {"median_total_s", s.total_s},
                   {"per_shot_s", s.per_shot_s},
                   {"step_overhead_s", s.step_overhead_s},
                   {"compile_s", s.compile_s}});
  }
  j["samples"] = arr;
  return j.dump(2);
}

}  // namespace qcp::bench
