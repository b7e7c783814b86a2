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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "qcp/bench/latency.hpp"
#include "qcp/compiler/compile.hpp"
#include "qcp/exec/execute.hpp"

using namespace qcp;
using namespace qcp::bench;

namespace {

std::map<quil::GateName, int> gate_census(const quil::Program& p) {
  std::map<quil::GateName, int> census;
  for (const auto& instruction : p.body) {
    if (const auto* gate = std::get_if<quil::Gate>(&instruction)) {
      ++census[gate->name];
    }
  }
  return census;
}

std::vector<LatencySample> synthetic_samples(double t_v, double t_q) {
  std::vector<LatencySample> samples;
  for (uint64_t n : default_shot_sweep()) {
    LatencySample s;
    s.n = n;
    s.total_s = t_v + static_cast<double>(n) * t_q;
    samples.push_back(s);
  }
  return samples;
}

}  // namespace

TEST_CASE("RPG(2) gate census") {
  auto generated = generate_rpg(2, 1234, false);
  auto census = gate_census(generated.program);
  CHECK(census[quil::GateName::CNOT] == 4);
  CHECK(census[quil::GateName::RZ] == 2);
  CHECK(census[quil::GateName::H] == 4);
  int measures = 0;
  for (const auto& instruction : generated.program.body) {
    if (std::holds_alternative<quil::Measure>(instruction)) ++measures;
  }
  CHECK(measures == 2);
}

TEST_CASE("RPG(3) leaves one qubit gadget-free per layer") {
  auto generated = generate_rpg(3, 99, false);
  const RPGSpec& spec = generated.spec;
  CHECK(spec.d == 3);
  CHECK(spec.gadgets_per_layer() == 1);
  auto census = gate_census(generated.program);
  CHECK(census[quil::GateName::H] == 9);     // all qubits, every layer
  CHECK(census[quil::GateName::CNOT] == 6);  // one gadget per layer
  CHECK(census[quil::GateName::RZ] == 3);
  // The unpaired (bottom) qubit of each permuted layer is gadget-free.
  for (uint32_t layer = 0; layer < spec.d; ++layer) {
    uint32_t idle = spec.permutations[layer][2];
    uint32_t a = spec.permutations[layer][0];
    uint32_t b = spec.permutations[layer][1];
    CHECK(idle != a);
    CHECK(idle != b);
  }
}

TEST_CASE("RPG generation is deterministic in the seed") {
  auto a = generate_rpg(3, 777, true);
  auto b = generate_rpg(3, 777, true);
  CHECK(a.program == b.program);
  CHECK(a.spec.permutations == b.spec.permutations);
  CHECK(a.spec.alphas == b.spec.alphas);
  auto c = generate_rpg(3, 778, true);
  CHECK(a.program != c.program);
}

TEST_CASE("RPG alphas lie in (-pi, pi] and permutations are bijections") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto spec = make_rpg_spec(2 + rng.below(4), rng.next_u64());
    for (const auto& layer : spec.alphas) {
      for (double a : layer) {
        CHECK(a > -kPi);
        CHECK(a <= kPi);
      }
    }
    for (const auto& permutation : spec.permutations) {
      std::vector<bool> seen(spec.m, false);
      for (uint32_t v : permutation) {
        REQUIRE(v < spec.m);
        CHECK_FALSE(seen[v]);
        seen[v] = true;
      }
    }
  }
}

TEST_CASE("exact synthetic data recovers the generating model") {
  auto samples = synthetic_samples(36e-3, 21e-6);
  LatencyFit fit = fit_latency(samples);
  CHECK(fit.t_v_s == doctest::Approx(36e-3).epsilon(1e-12));
  CHECK(fit.t_q_s == doctest::Approx(21e-6).epsilon(1e-12));
  REQUIRE(fit.n_c.has_value());
  CHECK(*fit.n_c == doctest::Approx(36e-3 / 21e-6).epsilon(1e-9));
  CHECK(*fit.n_c >= 1700.0);
  CHECK(*fit.n_c < 1720.0);
  CHECK(fit.residual_max < 1e-12);
}

TEST_CASE("constant samples flag an undefined critical shot number") {
  auto samples = synthetic_samples(0.5, 0.0);
  LatencyFit fit = fit_latency(samples);
  CHECK(fit.t_v_s == doctest::Approx(0.5));
  CHECK(fit.t_q_s == 0.0);
  CHECK_FALSE(fit.n_c.has_value());
}

TEST_CASE("fit requires two distinct shot counts") {
  std::vector<LatencySample> samples(3);
  for (auto& s : samples) {
    s.n = 10;
    s.total_s = 1.0;
  }
  CHECK_THROWS_AS(fit_latency(samples), std::invalid_argument);
}

TEST_CASE("noisy synthetic data recovers parameters within 5%") {
  // sigma = 1% multiplicative noise; average the recovered parameters
  // over 100 trials and compare against the generating model.
  const double t_v = 36e-3, t_q = 21e-6;
  Rng rng(20260810);
  double sum_tv = 0.0, sum_tq = 0.0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    auto samples = synthetic_samples(t_v, t_q);
    for (auto& s : samples) {
      double u1 = rng.uniform();
      double u2 = rng.uniform();
      double gaussian =
          std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2 * kPi * u2);
      s.total_s *= 1.0 + 0.01 * gaussian;
    }
    LatencyFit fit = fit_latency(samples);
    sum_tv += fit.t_v_s;
    sum_tq += fit.t_q_s;
  }
  CHECK(std::abs(sum_tv / trials - t_v) / t_v < 0.05);
  CHECK(std::abs(sum_tq / trials - t_q) / t_q < 0.05);
}

namespace {

DeviceModel bench_device() {
  DeviceModel d = aspen4_device();
  return d;
}

BenchConfig small_config(bool parametric, bool active) {
  BenchConfig config;
  config.m = 3;
  config.shots_list = {1, 2, 5, 10, 50};
  config.repetitions = 5;
  config.permutation_sets = 3;
  config.parametric = parametric;
  config.active_reset = active;
  config.seed = 42;
  return config;
}

}  // namespace

TEST_CASE("simulated totals grow by exactly one per-shot duration") {
  auto device = bench_device();
  auto samples = measure_latency(device, small_config(true, false));
  REQUIRE(samples.size() >= 2);
  CHECK(samples[1].n == 2);
  double delta = samples[1].total_s - samples[0].total_s;
  CHECK(delta == doctest::Approx(samples[0].per_shot_s).epsilon(1e-12));
}

TEST_CASE("simulated-clock fits are exact") {
  auto device = bench_device();
  for (bool parametric : {false, true}) {
    for (bool active : {false, true}) {
      auto samples = measure_latency(device, small_config(parametric, active));
      LatencyFit fit = fit_latency(samples);
      CAPTURE(parametric);
      CAPTURE(active);
      CHECK(fit.residual_max <= 1e-9 * fit.t_v_s);
    }
  }
}

TEST_CASE("parametric compilation moves T_V but not T_Q") {
  auto device = bench_device();
  auto with = fit_latency(measure_latency(device, small_config(true, false)));
  auto without =
      fit_latency(measure_latency(device, small_config(false, false)));
  CHECK(std::abs(with.t_q_s - without.t_q_s) < 1e-12);
  CHECK(without.t_v_s - with.t_v_s ==
        doctest::Approx(device.step_overheads.compile).epsilon(1e-9));
}

TEST_CASE("active reset shortens T_Q by the reset-time difference") {
  auto device = bench_device();
  auto passive = fit_latency(measure_latency(device, small_config(true, false)));
  auto active = fit_latency(measure_latency(device, small_config(true, true)));
  double expected =
      device.passive_reset_duration({0, 1, 2}) - device.active_reset_duration(3);
  CHECK(passive.t_q_s - active.t_q_s ==
        doctest::Approx(expected).epsilon(1e-9));
  CHECK(passive.t_v_s == doctest::Approx(active.t_v_s).epsilon(1e-9));
}

TEST_CASE("simulated totals agree with full multi-shot execution") {
  // The simulated clock derives T(n) from a one-shot probe; check it
  // against genuinely executing n shots.
  auto device = bench_device();
  auto config = small_config(true, true);
  config.shots_list = {1, 3, 7};
  config.permutation_sets = 1;
  config.repetitions = 3;
  auto samples = measure_latency(device, config);

  Rng set_rng = Rng(config.seed).split(0x5e7);
  auto spec = make_rpg_spec(config.m, set_rng.next_u64());
  auto program = build_rpg_program(spec, true);
  program.reset_requested = true;
  auto binary = compiler::compile(program, device, {3});
  exec::MemoryMap map;
  for (uint32_t j = 0; j < spec.d * spec.gadgets_per_layer(); ++j) {
    map.set_real("alpha", j, 0.25 * j);
  }
  auto patched = exec::patch(binary, map);
  for (const auto& sample : samples) {
    auto report = exec::execute(patched, device,
                                {sample.n, 9, exec::ResetMode::Active});
    CHECK(sample.total_s ==
          doctest::Approx(report.simulated_total_s).epsilon(1e-12));
  }
}

TEST_CASE("computationally relevant config follows the device") {
  auto device = bench_device();
  auto config = computationally_relevant_config(device);
  CHECK(config.m == device.log2_quantum_volume);
  CHECK(config.family == ProgramFamily::RPG);
  CHECK(config.shots_list == default_shot_sweep());
  CHECK(config.repetitions == 100);
  CHECK(config.permutation_sets == 5);
}

TEST_CASE("additional program families build and compile") {
  auto device = bench_device();
  auto ghz = ghz_line(4);
  CHECK_NOTHROW(compiler::compile(ghz, device));
  auto qaoa = maxcut_qaoa_complete(3, true);
  CHECK_NOTHROW(compiler::compile(qaoa, device));
  // Non-parametric variant bakes Fig.-2-style literals.
  auto literal = maxcut_qaoa_complete(2, false);
  bool found_literal_rz = false;
  for (const auto& instruction : literal.body) {
    if (const auto* gate = std::get_if<quil::Gate>(&instruction)) {
      if (gate->name == quil::GateName::RZ && gate->args[0].is_literal()) {
        found_literal_rz = true;
        CHECK(gate->args[0].literal() == kPi / 2);
      }
    }
  }
  CHECK(found_literal_rz);
}

TEST_CASE("csv and json artifacts") {
  auto samples = synthetic_samples(36e-3, 21e-6);
  auto fit = fit_latency(samples);
  BenchConfig config;
  config.m = 3;
  config.shots_list = default_shot_sweep();
  std::string csv = samples_to_csv(samples, fit);
  CHECK(csv.rfind("n,median_total_s,T_V_s,T_Q_s,n_c\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        1 + static_cast<long>(samples.size()));
  std::string json = fit_to_json(config, samples, fit);
  CHECK(json.find("\"T_V_s\"") != std::string::npos);
  CHECK(json.find("\"n_c\"") != std::string::npos);
}
