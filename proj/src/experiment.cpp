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
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcp/expt/experiment.hpp"
#include "qcp/rng.hpp"

namespace qcp::expt {
namespace {

using quil::Gate;
using quil::GateArg;
using quil::GateName;
using quil::MemoryKind;

const char* kReservedRegions[] = {"ro", "symmetrization", "measurement_alpha",
                                  "measurement_beta", "measurement_gamma"};

Gate rot(GateName name, GateArg arg, uint32_t q) {
  Gate g;
  g.name = name;
  g.args = {arg};
  g.qubits = {q};
  return g;
}

struct EulerTriple {
  double alpha, beta, gamma;
};

EulerTriple basis_angles(char basis) {
  switch (basis) {
    case 'X':
      return {0.0, -kPi / 2, 0.0};  // Ry(-pi/2) premeasurement rotation
    case 'Y':
      return {kPi / 2, kPi / 2, -kPi / 2};  // Rx(pi/2)
    default:
      return {0.0, 0.0, 0.0};
  }
}

void append_template_for(std::vector<quil::Instruction>& out, uint32_t qubit,
                         uint32_t slot) {
  out.emplace_back(rot(GateName::RZ, GateArg::mem("measurement_alpha", slot), qubit));
  out.emplace_back(rot(GateName::RX, GateArg::lit(kPi / 2), qubit));
  out.emplace_back(rot(GateName::RZ, GateArg::mem("measurement_beta", slot), qubit));
  out.emplace_back(rot(GateName::RX, GateArg::lit(-(kPi / 2)), qubit));
  out.emplace_back(rot(GateName::RZ, GateArg::mem("measurement_gamma", slot), qubit));
}

double product_mean(const std::vector<uint8_t>& bits, uint64_t shots,
                    size_t width, const std::vector<size_t>& positions) {
  if (shots == 0) return 0.0;
  double sum = 0.0;
  for (uint64_t s = 0; s < shots; ++s) {
    int parity = 0;
    for (size_t p : positions) parity ^= bits[s * width + p];
    sum += parity ? -1.0 : 1.0;
  }
  return sum / static_cast<double>(shots);
}

double product_std_err(double mean, uint64_t shots) {
  if (shots == 0) return 0.0;
  double variance = std::max(0.0, 1.0 - mean * mean);
  return std::sqrt(variance / static_cast<double>(shots));
}

}  // namespace

std::vector<quil::Instruction> euler_measurement_template(
    const std::vector<uint32_t>& qubits) {
  std::vector<quil::Instruction> out;
  for (uint32_t j = 0; j < qubits.size(); ++j) {
    append_template_for(out, qubits[j], j);
  }
  return out;
}

std::vector<quil::Instruction> basis_change_suffix(
    const PauliObservable& observable) {
  std::vector<quil::Instruction> out;
  uint32_t slot = 0;
  for (const auto& [qubit, op] : observable.ops) {
    if (op == 'Z') continue;  // Z-basis qubits need no rotation
    append_template_for(out, qubit, slot++);
  }
  return out;
}

exec::MemoryMap basis_patch(const PauliObservable& observable,
                            const std::vector<uint32_t>& measured) {
  exec::MemoryMap map;
  for (uint32_t j = 0; j < measured.size(); ++j) {
    EulerTriple t = basis_angles(observable.basis(measured[j]));
    map.set_real("measurement_alpha", j, t.alpha);
    map.set_real("measurement_beta", j, t.beta);
    map.set_real("measurement_gamma", j, t.gamma);
  }
  return map;
}

ExperimentSession::ExperimentSession(ExperimentSpec spec, DeviceModel device)
    : spec_(std::move(spec)), device_(std::move(device)) {
  if (spec_.shots < 1) {
    throw std::invalid_argument("experiment needs at least one shot");
  }
  for (const auto& instruction : spec_.program.body) {
    if (std::holds_alternative<quil::Measure>(instruction)) {
      throw std::invalid_argument(
          "experiment main body must not measure; the session owns readout");
    }
  }
  for (const auto& decl : spec_.program.declarations) {
    for (const char* reserved : kReservedRegions) {
      if (decl.name == reserved) {
        throw std::invalid_argument("main body declares reserved region '" +
                                    decl.name + "'");
      }
    }
  }
  if (spec_.calibration == Calibration::PlusEigenstate &&
      spec_.symmetrization == Symmetrization::None &&
      spec_.estimation == Estimation::Sampled) {
    throw std::invalid_argument(
        "calibration is defined over symmetrized readout; enable "
        "symmetrization");
  }

  std::set<uint32_t> support;
  auto program_qubits = spec_.program.used_qubits();
  for (const auto& setting : spec_.settings) {
    for (uint32_t q : setting.observable.support()) {
      if (!std::binary_search(program_qubits.begin(), program_qubits.end(),
                              q)) {
        throw std::invalid_argument(
            "observable " + setting.observable.to_string() +
            " acts outside the program's qubits");
      }
      support.insert(q);
    }
  }
  measured_.assign(support.begin(), support.end());
  const uint32_t k = static_cast<uint32_t>(measured_.size());
  if (spec_.symmetrization == Symmetrization::Exhaustive &&
      k > spec_.exhaustive_limit) {
    throw std::invalid_argument(
        "exhaustive symmetrization over " + std::to_string(k) +
        " qubits exceeds the limit of " +
        std::to_string(spec_.exhaustive_limit));
  }

  // The single parametric program: main body, Euler measurement template,
  // symmetrization layer, readout.
  quil::Program program = spec_.program;
  program.reset_requested = spec_.reset_mode == exec::ResetMode::Active;
  if (k > 0) {
    program.declarations.push_back({"measurement_alpha", MemoryKind::Real, k});
    program.declarations.push_back({"measurement_beta", MemoryKind::Real, k});
    program.declarations.push_back({"measurement_gamma", MemoryKind::Real, k});
    if (spec_.symmetrization == Symmetrization::Exhaustive) {
      program.declarations.push_back({"symmetrization", MemoryKind::Real, k});
    }
    program.declarations.push_back({"ro", MemoryKind::Bit, k});
    for (const auto& instruction : euler_measurement_template(measured_)) {
      program.body.push_back(instruction);
    }
    for (uint32_t j = 0; j < k; ++j) {
      if (spec_.symmetrization == Symmetrization::Exhaustive) {
        program.body.emplace_back(
            rot(GateName::RX, GateArg::mem("symmetrization", j), measured_[j]));
      }
      program.body.emplace_back(quil::Measure{measured_[j], {"ro", j}});
    }
  }
  binary_ = compiler::compile(program, device_, {spec_.reset_rounds});
  ++compile_count_;

  if (spec_.calibration == Calibration::PlusEigenstate &&
      spec_.estimation == Estimation::Sampled && k > 0) {
    // Ground-state readout calibration program: flips + readout only.
    quil::Program calib;
    calib.reset_requested = spec_.reset_mode == exec::ResetMode::Active;
    calib.declarations.push_back({"symmetrization", MemoryKind::Real, k});
    calib.declarations.push_back({"ro", MemoryKind::Bit, k});
    for (uint32_t j = 0; j < k; ++j) {
      calib.body.emplace_back(
          rot(GateName::RX, GateArg::mem("symmetrization", j), measured_[j]));
      calib.body.emplace_back(quil::Measure{measured_[j], {"ro", j}});
    }
    calibration_binary_ = compiler::compile(calib, device_, {spec_.reset_rounds});
    ++compile_count_;
  }
}

void ExperimentSession::ensure_calibration_data(uint64_t seed) {
  if (calibration_data_ready_ || !calibration_binary_) return;
  const uint32_t k = static_cast<uint32_t>(measured_.size());
  const uint64_t patterns = uint64_t{1} << k;
  uint64_t total = spec_.calibration_shots ? spec_.calibration_shots
                                           : spec_.shots;
  uint64_t per_pattern = std::max<uint64_t>(1, total / patterns);

  Rng rng(seed);
  exec::PatchedBinary patched =
      exec::patch(*calibration_binary_, exec::MemoryMap{});
  for (uint64_t pattern = 0; pattern < patterns; ++pattern) {
    exec::MemoryMap flips;
    for (uint32_t j = 0; j < k; ++j) {
      flips.set_real("symmetrization", j, (pattern >> j) & 1 ? kPi : 0.0);
    }
    exec::repatch(patched, flips);
    auto report = exec::execute(
        patched, device_, {per_pattern, rng.next_u64(), spec_.reset_mode});
    for (const auto& shot : report.shots) {
      for (uint32_t j = 0; j < k; ++j) {
        calibration_bits_.push_back(shot.bits[j] ^
                                    static_cast<uint8_t>((pattern >> j) & 1));
      }
      ++calibration_shot_count_;
    }
  }
  calibration_data_ready_ = true;
}

std::pair<double, double> ExperimentSession::calibrate(
    const std::vector<uint32_t>& support, uint64_t seed) {
  if (!calibration_binary_) return {1.0, 0.0};
  auto it = lambda_cache_.find(support);
  if (it != lambda_cache_.end()) return it->second;
  ensure_calibration_data(seed);

  std::vector<size_t> positions;
  for (uint32_t q : support) {
    auto pos = std::lower_bound(measured_.begin(), measured_.end(), q);
    positions.push_back(static_cast<size_t>(pos - measured_.begin()));
  }
  double mean = product_mean(calibration_bits_, calibration_shot_count_,
                             measured_.size(), positions);
  double err = product_std_err(mean, calibration_shot_count_);
  auto result = std::make_pair(mean, err);
  lambda_cache_[support] = result;
  return result;
}

ExpectationEstimate ExperimentSession::finish_estimate(
    const PauliObservable& observable, const SettingData& data,
    const std::vector<uint32_t>& support, uint64_t seed) {
  ExpectationEstimate estimate;
  estimate.observable = observable;

  std::vector<size_t> positions;
  for (uint32_t q : support) {
    auto pos = std::lower_bound(measured_.begin(), measured_.end(), q);
    if (pos == measured_.end() || *pos != q) {
      throw std::invalid_argument("estimate over an unmeasured qubit");
    }
    positions.push_back(static_cast<size_t>(pos - measured_.begin()));
  }

  if (data.exact) {
    double expectation = 0.0;
    for (size_t pattern = 0; pattern < data.probs.size(); ++pattern) {
      int parity = 0;
      for (size_t p : positions) parity ^= (pattern >> p) & 1;
      expectation += parity ? -data.probs[pattern] : data.probs[pattern];
    }
    estimate.raw_mean = expectation;
    estimate.symmetrized_mean = expectation;
    estimate.corrected_mean = expectation;
    estimate.lambda = 1.0;
    estimate.shots_used = 0;
    return estimate;
  }

  const size_t width = data.measured.size();
  estimate.raw_mean =
      product_mean(data.pattern0_bits, data.pattern0_shots, width, positions);
  estimate.raw_std_err = product_std_err(estimate.raw_mean, data.pattern0_shots);
  estimate.symmetrized_mean =
      product_mean(data.pooled_bits, data.pooled_shots, width, positions);
  estimate.symmetrized_std_err =
      product_std_err(estimate.symmetrized_mean, data.pooled_shots);
  estimate.shots_used = data.pooled_shots;

  estimate.corrected_mean = estimate.symmetrized_mean;
  estimate.corrected_std_err = estimate.symmetrized_std_err;
  if (spec_.calibration == Calibration::PlusEigenstate) {
    auto [lambda, lambda_err] = calibrate(support, seed);
    estimate.lambda = lambda;
    estimate.lambda_std_err = lambda_err;
    if (std::abs(lambda) < 1e-6) {
      estimate.lambda_defined = false;  // division impossible; flagged
    } else {
      estimate.corrected_mean = estimate.symmetrized_mean / lambda;
      estimate.corrected_std_err =
          std::sqrt(estimate.symmetrized_std_err * estimate.symmetrized_std_err +
                    estimate.corrected_mean * estimate.corrected_mean *
                        lambda_err * lambda_err) /
          std::abs(lambda);
    }
  }
  if (std::abs(estimate.corrected_mean) > 1.0 + estimate.corrected_std_err) {
    estimate.out_of_range = true;
  }
  return estimate;
}

RunResult ExperimentSession::run(const exec::MemoryMap& params, uint64_t seed) {
  RunResult result;
  Rng rng(seed);
  const uint32_t k = static_cast<uint32_t>(measured_.size());
  const bool symmetrize = spec_.symmetrization == Symmetrization::Exhaustive;
  const uint64_t patterns = symmetrize ? (uint64_t{1} << k) : 1;

  exec::PatchedBinary patched = exec::patch(binary_, params);

  for (size_t s = 0; s < spec_.settings.size(); ++s) {
    const PauliObservable& observable = spec_.settings[s].observable;
    SettingData data;
    data.measured = measured_;

    exec::repatch(patched, basis_patch(observable, measured_));

    if (spec_.estimation == Estimation::Exact) {
      if (symmetrize) {
        exec::MemoryMap zeros;
        for (uint32_t j = 0; j < k; ++j) zeros.set_real("symmetrization", j, 0.0);
        exec::repatch(patched, zeros);
      }
      data.exact = true;
      auto exact = exec::exact_statevector(patched);
      // Marginal distribution over the measured qubits.
      std::vector<uint32_t> dense_positions;
      for (uint32_t q : measured_) {
        uint32_t phys = binary_.logical_to_physical.empty()
                            ? q
                            : binary_.logical_to_physical[q];
        auto pos = std::lower_bound(exact.used.begin(), exact.used.end(), phys);
        dense_positions.push_back(
            static_cast<uint32_t>(pos - exact.used.begin()));
      }
      data.probs.assign(uint64_t{1} << k, 0.0);
      const auto& amps = exact.state.amplitudes();
      for (uint64_t idx = 0; idx < amps.size(); ++idx) {
        uint64_t key = 0;
        for (uint32_t j = 0; j < k; ++j) {
          if (idx & (uint64_t{1} << dense_positions[j])) key |= uint64_t{1} << j;
        }
        data.probs[key] += std::norm(amps[idx]);
      }
    } else {
      const uint64_t per_pattern =
          std::max<uint64_t>(1, spec_.shots / patterns);
      for (uint64_t pattern = 0; pattern < patterns; ++pattern) {
        if (symmetrize) {
          exec::MemoryMap flips;
          for (uint32_t j = 0; j < k; ++j) {
            flips.set_real("symmetrization", j,
                           (pattern >> j) & 1 ? kPi : 0.0);
          }
          exec::repatch(patched, flips);
        }
        auto report =
            exec::execute(patched, device_,
                          {per_pattern, rng.next_u64(), spec_.reset_mode});
        for (const auto& shot : report.shots) {
          for (uint32_t j = 0; j < k; ++j) {
            uint8_t corrected =
                shot.bits[j] ^ static_cast<uint8_t>((pattern >> j) & 1);
            data.pooled_bits.push_back(corrected);
            if (pattern == 0) data.pattern0_bits.push_back(corrected);
          }
          ++data.pooled_shots;
          if (pattern == 0) ++data.pattern0_shots;
        }
      }
    }

    SettingResult setting_result;
    setting_result.estimate = finish_estimate(observable, data,
                                              observable.support(),
                                              rng.split(0xca11b).next_u64());
    setting_result.data = std::move(data);
    result.settings.push_back(std::move(setting_result));
  }
  return result;
}

ExpectationEstimate ExperimentSession::estimate_product(
    const SettingData& data, const PauliObservable& observable, uint64_t seed) {
  return finish_estimate(observable, data, observable.support(), seed);
}

std::vector<ExpectationEstimate> run_experiment(const ExperimentSpec& spec,
                                                const DeviceModel& device,
                                                uint64_t seed) {
  ExperimentSession session(spec, device);
  RunResult result = session.run(exec::MemoryMap{}, seed);
  std::vector<ExpectationEstimate> estimates;
  estimates.reserve(result.settings.size());
  for (auto& setting : result.settings) {
    estimates.push_back(setting.estimate);
  }
  return estimates;
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("experiment spec: bad JSON: ") +
                                e.what());
  }
  ExperimentSpec spec;
  spec.program = quil::parse(doc.at("program").get<std::string>());
  for (const auto& s : doc.at("settings")) {
    spec.settings.push_back({PauliObservable::parse(s.get<std::string>())});
  }
  spec.shots = doc.value("shots", uint64_t{10000});
  std::string sym = doc.value("symmetrization", "exhaustive");
  spec.symmetrization =
      sym == "none" ? Symmetrization::None : Symmetrization::Exhaustive;
  std::string reset = doc.value("reset", "passive");
  spec.reset_mode =
      reset == "active" ? exec::ResetMode::Active : exec::ResetMode::Passive;
  std::string calibration = doc.value("calibration", "plus_eigenstate");
  spec.calibration = calibration == "none" ? Calibration::None
                                           : Calibration::PlusEigenstate;
  std::string estimation = doc.value("estimation", "sampled");
  spec.estimation =
      estimation == "exact" ? Estimation::Exact : Estimation::Sampled;
  spec.calibration_shots = doc.value("calibration_shots", uint64_t{0});
  return spec;
}

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json doc;
  doc["program"] = quil::to_text(spec.program);
  auto settings = nlohmann::json::array();
  for (const auto& s : spec.settings) settings.push_back(s.observable.to_string());
  doc["settings"] = settings;
  doc["shots"] = spec.shots;
  doc["symmetrization"] =
      spec.symmetrization == Symmetrization::None ? "none" : "exhaustive";
  doc["reset"] =
      spec.reset_mode == exec::ResetMode::Active ? "active" : "passive";
  doc["calibration"] =
      spec.calibration == Calibration::None ? "none" : "plus_eigenstate";
  doc["estimation"] =
      spec.estimation == Estimation::Exact ? "exact" : "sampled";
  return doc.dump(2);
}

std::string estimates_to_json(
    const std::vector<ExpectationEstimate>& estimates) {
  auto arr = nlohmann::json::array();
  for (const auto& e : estimates) {
    arr.push_back({{"observable", e.observable.to_string()},
                   {"raw", e.raw_mean},
                   {"raw_std_err", e.raw_std_err},
                   {"symmetrized", e.symmetrized_mean},
                   {"symmetrized_std_err", e.symmetrized_std_err},
                   {"lambda", e.lambda},
                   {"lambda_std_err", e.lambda_std_err},
                   {"lambda_defined", e.lambda_defined},
                   {"corrected", e.corrected_mean},
                   {"corrected_std_err", e.corrected_std_err},
                   {"shots", e.shots_used},
                   {"out_of_range", e.out_of_range}});
  }
  return arr.dump(2);
}

std::string estimates_to_csv(
    const std::vector<ExpectationEstimate>& estimates) {
  std::ostringstream out;
  out << "observable,raw,symmetrized,lambda,corrected,corrected_std_err,"
         "shots\n";
  for (const auto& e : estimates) {
    out << e.observable.to_string() << ',' << format_double(e.raw_mean) << ','
        << format_double(e.symmetrized_mean) << ',' << format_double(e.lambda)
        << ',' << format_double(e.corrected_mean) << ','
        << format_double(e.corrected_std_err) << ',' << e.shots_used << '\n';
  }
  return out.str();
}

}  // namespace qcp::expt
