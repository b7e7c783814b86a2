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

#include "qcp/compiler/compile.hpp"
#include "qcp/device.hpp"
#include "qcp/exec/execute.hpp"
#include "qcp/expt/pauli.hpp"

namespace qcp::expt {

enum class Symmetrization { None, Exhaustive };
enum class Calibration { None, PlusEigenstate };
enum class Estimation { Sampled, Exact };

struct ExperimentSetting {
  PauliObservable observable;
};

struct ExperimentSpec {
  quil::Program program;  // parametric main body; no MEASURE instructions
  std::vector<ExperimentSetting> settings;
  uint64_t shots = 10000;  // per setting, split across flip patterns
  Symmetrization symmetrization = Symmetrization::Exhaustive;
  exec::ResetMode reset_mode = exec::ResetMode::Passive;
  Calibration calibration = Calibration::PlusEigenstate;
  Estimation estimation = Estimation::Sampled;
  uint32_t exhaustive_limit = 12;  // max measured qubits for 2^k patterns
  uint64_t calibration_shots = 0;  // 0 -> same as shots
  uint32_t reset_rounds = 3;
};

struct ExpectationEstimate {
  PauliObservable observable;
  double raw_mean = 0.0;  // unflipped-pattern estimate
  double raw_std_err = 0.0;
  double symmetrized_mean = 0.0;
  double symmetrized_std_err = 0.0;
  double lambda = 1.0;
  double lambda_std_err = 0.0;
  bool lambda_defined = true;  // false: |lambda| ~ 0, correction skipped
  double corrected_mean = 0.0;  // symmetrized / lambda
  double corrected_std_err = 0.0;
  uint64_t shots_used = 0;
  bool out_of_range = false;  // |corrected| > 1 beyond its error bar
};

/// Pooled measurement record of one executed setting, in the measured-qubit
/// basis of that setting. Sufficient to estimate any sub-product of the
/// setting's per-qubit operators (e.g. Z0 and Z1 from the Z0*Z1 setting).
struct SettingData {
  std::vector<uint32_t> measured;  // logical qubits, ascending
  bool exact = false;
  // Sampled mode: XOR-corrected pooled bits (shot-major, k bits each).
  std::vector<uint8_t> pooled_bits;
  uint64_t pooled_shots = 0;
  std::vector<uint8_t> pattern0_bits;
  uint64_t pattern0_shots = 0;
  // Exact mode: distribution over the 2^k measured-bit patterns.
  std::vector<double> probs;
};

struct SettingResult {
  ExpectationEstimate estimate;
  SettingData data;
};

struct RunResult {
  std::vector<SettingResult> settings;
};

/// Euler measurement template for each qubit: RZ(measurement_alpha[j]),
/// RX(pi/2), RZ(measurement_beta[j]), RX(-pi/2), RZ(measurement_gamma[j]).
/// The caller declares measurement_{alpha,beta,gamma} as REAL[k].
std::vector<quil::Instruction> euler_measurement_template(
    const std::vector<uint32_t>& qubits);

/// Basis-change fragment for one observable: the Euler template restricted
/// to the support qubits measured in X or Y (a Z-only observable yields an
/// empty fragment). Slot j corresponds to the j-th emitted qubit.
std::vector<quil::Instruction> basis_change_suffix(
    const PauliObservable& observable);

/// Per-setting patch values for the full template over `measured`:
/// X -> (0, -pi/2, 0), Y -> (pi/2, pi/2, -pi/2), Z/I -> (0, 0, 0).
exec::MemoryMap basis_patch(const PauliObservable& observable,
                            const std::vector<uint32_t>& measured);

/// Compiles the main body + measurement template + symmetrization layer +
/// readout into ONE parametric binary (plus one calibration binary when
/// calibration is enabled); every setting, flip pattern, and parameter
/// value then executes by patching alone.
class ExperimentSession {
 public:
  ExperimentSession(ExperimentSpec spec, DeviceModel device);

  /// Executes every setting with the given main-body parameter values.
  RunResult run(const exec::MemoryMap& params, uint64_t seed);

  /// Estimate of the product of the setting's per-qubit operators over
  /// `support` (a subset of the setting's measured observable support or
  /// any measured qubits, interpreted in that setting's basis).
  ExpectationEstimate estimate_product(const SettingData& data,
                                       const PauliObservable& observable,
                                       uint64_t seed);

  uint64_t compile_count() const { return compile_count_; }
  const compiler::ParametricBinary& binary() const { return binary_; }
  const std::vector<uint32_t>& measured_qubits() const { return measured_; }

  /// Symmetrized ground-state <Z...Z> over `support` (the calibration
  /// factor lambda of A.1-style readout mitigation). Cached per support.
  std::pair<double, double> calibrate(const std::vector<uint32_t>& support,
                                      uint64_t seed);

 private:
  void ensure_calibration_data(uint64_t seed);
  ExpectationEstimate finish_estimate(const PauliObservable& observable,
                                      const SettingData& data,
                                      const std::vector<uint32_t>& support,
                                      uint64_t seed);

  ExperimentSpec spec_;
  DeviceModel device_;
  std::vector<uint32_t> measured_;
  compiler::ParametricBinary binary_;
  std::optional<compiler::ParametricBinary> calibration_binary_;
  uint64_t compile_count_ = 0;

  bool calibration_data_ready_ = false;
  std::vector<uint8_t> calibration_bits_;  // pooled, XOR-corrected
  uint64_t calibration_shot_count_ = 0;
  std::map<std::vector<uint32_t>, std::pair<double, double>> lambda_cache_;
};

/// One-call convenience: build a session, run once with no parameters.
std::vector<ExpectationEstimate> run_experiment(const ExperimentSpec& spec,
                                                const DeviceModel& device,
                                                uint64_t seed);

/// JSON document form of an experiment spec (program text, settings as
/// Pauli strings, options).
ExperimentSpec experiment_spec_from_json(const std::string& text);
std::string experiment_spec_to_json(const ExperimentSpec& spec);
std::string estimates_to_json(const std::vector<ExpectationEstimate>& estimates);
std::string estimates_to_csv(const std::vector<ExpectationEstimate>& estimates);

}  // namespace qcp::expt
