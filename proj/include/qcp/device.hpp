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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qcp {

/// Per-qubit readout confusion: epsilon0 = Pr(report 1 | true 0),
/// epsilon1 = Pr(report 0 | true 1).
struct ReadoutConfusion {
  double epsilon0 = 0.0;
  double epsilon1 = 0.0;
};

struct OperationDurations {
  double rx_pulse = 0.0;
  double cz = 0.0;
  double readout_capture = 0.0;
  double feedback_latency = 0.0;
};

struct StepOverheads {
  double compile = 0.0;
  double awg_load_arm = 0.0;
  double awg_trigger = 0.0;
  double network = 0.0;

  double per_step_without_compile() const {
    return awg_load_arm + awg_trigger + network;
  }
};

/// Static description of the simulated QPU: topology, native gateset
/// timings, and readout characteristics. The native gateset itself is
/// fixed (RZ(theta), RX(k*pi/2) for k in {-2,-1,1,2}, CZ on edges).
struct DeviceModel {
  std::string name = "device";
  uint32_t qubit_count = 0;
  std::vector<std::pair<uint32_t, uint32_t>> topology;
  OperationDurations durations;
  std::vector<double> t1;
  std::vector<ReadoutConfusion> readout_confusion;
  std::vector<double> reset_ground_population;
  StepOverheads step_overheads;
  uint32_t log2_quantum_volume = 1;

  bool has_edge(uint32_t a, uint32_t b) const;
  void validate() const;

  /// 5x the longest T1 among `qubits` (passive reset wait).
  double passive_reset_duration(const std::vector<uint32_t>& qubits) const;

  /// Per-shot active reset duration for the given number of rounds. The
  /// conditional feedback pulse executes inside the feedback-latency
  /// window, so the duration does not depend on branch outcomes.
  double active_reset_duration(uint32_t rounds) const {
    return rounds * (durations.readout_capture + durations.feedback_latency);
  }
};

/// Parses the sectioned key/value device profile format (see
/// config/aspen4.device for the reference profile).
DeviceModel parse_device_profile(const std::string& text);
DeviceModel load_device_profile(const std::string& path);

/// The built-in aspen4-like profile; identical to config/aspen4.device.
const std::string& aspen4_profile_text();
DeviceModel aspen4_device();

/// JSON round-trip used by the service and by result artifacts.
std::string device_to_json(const DeviceModel& device);

}  // namespace qcp
