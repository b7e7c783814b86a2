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
#include <vector>

#include "qcp/device.hpp"
#include "qcp/exec/memory.hpp"
#include "qcp/exec/statevector.hpp"

namespace qcp::exec {

enum class ResetMode { Passive, Active };

struct ExecOptions {
  uint64_t shots = 1;
  uint64_t seed = 0;
  ResetMode reset_mode = ResetMode::Passive;
};

struct ShotResult {
  std::vector<uint8_t> bits;  // ordered per the binary's readout layout
  double simulated_duration = 0.0;
};

struct ExecutionReport {
  std::vector<ShotResult> shots;
  double wall_clock_s = 0.0;
  double step_overhead_s = 0.0;   // load/arm + trigger + network
  double simulated_total_s = 0.0; // step overhead + sum of shot durations
};

/// Runs shots on the dense statevector simulator with readout confusion
/// noise, feedback-driven control flow, and the device timing model.
/// Deterministic for a fixed seed.
///
/// Per shot: qubits initialize to |0> with their reset_ground_population
/// (else |1>). Active mode walks the reset CFGs (measurement feedback
/// branches on the *reported* bit; the state follows the true projective
/// outcome). Passive mode charges 5x the longest T1 instead. Durations
/// accrue on per-qubit ASAP timelines; frame updates are free, and the
/// conditional feedback pulse rides inside the feedback-latency window.
ExecutionReport execute(const PatchedBinary& patched,
                        const DeviceModel& device, const ExecOptions& options);

/// Exact pre-measurement statevector of a patched binary: walks the main
/// body (skipping captures, no noise, ideal |0...0> start). Branches are
/// not allowed. Dense qubit order = position in `used` (ascending
/// physical index).
struct ExactResult {
  StateVector state;
  std::vector<uint32_t> used;  // physical qubits, ascending
};
ExactResult exact_statevector(const PatchedBinary& patched);

std::string bits_to_string(const std::vector<uint8_t>& bits);

}  // namespace qcp::exec
