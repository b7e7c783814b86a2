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

#include <vector>

#include "qcp/device.hpp"
#include "qcp/quil/ast.hpp"

namespace qcp::compiler {

struct NativizeResult {
  quil::Program program;
  /// logical_to_physical[l] = physical qubit holding logical qubit l after
  /// the final instruction (identity when no routing swaps were needed).
  std::vector<uint32_t> logical_to_physical;
};

/// Rewrites a program onto the native gateset {RZ(theta), RX(k*pi/2) for
/// k in {-2,-1,1,2}, CZ on topology edges}, inserting shortest-path SWAP
/// chains where the topology requires them. Memory-referenced rotation
/// arguments survive as frame updates (RX/RY references ride between fixed
/// pulses). Idempotent on its own output.
NativizeResult nativize_full(const quil::Program& program,
                             const DeviceModel& device);

inline quil::Program nativize(const quil::Program& program,
                              const DeviceModel& device) {
  return nativize_full(program, device).program;
}

}  // namespace qcp::compiler
