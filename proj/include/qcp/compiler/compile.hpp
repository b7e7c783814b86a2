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

#include "qcp/compiler/binary.hpp"
#include "qcp/compiler/nativize.hpp"
#include "qcp/device.hpp"
#include "qcp/quil/ast.hpp"

namespace qcp::compiler {

struct CompileOptions {
  uint32_t reset_rounds = 3;
};

struct ResetLowering {
  std::vector<BasicBlock> blocks;  // four per qubit, ids 0..4n-1
  std::vector<ResetCFG> cfgs;      // ascending qubit order
};

/// Lowers the program's RESET directive into one four-block CFG per used
/// qubit. CFGs are chained in ascending qubit order; the exit of the last
/// one targets block id `blocks.size()`, where the caller places the main
/// body entry. Throws CompileError when rounds == 0 or the program did not
/// request reset.
ResetLowering lower_reset(const quil::Program& program,
                          const DeviceModel& device, uint32_t rounds);

/// Full pipeline: nativize, lower reset, build basic blocks, lay out data
/// memory (declaration order preserved), and intern waveforms.
/// Deterministic: recompiling the same program yields an identical binary.
ParametricBinary compile(const quil::Program& program,
                         const DeviceModel& device,
                         CompileOptions options = {});

/// Process-wide count of compile() invocations (used to assert the
/// compile-once property of parametric execution).
uint64_t compile_invocations();

}  // namespace qcp::compiler
