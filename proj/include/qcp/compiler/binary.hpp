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
#include <variant>
#include <vector>

#include "qcp/quil/ast.hpp"

namespace qcp::compiler {

/// One element of a region in the data-memory layout.
struct SlotRef {
  uint32_t region = 0;  // index into DataMemoryLayout::regions
  uint32_t index = 0;

  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Destination of a capture / source of a branch condition: either a BIT
/// slot in data memory or the per-qubit scratch bit owned by the active
/// reset protocol (scratch bits never appear in the user-visible layout).
struct BitRef {
  enum class Kind : uint8_t { DataSlot, ResetScratch };
  Kind kind = Kind::DataSlot;
  SlotRef slot;        // valid when kind == DataSlot
  uint32_t qubit = 0;  // valid when kind == ResetScratch

  static BitRef data(SlotRef s) { return BitRef{Kind::DataSlot, s, 0}; }
  static BitRef scratch(uint32_t q) { return BitRef{Kind::ResetScratch, {}, q}; }

  friend bool operator==(const BitRef&, const BitRef&) = default;
};

struct Pulse {
  uint32_t qubit = 0;
  int8_t rx_multiple = 1;  // k: rotation RX(k * pi/2), k in {-2,-1,1,2}
  uint32_t waveform = 0;

  friend bool operator==(const Pulse&, const Pulse&) = default;
};

struct CZPulse {
  uint32_t a = 0;
  uint32_t b = 0;
  uint32_t waveform = 0;

  friend bool operator==(const CZPulse&, const CZPulse&) = default;
};

struct ShiftPhase {
  uint32_t qubit = 0;
  bool has_slot = false;
  SlotRef slot;          // valid when has_slot
  double literal = 0.0;  // radians, valid when !has_slot

  friend bool operator==(const ShiftPhase&, const ShiftPhase&) = default;
};

struct Capture {
  uint32_t qubit = 0;
  BitRef destination;
  uint32_t waveform = 0;

  friend bool operator==(const Capture&, const Capture&) = default;
};

using NativeInstruction = std::variant<Pulse, CZPulse, ShiftPhase, Capture>;

/// Block terminator. RoundLoop is the counted loop-back used by the active
/// reset protocol: jump to `back` while the enclosing CFG's measurement
/// counter is below its round bound, otherwise fall through to `exit`.
struct Terminator {
  enum class Kind : uint8_t { Jump, Conditional, RoundLoop, Halt };
  Kind kind = Kind::Halt;
  uint32_t target = 0;      // Jump
  BitRef condition;         // Conditional
  uint32_t if_one = 0;      // Conditional
  uint32_t if_zero = 0;     // Conditional
  uint32_t back = 0;        // RoundLoop
  uint32_t exit = 0;        // RoundLoop

  static Terminator jump(uint32_t target) {
    Terminator t;
    t.kind = Kind::Jump;
    t.target = target;
    return t;
  }
  static Terminator conditional(BitRef condition, uint32_t if_one,
                                uint32_t if_zero) {
    Terminator t;
    t.kind = Kind::Conditional;
    t.condition = condition;
    t.if_one = if_one;
    t.if_zero = if_zero;
    return t;
  }
  static Terminator round_loop(uint32_t back, uint32_t exit) {
    Terminator t;
    t.kind = Kind::RoundLoop;
    t.back = back;
    t.exit = exit;
    return t;
  }
  static Terminator halt() { return Terminator{}; }

  friend bool operator==(const Terminator&, const Terminator&) = default;
};

struct BasicBlock {
  uint32_t id = 0;
  std::vector<NativeInstruction> instructions;
  Terminator terminator;

  friend bool operator==(const BasicBlock&, const BasicBlock&) = default;
};

/// Per-qubit active reset control-flow graph: header -> measurement ->
/// (idle | feedback) -> measurement ... until `rounds` measurements have
/// run, then fall through.
struct ResetCFG {
  uint32_t qubit = 0;
  uint32_t header = 0;
  uint32_t measurement = 0;
  uint32_t idle = 0;
  uint32_t feedback = 0;
  uint32_t rounds = 1;

  friend bool operator==(const ResetCFG&, const ResetCFG&) = default;
};

struct DataRegion {
  std::string name;
  quil::MemoryKind kind = quil::MemoryKind::Bit;
  uint32_t length = 1;
  uint64_t byte_offset = 0;

  friend bool operator==(const DataRegion&, const DataRegion&) = default;
};

struct DataMemoryLayout {
  std::vector<DataRegion> regions;
  uint64_t total_bytes = 0;

  int find(const std::string& name) const;

  /// Byte offset of element `index` (REAL/INTEGER/OCTET regions).
  uint64_t element_offset(const SlotRef& ref) const;
  /// (byte, mask) of a packed BIT element.
  std::pair<uint64_t, uint8_t> bit_location(const SlotRef& ref) const;

  friend bool operator==(const DataMemoryLayout&,
                         const DataMemoryLayout&) = default;
};

DataMemoryLayout build_layout(
    const std::vector<quil::MemoryDeclaration>& declarations);

struct ReadoutEntry {
  std::string region;
  uint32_t index = 0;
  uint32_t qubit = 0;  // physical qubit measured into this slot

  friend bool operator==(const ReadoutEntry&, const ReadoutEntry&) = default;
};

/// Symbolic pulse descriptor; shapes are never synthesized here.
struct Waveform {
  std::string label;

  friend bool operator==(const Waveform&, const Waveform&) = default;
};

struct ParametricBinary {
  std::vector<BasicBlock> blocks;  // entry block first
  std::vector<Waveform> waveforms;
  DataMemoryLayout layout;
  std::vector<ReadoutEntry> readout;
  std::vector<ResetCFG> reset_cfgs;
  uint32_t main_entry = 0;  // first block of the main body
  std::vector<uint32_t> logical_to_physical;
  std::vector<uint32_t> used_qubits;  // physical, ascending

  /// Canonical byte serialization (.pqb). Deterministic: equal binaries
  /// serialize to identical bytes.
  std::vector<uint8_t> serialize() const;
  static ParametricBinary deserialize(const std::vector<uint8_t>& bytes);

  /// JSON dump of every section, for debugging and golden tests.
  std::string to_json() const;

  friend bool operator==(const ParametricBinary&,
                         const ParametricBinary&) = default;
};

}  // namespace qcp::compiler
