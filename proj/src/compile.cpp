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

#include <atomic>
#include <cmath>
#include <unordered_map>

#include "qcp/compiler/compile.hpp"

namespace qcp::compiler {
namespace {

std::atomic<uint64_t> g_compile_invocations{0};

class WaveformTable {
 public:
  uint32_t intern(const std::string& label) {
    for (size_t i = 0; i < waveforms_.size(); ++i) {
      if (waveforms_[i].label == label) return static_cast<uint32_t>(i);
    }
    waveforms_.push_back({label});
    return static_cast<uint32_t>(waveforms_.size() - 1);
  }

  uint32_t rx(int8_t multiple) {
    switch (multiple) {
      case 1:
        return intern("rx_pi_2");
      case -1:
        return intern("rx_minus_pi_2");
      case 2:
        return intern("rx_pi");
      case -2:
        return intern("rx_minus_pi");
      default:
        throw CompileError("pulse multiple outside the native set");
    }
  }

  std::vector<Waveform> take() { return std::move(waveforms_); }

 private:
  std::vector<Waveform> waveforms_;
};

ResetLowering lower_reset_impl(const std::vector<uint32_t>& qubits,
                               uint32_t rounds, WaveformTable& waveforms) {
  if (rounds == 0) {
    throw CompileError("active reset requires at least one round");
  }
  ResetLowering lowering;
  const uint32_t n = static_cast<uint32_t>(qubits.size());
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t q = qubits[i];
    const uint32_t header = 4 * i;
    const uint32_t measurement = 4 * i + 1;
    const uint32_t idle = 4 * i + 2;
    const uint32_t feedback = 4 * i + 3;
    const uint32_t next = 4 * (i + 1);  // following CFG or the main body

    BasicBlock h{header, {}, Terminator::jump(measurement)};

    BasicBlock m{measurement,
                 {Capture{q, BitRef::scratch(q), waveforms.intern("capture")}},
                 Terminator::conditional(BitRef::scratch(q), feedback, idle)};

    BasicBlock i_blk{idle, {}, Terminator::round_loop(measurement, next)};

    BasicBlock x_blk{feedback,
                     {Pulse{q, 2, waveforms.rx(2)}},
                     Terminator::round_loop(measurement, next)};

    lowering.blocks.push_back(std::move(h));
    lowering.blocks.push_back(std::move(m));
    lowering.blocks.push_back(std::move(i_blk));
    lowering.blocks.push_back(std::move(x_blk));
    lowering.cfgs.push_back({q, header, measurement, idle, feedback, rounds});
  }
  return lowering;
}

struct ProtoTerminator {
  enum class Kind { Fallthrough, Jump, Conditional, Halt };
  Kind kind = Kind::Fallthrough;
  std::string label;        // Jump / Conditional taken target
  bool taken_if_one = true; // JUMP-WHEN vs JUMP-UNLESS
  BitRef condition;
  uint32_t fallthrough = 0;  // local id of the lexically next block
};

struct ProtoBlock {
  std::vector<NativeInstruction> instructions;
  ProtoTerminator terminator;
};

class BlockBuilder {
 public:
  BlockBuilder(const DataMemoryLayout& layout, WaveformTable& waveforms,
               std::vector<ReadoutEntry>& readout)
      : layout_(layout), waveforms_(waveforms), readout_(readout) {
    blocks_.emplace_back();
  }

  SlotRef resolve(const quil::MemRef& ref) const {
    int region = layout_.find(ref.region);
    if (region < 0) {
      throw CompileError("reference to unknown region '" + ref.region + "'");
    }
    return SlotRef{static_cast<uint32_t>(region), ref.index};
  }

  void add(const quil::Instruction& instruction) {
    if (const auto* label = std::get_if<quil::Label>(&instruction)) {
      // Close the running block with a fallthrough edge.
      uint32_t next = static_cast<uint32_t>(blocks_.size());
      if (!closed_) blocks_.back().terminator.fallthrough = next;
      open_block();
      labels_[label->name] = static_cast<uint32_t>(blocks_.size() - 1);
      return;
    }
    if (closed_) open_block();
    if (const auto* gate = std::get_if<quil::Gate>(&instruction)) {
      add_gate(*gate);
      return;
    }
    if (const auto* measure = std::get_if<quil::Measure>(&instruction)) {
      SlotRef slot = resolve(measure->target);
      record_readout(*measure);
      blocks_.back().instructions.emplace_back(Capture{
          measure->qubit, BitRef::data(slot), waveforms_.intern("capture")});
      return;
    }
    ProtoTerminator& term = blocks_.back().terminator;
    if (const auto* jump = std::get_if<quil::Jump>(&instruction)) {
      term.kind = ProtoTerminator::Kind::Jump;
      term.label = jump->target;
    } else if (const auto* jw = std::get_if<quil::JumpWhen>(&instruction)) {
      term.kind = ProtoTerminator::Kind::Conditional;
      term.label = jw->target;
      term.taken_if_one = true;
      term.condition = BitRef::data(resolve(jw->condition));
      term.fallthrough = static_cast<uint32_t>(blocks_.size());
    } else if (const auto* ju = std::get_if<quil::JumpUnless>(&instruction)) {
      term.kind = ProtoTerminator::Kind::Conditional;
      term.label = ju->target;
      term.taken_if_one = false;
      term.condition = BitRef::data(resolve(ju->condition));
      term.fallthrough = static_cast<uint32_t>(blocks_.size());
    } else {
      term.kind = ProtoTerminator::Kind::Halt;
    }
    closed_ = true;
  }

  /// Finalizes local blocks and appends them to `out` with ids offset by
  /// `base`. Fallthrough past the last block becomes a fresh halt block.
  void emit(std::vector<BasicBlock>& out, uint32_t base) {
    if (!closed_) {
      blocks_.back().terminator.kind = ProtoTerminator::Kind::Halt;
    }
    bool needs_tail = false;
    for (const auto& block : blocks_) {
      if (block.terminator.kind == ProtoTerminator::Kind::Conditional &&
          block.terminator.fallthrough >= blocks_.size()) {
        needs_tail = true;
      }
    }
    if (needs_tail) {
      ProtoBlock tail;
      tail.terminator.kind = ProtoTerminator::Kind::Halt;
      blocks_.push_back(std::move(tail));
    }

    auto resolve_label = [&](const std::string& name) {
      auto it = labels_.find(name);
      if (it == labels_.end()) {
        throw CompileError("jump to undefined label '" + name + "'");
      }
      return base + it->second;
    };

    for (size_t i = 0; i < blocks_.size(); ++i) {
      BasicBlock block;
      block.id = base + static_cast<uint32_t>(i);
      block.instructions = std::move(blocks_[i].instructions);
      const ProtoTerminator& term = blocks_[i].terminator;
      switch (term.kind) {
        case ProtoTerminator::Kind::Fallthrough:
          block.terminator = Terminator::jump(base + static_cast<uint32_t>(
                                                         term.fallthrough));
          break;
        case ProtoTerminator::Kind::Jump:
          block.terminator = Terminator::jump(resolve_label(term.label));
          break;
        case ProtoTerminator::Kind::Conditional: {
          uint32_t taken = resolve_label(term.label);
          uint32_t other = base + term.fallthrough;
          block.terminator =
              term.taken_if_one
                  ? Terminator::conditional(term.condition, taken, other)
                  : Terminator::conditional(term.condition, other, taken);
          break;
        }
        case ProtoTerminator::Kind::Halt:
          block.terminator = Terminator::halt();
          break;
      }
      out.push_back(std::move(block));
    }
  }

 private:
  void open_block() {
    blocks_.emplace_back();
    closed_ = false;
  }

  void add_gate(const quil::Gate& gate) {
    using quil::GateName;
    switch (gate.name) {
      case GateName::RZ: {
        ShiftPhase sp;
        sp.qubit = gate.qubits[0];
        if (gate.args[0].is_literal()) {
          sp.has_slot = false;
          sp.literal = gate.args[0].literal();
        } else {
          sp.has_slot = true;
          sp.slot = resolve(gate.args[0].ref());
        }
        blocks_.back().instructions.emplace_back(sp);
        return;
      }
      case GateName::RX: {
        double theta = canonical_angle(gate.args[0].literal());
        int8_t k = static_cast<int8_t>(std::lround(theta / (kPi / 2)));
        blocks_.back().instructions.emplace_back(
            Pulse{gate.qubits[0], k, waveforms_.rx(k)});
        return;
      }
      case GateName::CZ:
        blocks_.back().instructions.emplace_back(CZPulse{
            gate.qubits[0], gate.qubits[1], waveforms_.intern("cz")});
        return;
      default:
        throw CompileError("non-native gate survived nativization");
    }
  }

  void record_readout(const quil::Measure& measure) {
    for (const auto& entry : readout_) {
      if (entry.region == measure.target.region &&
          entry.index == measure.target.index) {
        return;  // re-measurement into the same slot keeps its position
      }
    }
    readout_.push_back(
        {measure.target.region, measure.target.index, measure.qubit});
  }

  const DataMemoryLayout& layout_;
  WaveformTable& waveforms_;
  std::vector<ReadoutEntry>& readout_;
  std::vector<ProtoBlock> blocks_;
  bool closed_ = false;
  std::unordered_map<std::string, uint32_t> labels_;
};

}  // namespace

ResetLowering lower_reset(const quil::Program& program,
                          const DeviceModel& device, uint32_t rounds) {
  if (!program.reset_requested) {
    throw CompileError("program does not request reset");
  }
  for (uint32_t q : program.used_qubits()) {
    if (q >= device.qubit_count) {
      throw CompileError("program uses qubit " + std::to_string(q) +
                         " beyond the device");
    }
  }
  WaveformTable waveforms;
  return lower_reset_impl(program.used_qubits(), rounds, waveforms);
}

ParametricBinary compile(const quil::Program& program,
                         const DeviceModel& device, CompileOptions options) {
  g_compile_invocations.fetch_add(1, std::memory_order_relaxed);

  NativizeResult native = nativize_full(program, device);

  ParametricBinary binary;
  binary.layout = build_layout(program.declarations);
  binary.logical_to_physical = native.logical_to_physical;
  binary.used_qubits = native.program.used_qubits();

  WaveformTable waveforms;
  uint32_t base = 0;
  if (program.reset_requested) {
    ResetLowering lowering =
        lower_reset_impl(binary.used_qubits, options.reset_rounds, waveforms);
    base = static_cast<uint32_t>(lowering.blocks.size());
    binary.blocks = std::move(lowering.blocks);
    binary.reset_cfgs = std::move(lowering.cfgs);
  }
  binary.main_entry = base;

  BlockBuilder builder(binary.layout, waveforms, binary.readout);
  for (const auto& instruction : native.program.body) builder.add(instruction);
  builder.emit(binary.blocks, base);

  binary.waveforms = waveforms.take();
  return binary;
}

uint64_t compile_invocations() {
  return g_compile_invocations.load(std::memory_order_relaxed);
}

}  // namespace qcp::compiler
