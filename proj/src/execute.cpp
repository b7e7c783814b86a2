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
#include <bit>
#include <chrono>
#include <unordered_map>

#include "qcp/exec/execute.hpp"
#include "qcp/rng.hpp"

namespace qcp::exec {
namespace {

using compiler::BasicBlock;
using compiler::BitRef;
using compiler::Capture;
using compiler::CZPulse;
using compiler::ParametricBinary;
using compiler::Pulse;
using compiler::ShiftPhase;
using compiler::Terminator;

constexpr uint64_t kMaxTransitionsPerShot = 1u << 22;

struct QubitIndex {
  std::vector<int> dense_of_phys;
  uint32_t count = 0;

  explicit QubitIndex(const ParametricBinary& binary, uint32_t device_qubits) {
    dense_of_phys.assign(device_qubits, -1);
    for (uint32_t q : binary.used_qubits) {
      if (q >= device_qubits) {
        throw ExecutionError("binary uses qubit " + std::to_string(q) +
                             " beyond the device");
      }
      dense_of_phys[q] = static_cast<int>(count++);
    }
  }

  uint32_t dense(uint32_t phys) const {
    int d = dense_of_phys.at(phys);
    if (d < 0) throw ExecutionError("instruction on unmapped qubit");
    return static_cast<uint32_t>(d);
  }
};

class ShotRunner {
 public:
  ShotRunner(const PatchedBinary& patched, const DeviceModel& device,
             ResetMode mode, Rng& rng)
      : patched_(patched),
        binary_(patched.binary),
        device_(device),
        mode_(mode),
        rng_(rng),
        index_(patched.binary, device.qubit_count),
        state_(index_.count) {
    for (const auto& cfg : binary_.reset_cfgs) {
      cfg_of_block_[cfg.header] = &cfg;
      cfg_of_block_[cfg.measurement] = &cfg;
      cfg_of_block_[cfg.idle] = &cfg;
      cfg_of_block_[cfg.feedback] = &cfg;
    }
    if (mode_ == ResetMode::Active && binary_.reset_cfgs.empty()) {
      throw ExecutionError(
          "active reset requested but the binary has no reset CFGs "
          "(compile the program with a RESET directive)");
    }
  }

  ShotResult run() {
    data_ = patched_.data_memory;
    timelines_.assign(index_.count, 0.0);
    visits_.clear();

    // Initial state: per-qubit ground population draw.
    uint64_t basis = 0;
    for (uint32_t q : binary_.used_qubits) {
      double p0 = device_.reset_ground_population[q];
      if (rng_.uniform() >= p0) basis |= uint64_t{1} << index_.dense(q);
    }
    state_.set_basis_state(basis);

    uint32_t block_id;
    if (mode_ == ResetMode::Passive) {
      double wait = device_.passive_reset_duration(binary_.used_qubits);
      for (auto& t : timelines_) t = wait;
      block_id = binary_.main_entry;
    } else {
      block_id = 0;
    }

    uint64_t transitions = 0;
    bool halted = false;
    while (!halted) {
      if (++transitions > kMaxTransitionsPerShot) {
        throw ExecutionError("malformed CFG: no reachable halt");
      }
      if (block_id >= binary_.blocks.size()) {
        throw ExecutionError("control transferred to a missing block");
      }
      const BasicBlock& block = binary_.blocks[block_id];
      const bool in_reset = block_id < binary_.main_entry;
      enter_block(block_id);
      for (const auto& instruction : block.instructions) {
        run_instruction(instruction, in_reset);
      }
      switch (block.terminator.kind) {
        case Terminator::Kind::Jump: {
          uint32_t next = block.terminator.target;
          if (in_reset && next >= binary_.main_entry) sync_all();
          block_id = next;
          break;
        }
        case Terminator::Kind::Conditional: {
          int bit = read_bit(block.terminator.condition);
          if (in_reset) {
            const compiler::ResetCFG* cfg = cfg_of_block_.at(block_id);
            timelines_[index_.dense(cfg->qubit)] +=
                device_.durations.feedback_latency;
          } else {
            sync_all();
            for (auto& t : timelines_) t += device_.durations.feedback_latency;
          }
          block_id = bit ? block.terminator.if_one : block.terminator.if_zero;
          break;
        }
        case Terminator::Kind::RoundLoop: {
          const compiler::ResetCFG* cfg = cfg_of_block_.at(block_id);
          uint32_t next;
          if (visits_[cfg] < cfg->rounds) {
            next = block.terminator.back;
          } else {
            next = block.terminator.exit;
          }
          if (in_reset && next >= binary_.main_entry) sync_all();
          block_id = next;
          break;
        }
        case Terminator::Kind::Halt:
          halted = true;
          break;
      }
    }

    ShotResult result;
    for (const auto& entry : binary_.readout) {
      int region = binary_.layout.find(entry.region);
      auto [byte, mask] = binary_.layout.bit_location(
          {static_cast<uint32_t>(region), entry.index});
      result.bits.push_back((data_[byte] & mask) ? 1 : 0);
    }
    double duration = 0.0;
    for (double t : timelines_) duration = std::max(duration, t);
    result.simulated_duration = duration;
    return result;
  }

 private:
  void enter_block(uint32_t block_id) {
    auto it = cfg_of_block_.find(block_id);
    if (it == cfg_of_block_.end()) return;
    const compiler::ResetCFG* cfg = it->second;
    if (block_id == cfg->header) visits_[cfg] = 0;
    if (block_id == cfg->measurement) ++visits_[cfg];
  }

  void run_instruction(const compiler::NativeInstruction& instruction,
                       bool in_reset) {
    if (const auto* pulse = std::get_if<Pulse>(&instruction)) {
      uint32_t q = index_.dense(pulse->qubit);
      state_.apply_1q(q, compiler::rx_matrix(pulse->rx_multiple * kPi / 2));
      // Reset feedback/idle pulses execute inside the feedback-latency
      // window charged at the branch.
      if (!in_reset) timelines_[q] += device_.durations.rx_pulse;
      return;
    }
    if (const auto* cz = std::get_if<CZPulse>(&instruction)) {
      uint32_t a = index_.dense(cz->a);
      uint32_t b = index_.dense(cz->b);
      state_.apply_cz(a, b);
      double start = std::max(timelines_[a], timelines_[b]);
      timelines_[a] = timelines_[b] = start + device_.durations.cz;
      return;
    }
    if (const auto* sp = std::get_if<ShiftPhase>(&instruction)) {
      double theta = sp->has_slot ? read_real(sp->slot) : sp->literal;
      state_.apply_rz(index_.dense(sp->qubit), theta);
      return;
    }
    const auto& capture = std::get<Capture>(instruction);
    uint32_t q = index_.dense(capture.qubit);
    int true_bit = state_.measure_collapse(q, rng_.uniform());
    const ReadoutConfusion& confusion =
        device_.readout_confusion[capture.qubit];
    double flip_p = true_bit ? confusion.epsilon1 : confusion.epsilon0;
    int reported = true_bit;
    if (rng_.uniform() < flip_p) reported ^= 1;
    write_bit(capture.destination, reported);
    timelines_[q] += device_.durations.readout_capture;
  }

  double read_real(const compiler::SlotRef& slot) const {
    uint64_t offset = binary_.layout.element_offset(slot);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<uint64_t>(data_[offset + i]) << (8 * i);
    }
    return std::bit_cast<double>(bits);
  }

  int read_bit(const BitRef& ref) const {
    if (ref.kind == BitRef::Kind::ResetScratch) {
      return scratch_.at(ref.qubit);
    }
    auto [byte, mask] = binary_.layout.bit_location(ref.slot);
    return (data_[byte] & mask) ? 1 : 0;
  }

  void write_bit(const BitRef& ref, int value) {
    if (ref.kind == BitRef::Kind::ResetScratch) {
      scratch_[ref.qubit] = value;
      return;
    }
    auto [byte, mask] = binary_.layout.bit_location(ref.slot);
    if (value) {
      data_[byte] |= mask;
    } else {
      data_[byte] &= static_cast<uint8_t>(~mask);
    }
  }

  void sync_all() {
    double latest = 0.0;
    for (double t : timelines_) latest = std::max(latest, t);
    for (auto& t : timelines_) t = latest;
  }

  const PatchedBinary& patched_;
  const ParametricBinary& binary_;
  const DeviceModel& device_;
  ResetMode mode_;
  Rng& rng_;
  QubitIndex index_;
  StateVector state_;
  std::vector<uint8_t> data_;
  std::vector<double> timelines_;
  std::unordered_map<uint32_t, const compiler::ResetCFG*> cfg_of_block_;
  std::unordered_map<const compiler::ResetCFG*, uint32_t> visits_;
  std::unordered_map<uint32_t, int> scratch_;
};

}  // namespace

ExecutionReport execute(const PatchedBinary& patched,
                        const DeviceModel& device, const ExecOptions& options) {
  if (options.shots == 0) {
    throw ExecutionError("execution requires at least one shot");
  }
  auto start = std::chrono::steady_clock::now();

  Rng rng(options.seed);
  ShotRunner runner(patched, device, options.reset_mode, rng);

  ExecutionReport report;
  report.shots.reserve(options.shots);
  double total = 0.0;
  for (uint64_t s = 0; s < options.shots; ++s) {
    ShotResult shot = runner.run();
    total += shot.simulated_duration;
    report.shots.push_back(std::move(shot));
  }

  report.step_overhead_s = device.step_overheads.per_step_without_compile();
  report.simulated_total_s = report.step_overhead_s + total;
  report.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

ExactResult exact_statevector(const PatchedBinary& patched) {
  const ParametricBinary& binary = patched.binary;
  QubitIndex index(binary, binary.used_qubits.empty()
                               ? 0
                               : binary.used_qubits.back() + 1);
  ExactResult result{StateVector(index.count), binary.used_qubits};

  uint32_t block_id = binary.main_entry;
  uint64_t transitions = 0;
  for (;;) {
    if (++transitions > kMaxTransitionsPerShot) {
      throw ExecutionError("malformed CFG: no reachable halt");
    }
    const BasicBlock& block = binary.blocks.at(block_id);
    for (const auto& instruction : block.instructions) {
      if (const auto* pulse = std::get_if<Pulse>(&instruction)) {
        result.state.apply_1q(index.dense(pulse->qubit),
                              compiler::rx_matrix(pulse->rx_multiple * kPi / 2));
      } else if (const auto* cz = std::get_if<CZPulse>(&instruction)) {
        result.state.apply_cz(index.dense(cz->a), index.dense(cz->b));
      } else if (const auto* sp = std::get_if<ShiftPhase>(&instruction)) {
        double theta = sp->literal;
        if (sp->has_slot) {
          uint64_t offset = binary.layout.element_offset(sp->slot);
          uint64_t bits = 0;
          for (int i = 0; i < 8; ++i) {
            bits |= static_cast<uint64_t>(patched.data_memory.at(offset + i))
                    << (8 * i);
          }
          theta = std::bit_cast<double>(bits);
        }
        result.state.apply_rz(index.dense(sp->qubit), theta);
      }
      // Captures are skipped: the exact path returns the pre-measurement
      // state.
    }
    if (block.terminator.kind == Terminator::Kind::Halt) break;
    if (block.terminator.kind != Terminator::Kind::Jump) {
      throw ExecutionError(
          "exact statevector requires a branch-free main body");
    }
    block_id = block.terminator.target;
  }
  return result;
}

std::string bits_to_string(const std::vector<uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace qcp::exec
