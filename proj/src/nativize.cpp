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
#include <deque>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "qcp/compiler/euler.hpp"
#include "qcp/compiler/nativize.hpp"

namespace qcp::compiler {
namespace {

using quil::Gate;
using quil::GateArg;
using quil::GateName;
using quil::Instruction;
using quil::Measure;
using quil::Program;

bool is_control_flow(const Instruction& instruction) {
  return std::holds_alternative<quil::Label>(instruction) ||
         std::holds_alternative<quil::Jump>(instruction) ||
         std::holds_alternative<quil::JumpWhen>(instruction) ||
         std::holds_alternative<quil::JumpUnless>(instruction) ||
         std::holds_alternative<quil::Halt>(instruction);
}

std::vector<uint32_t> shortest_path(const DeviceModel& device, uint32_t from,
                                    uint32_t to) {
  std::vector<std::vector<uint32_t>> adjacency(device.qubit_count);
  for (const auto& [a, b] : device.topology) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& neighbors : adjacency) std::sort(neighbors.begin(), neighbors.end());

  std::vector<int64_t> parent(device.qubit_count, -1);
  std::deque<uint32_t> frontier{from};
  std::vector<bool> seen(device.qubit_count, false);
  seen[from] = true;
  while (!frontier.empty()) {
    uint32_t q = frontier.front();
    frontier.pop_front();
    if (q == to) break;
    for (uint32_t n : adjacency[q]) {
      if (!seen[n]) {
        seen[n] = true;
        parent[n] = q;
        frontier.push_back(n);
      }
    }
  }
  if (!seen[to]) {
    throw CompileError("unroutable program: no path between qubits " +
                       std::to_string(from) + " and " + std::to_string(to));
  }
  std::vector<uint32_t> path{to};
  while (path.back() != from) {
    path.push_back(static_cast<uint32_t>(parent[path.back()]));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Routing: relabel onto physical qubits, inserting SWAP chains so every
// two-qubit gate lands on a topology edge. The mapping is restored to
// identity before any control-flow instruction so that jump targets always
// observe the same layout.
struct Router {
  const DeviceModel& device;
  std::vector<uint32_t> log_to_phys;
  std::vector<uint32_t> phys_to_log;
  std::vector<std::pair<uint32_t, uint32_t>> applied_swaps;
  std::vector<Instruction> out;

  explicit Router(const DeviceModel& dev) : device(dev) {
    log_to_phys.resize(dev.qubit_count);
    std::iota(log_to_phys.begin(), log_to_phys.end(), 0);
    phys_to_log = log_to_phys;
  }

  void swap_physical(uint32_t a, uint32_t b, bool record) {
    Gate swap;
    swap.name = GateName::SWAP;
    swap.qubits = {a, b};
    out.emplace_back(std::move(swap));
    std::swap(phys_to_log[a], phys_to_log[b]);
    log_to_phys[phys_to_log[a]] = a;
    log_to_phys[phys_to_log[b]] = b;
    if (record) applied_swaps.emplace_back(a, b);
  }

  void restore_identity() {
    while (!applied_swaps.empty()) {
      auto [a, b] = applied_swaps.back();
      applied_swaps.pop_back();
      swap_physical(a, b, false);
    }
  }

  void route(const Program& program) {
    for (const auto& instruction : program.body) {
      if (is_control_flow(instruction)) {
        restore_identity();
        out.push_back(instruction);
        continue;
      }
      if (const auto* measure = std::get_if<Measure>(&instruction)) {
        Measure m = *measure;
        m.qubit = log_to_phys[m.qubit];
        out.emplace_back(m);
        continue;
      }
      const auto& gate = std::get<Gate>(instruction);
      if (gate.qubits.size() == 1) {
        Gate g = gate;
        g.qubits[0] = log_to_phys[g.qubits[0]];
        out.emplace_back(std::move(g));
        continue;
      }
      uint32_t pa = log_to_phys[gate.qubits[0]];
      uint32_t pb = log_to_phys[gate.qubits[1]];
      if (!device.has_edge(pa, pb)) {
        auto path = shortest_path(device, pa, pb);
        // Walk the first endpoint down the path until adjacent.
        for (size_t i = 0; i + 2 < path.size(); ++i) {
          swap_physical(path[i], path[i + 1], true);
        }
        pa = path[path.size() - 2];
      }
      Gate g = gate;
      g.qubits = {pa, pb};
      out.emplace_back(std::move(g));
    }
  }
};

bool is_native_rx_multiple(double theta) {
  double c = canonical_angle(theta);
  return c == kPi || c == kPi / 2 || c == -kPi / 2;
}

class Emitter {
 public:
  explicit Emitter(const DeviceModel& device) : device_(device) {}

  std::vector<Instruction> take() {
    flush_all();
    return std::move(out_);
  }

  void add(const Instruction& instruction) {
    if (is_control_flow(instruction)) {
      flush_all();
      out_.push_back(instruction);
      return;
    }
    if (const auto* measure = std::get_if<Measure>(&instruction)) {
      flush(measure->qubit);
      out_.push_back(instruction);
      return;
    }
    add_gate(std::get<Gate>(instruction));
  }

 private:
  void add_gate(const Gate& gate) {
    switch (gate.name) {
      case GateName::RZ:
        if (gate.args[0].is_literal()) {
          pending_rz(gate.qubits[0], gate.args[0].literal());
        } else {
          // Symbolic frame update: passes through accumulating literals
          // (everything here is diagonal and commutes exactly).
          out_.emplace_back(gate);
        }
        return;
      case GateName::RX:
        if (!gate.args[0].is_literal()) {
          // RX(theta) = H RZ(theta) H carries the reference as a pure
          // frame update between fixed pulses.
          emit_h(gate.qubits[0]);
          out_.emplace_back(gate_rz_ref(gate.qubits[0], gate.args[0].ref()));
          emit_h(gate.qubits[0]);
          return;
        }
        if (is_native_rx_multiple(gate.args[0].literal())) {
          emit_rx(gate.qubits[0], canonical_angle(gate.args[0].literal()));
          return;
        }
        if (canonical_angle(gate.args[0].literal()) == 0.0) return;
        emit_1q_unitary(gate.qubits[0],
                        rx_matrix(gate.args[0].literal()));
        return;
      case GateName::RY:
        if (!gate.args[0].is_literal()) {
          // RY(theta) = RX(-pi/2) RZ(theta) RX(pi/2), reference carried
          // as a frame update.
          emit_rx(gate.qubits[0], kPi / 2);
          out_.emplace_back(gate_rz_ref(gate.qubits[0], gate.args[0].ref()));
          emit_rx(gate.qubits[0], -kPi / 2);
          return;
        }
        emit_1q_unitary(gate.qubits[0], ry_matrix(gate.args[0].literal()));
        return;
      case GateName::H:
        emit_h(gate.qubits[0]);
        return;
      case GateName::X:
        emit_1q_unitary(gate.qubits[0], x_matrix());
        return;
      case GateName::Y:
        emit_1q_unitary(gate.qubits[0], y_matrix());
        return;
      case GateName::Z:
        pending_rz(gate.qubits[0], kPi);
        return;
      case GateName::CZ:
        check_edge(gate.qubits[0], gate.qubits[1]);
        flush(gate.qubits[0]);
        flush(gate.qubits[1]);
        out_.emplace_back(gate);
        return;
      case GateName::CNOT:
        // H-conjugated CZ on the target.
        emit_h(gate.qubits[1]);
        add_gate(make_cz(gate.qubits[0], gate.qubits[1]));
        emit_h(gate.qubits[1]);
        return;
      case GateName::SWAP:
        add_gate(make_cnot(gate.qubits[0], gate.qubits[1]));
        add_gate(make_cnot(gate.qubits[1], gate.qubits[0]));
        add_gate(make_cnot(gate.qubits[0], gate.qubits[1]));
        return;
    }
    throw CompileError("gate cannot be nativized");
  }

  static Gate make_cz(uint32_t a, uint32_t b) {
    Gate g;
    g.name = GateName::CZ;
    g.qubits = {a, b};
    return g;
  }

  static Gate make_cnot(uint32_t a, uint32_t b) {
    Gate g;
    g.name = GateName::CNOT;
    g.qubits = {a, b};
    return g;
  }

  static Instruction gate_rz_ref(uint32_t qubit, const quil::MemRef& ref) {
    Gate g;
    g.name = GateName::RZ;
    g.args = {GateArg{ref}};
    g.qubits = {qubit};
    return g;
  }

  void check_edge(uint32_t a, uint32_t b) const {
    if (!device_.has_edge(a, b)) {
      throw CompileError("two-qubit gate on non-adjacent qubits " +
                         std::to_string(a) + ", " + std::to_string(b));
    }
  }

  // Euler-based emission with the minimal pulse count for each beta class.
  void emit_1q_unitary(uint32_t qubit, const Mat2& u) {
    EulerAngles e = euler_decompose(u);
    const double beta = e.beta;
    if (beta == 0.0) {
      pending_rz(qubit, e.alpha + e.gamma);
      return;
    }
    if (beta == kPi) {
      pending_rz(qubit, e.alpha - e.gamma - kPi);
      emit_rx(qubit, kPi);
      return;
    }
    if (beta == kPi / 2 || beta == -kPi / 2) {
      pending_rz(qubit, e.alpha - kPi / 2);
      emit_rx(qubit, beta);
      pending_rz(qubit, e.gamma + kPi / 2);
      return;
    }
    pending_rz(qubit, e.alpha);
    emit_rx(qubit, kPi / 2);
    pending_rz(qubit, e.beta + kPi);
    emit_rx(qubit, kPi / 2);
    pending_rz(qubit, e.gamma + kPi);
  }

  void emit_h(uint32_t qubit) {
    pending_rz(qubit, kPi / 2);
    emit_rx(qubit, kPi / 2);
    pending_rz(qubit, kPi / 2);
  }

  void emit_rx(uint32_t qubit, double theta) {
    flush(qubit);
    Gate g;
    g.name = GateName::RX;
    g.args = {GateArg::lit(canonical_angle(theta))};
    g.qubits = {qubit};
    out_.emplace_back(std::move(g));
  }

  void pending_rz(uint32_t qubit, double theta) { pending_[qubit] += theta; }

  void flush(uint32_t qubit) {
    auto it = pending_.find(qubit);
    if (it == pending_.end()) return;
    double angle = canonical_angle(it->second);
    pending_.erase(it);
    if (angle == 0.0) return;
    Gate g;
    g.name = GateName::RZ;
    g.args = {GateArg::lit(angle)};
    g.qubits = {qubit};
    out_.emplace_back(std::move(g));
  }

  void flush_all() {
    std::vector<uint32_t> qubits;
    qubits.reserve(pending_.size());
    for (const auto& [q, _] : pending_) qubits.push_back(q);
    std::sort(qubits.begin(), qubits.end());
    for (uint32_t q : qubits) flush(q);
  }

  const DeviceModel& device_;
  std::vector<Instruction> out_;
  std::unordered_map<uint32_t, double> pending_;
};

}  // namespace

NativizeResult nativize_full(const Program& program,
                             const DeviceModel& device) {
  program.validate();
  for (uint32_t q : program.used_qubits()) {
    if (q >= device.qubit_count) {
      throw CompileError("program uses qubit " + std::to_string(q) +
                         " but the device has only " +
                         std::to_string(device.qubit_count));
    }
  }

  Router router(device);
  router.route(program);

  Emitter emitter(device);
  for (const auto& instruction : router.out) emitter.add(instruction);

  NativizeResult result;
  result.program.declarations = program.declarations;
  result.program.reset_requested = program.reset_requested;
  result.program.body = emitter.take();
  result.logical_to_physical = router.log_to_phys;
  result.program.validate();
  return result;
}

}  // namespace qcp::compiler
