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

#include <bit>
#include <cmath>

#include "qcp/exec/statevector.hpp"

namespace qcp::exec {

using compiler::Mat2;

StateVector::StateVector(uint32_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > 26) {
    throw ExecutionError("statevector limited to 26 qubits");
  }
  amps_.assign(uint64_t{1} << num_qubits, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::set_basis_state(uint64_t index) {
  std::fill(amps_.begin(), amps_.end(), cdouble{0.0, 0.0});
  amps_.at(index) = 1.0;
}

void StateVector::apply_1q(uint32_t qubit, const Mat2& u) {
  const uint64_t bit = uint64_t{1} << qubit;
  for (uint64_t base = 0; base < amps_.size(); ++base) {
    if (base & bit) continue;
    cdouble a0 = amps_[base];
    cdouble a1 = amps_[base | bit];
    amps_[base] = u.m[0][0] * a0 + u.m[0][1] * a1;
    amps_[base | bit] = u.m[1][0] * a0 + u.m[1][1] * a1;
  }
}

void StateVector::apply_rz(uint32_t qubit, double theta) {
  const uint64_t bit = uint64_t{1} << qubit;
  const cdouble p0 = std::exp(cdouble{0.0, -theta / 2});
  const cdouble p1 = std::exp(cdouble{0.0, theta / 2});
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    amps_[i] *= (i & bit) ? p1 : p0;
  }
}

void StateVector::apply_cz(uint32_t a, uint32_t b) {
  const uint64_t mask = (uint64_t{1} << a) | (uint64_t{1} << b);
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_cnot(uint32_t control, uint32_t target) {
  const uint64_t cbit = uint64_t{1} << control;
  const uint64_t tbit = uint64_t{1} << target;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amps_[i], amps_[i | tbit]);
    }
  }
}

void StateVector::apply_swap(uint32_t a, uint32_t b) {
  const uint64_t abit = uint64_t{1} << a;
  const uint64_t bbit = uint64_t{1} << b;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    bool has_a = i & abit;
    bool has_b = i & bbit;
    if (has_a && !has_b) {
      std::swap(amps_[i], amps_[(i ^ abit) | bbit]);
    }
  }
}

double StateVector::prob_one(uint32_t qubit) const {
  const uint64_t bit = uint64_t{1} << qubit;
  double p = 0.0;
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

int StateVector::measure_collapse(uint32_t qubit, double random01) {
  double p1 = prob_one(qubit);
  int outcome = (random01 < p1) ? 1 : 0;
  const uint64_t bit = uint64_t{1} << qubit;
  double keep = outcome ? p1 : 1.0 - p1;
  if (keep <= 0.0) {
    throw ExecutionError("measurement collapse onto zero-probability branch");
  }
  double scale = 1.0 / std::sqrt(keep);
  for (uint64_t i = 0; i < amps_.size(); ++i) {
    bool one = (i & bit) != 0;
    if (one == (outcome == 1)) {
      amps_[i] *= scale;
    } else {
      amps_[i] = 0.0;
    }
  }
  return outcome;
}

double StateVector::norm() const {
  double n = 0.0;
  for (const auto& a : amps_) n += std::norm(a);
  return std::sqrt(n);
}

std::vector<cdouble> simulate_statevector(const quil::Program& program) {
  program.validate();
  uint32_t num_qubits = 0;
  auto used = program.used_qubits();
  if (!used.empty()) num_qubits = used.back() + 1;
  if (num_qubits > 20) {
    throw ExecutionError("simulate_statevector supports at most 20 qubits");
  }

  StateVector state(num_qubits);
  for (const auto& instruction : program.body) {
    const auto* gate = std::get_if<quil::Gate>(&instruction);
    if (gate == nullptr) {
      throw ExecutionError(
          "simulate_statevector: program must be measurement- and "
          "branch-free");
    }
    for (const auto& arg : gate->args) {
      if (!arg.is_literal()) {
        throw ExecutionError(
            "simulate_statevector: gate arguments must be literal");
      }
    }
    using quil::GateName;
    auto angle = [&] { return gate->args[0].literal(); };
    switch (gate->name) {
      case GateName::RX:
        state.apply_1q(gate->qubits[0], compiler::rx_matrix(angle()));
        break;
      case GateName::RY:
        state.apply_1q(gate->qubits[0], compiler::ry_matrix(angle()));
        break;
      case GateName::RZ:
        state.apply_rz(gate->qubits[0], angle());
        break;
      case GateName::H:
        state.apply_1q(gate->qubits[0], compiler::h_matrix());
        break;
      case GateName::X:
        state.apply_1q(gate->qubits[0], compiler::x_matrix());
        break;
      case GateName::Y:
        state.apply_1q(gate->qubits[0], compiler::y_matrix());
        break;
      case GateName::Z:
        state.apply_1q(gate->qubits[0], compiler::z_matrix());
        break;
      case GateName::CNOT:
        state.apply_cnot(gate->qubits[0], gate->qubits[1]);
        break;
      case GateName::CZ:
        state.apply_cz(gate->qubits[0], gate->qubits[1]);
        break;
      case GateName::SWAP:
        state.apply_swap(gate->qubits[0], gate->qubits[1]);
        break;
    }
  }
  return state.amplitudes();
}

double z_product_expectation(const StateVector& state,
                             const std::vector<uint32_t>& qubits) {
  uint64_t mask = 0;
  for (uint32_t q : qubits) mask |= uint64_t{1} << q;
  double expectation = 0.0;
  const auto& amps = state.amplitudes();
  for (uint64_t i = 0; i < amps.size(); ++i) {
    double p = std::norm(amps[i]);
    int parity = std::popcount(i & mask) & 1;
    expectation += parity ? -p : p;
  }
  return expectation;
}

}  // namespace qcp::exec
