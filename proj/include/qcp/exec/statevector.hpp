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

#include "qcp/common.hpp"
#include "qcp/compiler/euler.hpp"
#include "qcp/quil/ast.hpp"

namespace qcp::exec {

/// Dense statevector over n qubits. Qubit q is bit q of the amplitude
/// index (qubit 0 is the least significant bit).
class StateVector {
 public:
  explicit StateVector(uint32_t num_qubits);

  uint32_t num_qubits() const { return num_qubits_; }
  const std::vector<cdouble>& amplitudes() const { return amps_; }

  void set_basis_state(uint64_t index);

  void apply_1q(uint32_t qubit, const compiler::Mat2& u);
  void apply_rz(uint32_t qubit, double theta);
  void apply_cz(uint32_t a, uint32_t b);
  void apply_cnot(uint32_t control, uint32_t target);
  void apply_swap(uint32_t a, uint32_t b);

  double prob_one(uint32_t qubit) const;

  /// Projective Z measurement: collapses, renormalizes, and returns the
  /// outcome. `random01` supplies the uniform variate.
  int measure_collapse(uint32_t qubit, double random01);

  double norm() const;

 private:
  uint32_t num_qubits_;
  std::vector<cdouble> amps_;
};

/// Exact statevector of a branch-free, measurement-free program with
/// literal gate arguments; at most 20 qubits. The vector spans qubits
/// 0..max_used (2^n amplitudes). This is the oracle backend used to check
/// compiled execution paths.
std::vector<cdouble> simulate_statevector(const quil::Program& program);

/// <prod Z_q> over the given (dense) qubits of a state.
double z_product_expectation(const StateVector& state,
                             const std::vector<uint32_t>& qubits);

}  // namespace qcp::exec
