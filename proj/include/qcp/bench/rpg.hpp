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
#include <vector>

#include "qcp/quil/ast.hpp"
#include "qcp/rng.hpp"

namespace qcp::bench {

/// The random-phase-gadget volumetric circuit family. Layer i applies a
/// random permutation pi_i, a layer of Hadamards on all qubits, then a
/// phase gadget CNOT . RZ(alpha_{i,j}) . CNOT on each adjacent pair
/// (pi_i(2j), pi_i(2j+1)) of the permuted labels. With odd m the bottom
/// qubit of each permuted layer gets no gadget.
struct RPGSpec {
  uint32_t m = 2;
  uint32_t d = 2;  // layers (= m by default)
  std::vector<std::vector<uint32_t>> permutations;  // d of m
  std::vector<std::vector<double>> alphas;          // d of floor(m/2)
  uint64_t seed = 0;

  uint32_t gadgets_per_layer() const { return m / 2; }
};

RPGSpec make_rpg_spec(uint32_t m, uint64_t seed);

/// Redraw every alpha in (-pi, pi], as done between benchmark runs.
void randomize_alphas(RPGSpec& spec, Rng& rng);

/// Builds the circuit. Parametric: alphas become references into a single
/// REAL region `alpha` of length d*floor(m/2), slot i*floor(m/2)+j.
quil::Program build_rpg_program(const RPGSpec& spec, bool parametric);

struct GeneratedRPG {
  quil::Program program;
  RPGSpec spec;
};

/// Deterministic for a fixed (m, seed, parametric) triple. m must be >= 2.
GeneratedRPG generate_rpg(uint32_t m, uint64_t seed, bool parametric);

/// Straight-line GHZ preparation on m qubits (program family GHZ_LINE).
quil::Program ghz_line(uint32_t m);

/// p=1 Max-Cut QAOA on the complete graph over m qubits (program family
/// MAXCUTQAOA_COMPLETE). Parametric form defers beta/gamma to run time.
quil::Program maxcut_qaoa_complete(uint32_t m, bool parametric);

}  // namespace qcp::bench
