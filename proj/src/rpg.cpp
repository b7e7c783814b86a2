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

#include <numeric>

#include "qcp/bench/rpg.hpp"

namespace qcp::bench {

using quil::Gate;
using quil::GateArg;
using quil::GateName;
using quil::Measure;
using quil::MemoryKind;
using quil::Program;

namespace {

Gate gate1(GateName name, uint32_t q) {
  Gate g;
  g.name = name;
  g.qubits = {q};
  return g;
}

Gate gate2(GateName name, uint32_t a, uint32_t b) {
  Gate g;
  g.name = name;
  g.qubits = {a, b};
  return g;
}

Gate rot(GateName name, GateArg arg, uint32_t q) {
  Gate g;
  g.name = name;
  g.args = {arg};
  g.qubits = {q};
  return g;
}

}  // namespace

RPGSpec make_rpg_spec(uint32_t m, uint64_t seed) {
  if (m < 2) throw std::invalid_argument("RPG requires at least two qubits");
  RPGSpec spec;
  spec.m = m;
  spec.d = m;
  spec.seed = seed;
  Rng rng(seed);
  for (uint32_t layer = 0; layer < spec.d; ++layer) {
    std::vector<uint32_t> permutation(m);
    std::iota(permutation.begin(), permutation.end(), 0);
    for (uint32_t i = m - 1; i > 0; --i) {
      uint32_t j = static_cast<uint32_t>(rng.below(i + 1));
      std::swap(permutation[i], permutation[j]);
    }
    spec.permutations.push_back(std::move(permutation));
    std::vector<double> alphas(spec.gadgets_per_layer());
    for (auto& a : alphas) a = rng.uniform(-kPi, kPi);
    spec.alphas.push_back(std::move(alphas));
  }
  return spec;
}

void randomize_alphas(RPGSpec& spec, Rng& rng) {
  for (auto& layer : spec.alphas) {
    for (auto& a : layer) a = rng.uniform(-kPi, kPi);
  }
}

Program build_rpg_program(const RPGSpec& spec, bool parametric) {
  Program program;
  const uint32_t gadgets = spec.gadgets_per_layer();
  if (parametric) {
    program.declarations.push_back(
        {"alpha", MemoryKind::Real, spec.d * gadgets});
  }
  program.declarations.push_back({"ro", MemoryKind::Bit, spec.m});

  for (uint32_t i = 0; i < spec.d; ++i) {
    const auto& permutation = spec.permutations[i];
    for (uint32_t q = 0; q < spec.m; ++q) {
      program.body.emplace_back(gate1(GateName::H, q));
    }
    for (uint32_t j = 0; j < gadgets; ++j) {
      uint32_t a = permutation[2 * j];
      uint32_t b = permutation[2 * j + 1];
      GateArg arg = parametric
                        ? GateArg::mem("alpha", i * gadgets + j)
                        : GateArg::lit(spec.alphas[i][j]);
      program.body.emplace_back(gate2(GateName::CNOT, a, b));
      program.body.emplace_back(rot(GateName::RZ, arg, b));
      program.body.emplace_back(gate2(GateName::CNOT, a, b));
    }
  }
  for (uint32_t q = 0; q < spec.m; ++q) {
    program.body.emplace_back(Measure{q, {"ro", q}});
  }
  program.validate();
  return program;
}

GeneratedRPG generate_rpg(uint32_t m, uint64_t seed, bool parametric) {
  RPGSpec spec = make_rpg_spec(m, seed);
  return {build_rpg_program(spec, parametric), std::move(spec)};
}

Program ghz_line(uint32_t m) {
  if (m < 1) throw std::invalid_argument("GHZ_LINE requires a qubit");
  Program program;
  program.declarations.push_back({"ro", MemoryKind::Bit, m});
  program.body.emplace_back(gate1(GateName::H, 0));
  for (uint32_t q = 0; q + 1 < m; ++q) {
    program.body.emplace_back(gate2(GateName::CNOT, q, q + 1));
  }
  for (uint32_t q = 0; q < m; ++q) {
    program.body.emplace_back(Measure{q, {"ro", q}});
  }
  program.validate();
  return program;
}

Program maxcut_qaoa_complete(uint32_t m, bool parametric) {
  if (m < 2) {
    throw std::invalid_argument("MAXCUTQAOA_COMPLETE requires two qubits");
  }
  Program program;
  if (parametric) {
    program.declarations.push_back({"gamma", MemoryKind::Real, 1});
    program.declarations.push_back({"beta", MemoryKind::Real, 1});
  }
  program.declarations.push_back({"ro", MemoryKind::Bit, m});
  auto gamma_arg = parametric ? GateArg::mem("gamma", 0) : GateArg::lit(kPi / 2);
  auto beta_arg = parametric ? GateArg::mem("beta", 0) : GateArg::lit(kPi / 4);

  for (uint32_t q = 0; q < m; ++q) {
    program.body.emplace_back(gate1(GateName::H, q));
  }
  for (uint32_t i = 0; i < m; ++i) {
    for (uint32_t j = i + 1; j < m; ++j) {
      program.body.emplace_back(gate2(GateName::CNOT, i, j));
      program.body.emplace_back(rot(GateName::RZ, gamma_arg, j));
      program.body.emplace_back(gate2(GateName::CNOT, i, j));
    }
  }
  for (uint32_t q = 0; q < m; ++q) {
    program.body.emplace_back(rot(GateName::RX, beta_arg, q));
  }
  for (uint32_t q = 0; q < m; ++q) {
    program.body.emplace_back(Measure{q, {"ro", q}});
  }
  program.validate();
  return program;
}

}  // namespace qcp::bench
