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

// Test-only oracles. The matrix simulator here is deliberately independent
// of the library's statevector kernels: gates are lifted to full 2^n x 2^n
// matrices and multiplied out.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcp/quil/ast.hpp"
#include "qcp/rng.hpp"

namespace oracle {

using qcp::cdouble;
using qcp::kPi;

struct CMatrix {
  uint32_t dim = 1;
  std::vector<cdouble> a;  // row-major

  static CMatrix identity(uint32_t dim) {
    CMatrix m;
    m.dim = dim;
    m.a.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});
    for (uint32_t i = 0; i < dim; ++i) m.a[static_cast<size_t>(i) * dim + i] = 1.0;
    return m;
  }

  cdouble& at(uint32_t r, uint32_t c) { return a[static_cast<size_t>(r) * dim + c]; }
  cdouble at(uint32_t r, uint32_t c) const {
    return a[static_cast<size_t>(r) * dim + c];
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix r = identity(x.dim);
    for (auto& v : r.a) v = 0.0;
    for (uint32_t i = 0; i < x.dim; ++i) {
      for (uint32_t k = 0; k < x.dim; ++k) {
        cdouble xik = x.at(i, k);
        if (xik == cdouble{0.0, 0.0}) continue;
        for (uint32_t j = 0; j < x.dim; ++j) {
          r.at(i, j) += xik * y.at(k, j);
        }
      }
    }
    return r;
  }

  std::vector<cdouble> apply(const std::vector<cdouble>& v) const {
    std::vector<cdouble> out(dim, cdouble{0.0, 0.0});
    for (uint32_t i = 0; i < dim; ++i) {
      for (uint32_t j = 0; j < dim; ++j) {
        out[i] += at(i, j) * v[j];
      }
    }
    return out;
  }
};

// Single-qubit gate matrices written out from their definitions.
inline std::vector<cdouble> gate_2x2(const std::string& name, double theta) {
  const cdouble i{0.0, 1.0};
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  if (name == "RX") return {c, -i * s, -i * s, c};
  if (name == "RY") return {c, -s, s, c};
  if (name == "RZ") return {std::exp(-i * (theta / 2)), 0.0, 0.0, std::exp(i * (theta / 2))};
  if (name == "H") {
    double r = 1.0 / std::sqrt(2.0);
    return {r, r, r, -r};
  }
  if (name == "X") return {0.0, 1.0, 1.0, 0.0};
  if (name == "Y") return {0.0, -i, i, 0.0};
  if (name == "Z") return {1.0, 0.0, 0.0, -1.0};
  throw std::runtime_error("oracle: unknown 1q gate " + name);
}

inline CMatrix lift_1q(uint32_t n, uint32_t q, const std::vector<cdouble>& u) {
  CMatrix m = CMatrix::identity(1u << n);
  for (auto& v : m.a) v = 0.0;
  uint32_t bit = 1u << q;
  for (uint32_t j = 0; j < m.dim; ++j) {
    uint32_t b = (j & bit) ? 1 : 0;
    for (uint32_t bp = 0; bp < 2; ++bp) {
      uint32_t jp = (j & ~bit) | (bp ? bit : 0);
      m.at(jp, j) += u[bp * 2 + b];
    }
  }
  return m;
}

inline CMatrix lift_cnot(uint32_t n, uint32_t control, uint32_t target) {
  CMatrix m = CMatrix::identity(1u << n);
  for (auto& v : m.a) v = 0.0;
  for (uint32_t j = 0; j < m.dim; ++j) {
    uint32_t jp = (j & (1u << control)) ? (j ^ (1u << target)) : j;
    m.at(jp, j) = 1.0;
  }
  return m;
}

inline CMatrix lift_cz(uint32_t n, uint32_t a, uint32_t b) {
  CMatrix m = CMatrix::identity(1u << n);
  uint32_t mask = (1u << a) | (1u << b);
  for (uint32_t j = 0; j < m.dim; ++j) {
    if ((j & mask) == mask) m.at(j, j) = -1.0;
  }
  return m;
}

inline CMatrix lift_swap(uint32_t n, uint32_t a, uint32_t b) {
  CMatrix m = CMatrix::identity(1u << n);
  for (auto& v : m.a) v = 0.0;
  for (uint32_t j = 0; j < m.dim; ++j) {
    uint32_t ba = (j >> a) & 1, bb = (j >> b) & 1;
    uint32_t jp = (j & ~((1u << a) | (1u << b))) | (bb << a) | (ba << b);
    m.at(jp, j) = 1.0;
  }
  return m;
}

/// Full unitary of a branch-free literal-argument program over n qubits.
inline CMatrix program_unitary(const qcp::quil::Program& program, uint32_t n) {
  using namespace qcp::quil;
  CMatrix full = CMatrix::identity(1u << n);
  for (const auto& instruction : program.body) {
    const auto& gate = std::get<Gate>(instruction);
    const char* name = gate_info(gate.name).name;
    CMatrix g = CMatrix::identity(1u << n);
    if (gate.name == GateName::CNOT) {
      g = lift_cnot(n, gate.qubits[0], gate.qubits[1]);
    } else if (gate.name == GateName::CZ) {
      g = lift_cz(n, gate.qubits[0], gate.qubits[1]);
    } else if (gate.name == GateName::SWAP) {
      g = lift_swap(n, gate.qubits[0], gate.qubits[1]);
    } else {
      double theta = gate.args.empty() ? 0.0 : gate.args[0].literal();
      g = lift_1q(n, gate.qubits[0], gate_2x2(name, theta));
    }
    full = g * full;
  }
  return full;
}

/// Statevector from |0...0> via the matrix oracle.
inline std::vector<cdouble> oracle_statevector(const qcp::quil::Program& program,
                                               uint32_t n) {
  std::vector<cdouble> v(1u << n, cdouble{0.0, 0.0});
  v[0] = 1.0;
  return program_unitary(program, n).apply(v);
}

/// Max amplitude difference after aligning global phase on the largest
/// amplitude of `b`.
inline double statevector_distance(const std::vector<cdouble>& a,
                                   const std::vector<cdouble>& b) {
  if (a.size() != b.size()) return 1e300;
  size_t ref = 0;
  double best = -1.0;
  for (size_t i = 0; i < b.size(); ++i) {
    if (std::abs(b[i]) > best) {
      best = std::abs(b[i]);
      ref = i;
    }
  }
  if (best < 1e-300) return 1e300;
  cdouble phase = a[ref] / b[ref];
  double norm = std::abs(phase);
  if (norm < 1e-300) return 1e300;
  phase /= norm;
  double dist = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dist = std::max(dist, std::abs(a[i] - phase * b[i]));
  }
  return dist;
}

/// Permute statevector amplitudes: qubit q of the input moves to
/// perm[q] of the output.
inline std::vector<cdouble> permute_statevector(const std::vector<cdouble>& v,
                                                const std::vector<uint32_t>& perm,
                                                uint32_t n) {
  std::vector<cdouble> out(v.size(), cdouble{0.0, 0.0});
  for (uint32_t j = 0; j < v.size(); ++j) {
    uint32_t jp = 0;
    for (uint32_t q = 0; q < n; ++q) {
      if (j & (1u << q)) jp |= 1u << perm[q];
    }
    out[jp] = v[j];
  }
  return out;
}

/// true if |observed - expected| <= 3 * sqrt(p(1-p)/n) for a frequency.
inline bool within_3sigma(double observed_freq, double p, uint64_t n) {
  double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / n);
  return std::abs(observed_freq - p) <= 3.0 * sigma;
}

/// Random branch-free program on <= max_qubits qubits. With
/// `parametric_regions` > 0, some rotation arguments reference REAL
/// regions p0, p1, ... (each of length 2).
inline qcp::quil::Program random_program(qcp::Rng& rng, uint32_t max_qubits,
                                         uint32_t max_gates,
                                         uint32_t parametric_regions) {
  using namespace qcp::quil;
  Program program;
  for (uint32_t r = 0; r < parametric_regions; ++r) {
    program.declarations.push_back(
        {"p" + std::to_string(r), MemoryKind::Real, 2});
  }
  uint32_t nq = 1 + static_cast<uint32_t>(rng.below(max_qubits));
  uint32_t ngates = 1 + static_cast<uint32_t>(rng.below(max_gates));
  for (uint32_t i = 0; i < ngates; ++i) {
    Gate gate;
    int choice = static_cast<int>(rng.below(nq >= 2 ? 10 : 7));
    static const GateName names[10] = {
        GateName::RX, GateName::RY, GateName::RZ,  GateName::H,
        GateName::X,  GateName::Y,  GateName::Z,   GateName::CNOT,
        GateName::CZ, GateName::SWAP};
    gate.name = names[choice];
    const GateInfo& info = gate_info(gate.name);
    uint32_t a = static_cast<uint32_t>(rng.below(nq));
    if (info.num_qubits == 1) {
      gate.qubits = {a};
    } else {
      uint32_t b = static_cast<uint32_t>(rng.below(nq - 1));
      if (b >= a) ++b;
      gate.qubits = {a, b};
    }
    if (info.num_params == 1) {
      if (parametric_regions > 0 && rng.below(3) == 0) {
        gate.args = {GateArg::mem(
            "p" + std::to_string(rng.below(parametric_regions)),
            static_cast<uint32_t>(rng.below(2)))};
      } else {
        gate.args = {GateArg::lit(rng.uniform(-kPi, kPi))};
      }
    }
    program.body.emplace_back(std::move(gate));
  }
  return program;
}

}  // namespace oracle
