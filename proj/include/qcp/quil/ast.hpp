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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcp/common.hpp"

namespace qcp::quil {

enum class MemoryKind : uint8_t { Bit, Octet, Integer, Real };

const char* to_string(MemoryKind kind);
std::optional<MemoryKind> memory_kind_from_string(const std::string& name);

/// Element size in bits when laid out in data memory.
int element_bits(MemoryKind kind);

struct MemoryDeclaration {
  std::string name;
  MemoryKind kind = MemoryKind::Bit;
  uint32_t length = 1;

  friend bool operator==(const MemoryDeclaration&,
                         const MemoryDeclaration&) = default;
};

/// Reference to one element of a declared memory region, e.g. `beta[0]`.
struct MemRef {
  std::string region;
  uint32_t index = 0;

  friend bool operator==(const MemRef&, const MemRef&) = default;
};

/// Gate argument: a literal angle in radians or a memory reference.
struct GateArg {
  std::variant<double, MemRef> value;

  bool is_literal() const { return std::holds_alternative<double>(value); }
  double literal() const { return std::get<double>(value); }
  const MemRef& ref() const { return std::get<MemRef>(value); }

  static GateArg lit(double v) { return GateArg{v}; }
  static GateArg mem(std::string region, uint32_t index) {
    return GateArg{MemRef{std::move(region), index}};
  }

  friend bool operator==(const GateArg&, const GateArg&) = default;
};

enum class GateName : uint8_t { RX, RY, RZ, H, X, Y, Z, CNOT, CZ, SWAP };

struct GateInfo {
  const char* name;
  int num_params;
  int num_qubits;
};

const GateInfo& gate_info(GateName name);
std::optional<GateName> gate_from_string(const std::string& name);

struct Gate {
  GateName name = GateName::H;
  std::vector<GateArg> args;
  std::vector<uint32_t> qubits;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Measure {
  uint32_t qubit = 0;
  MemRef target;

  friend bool operator==(const Measure&, const Measure&) = default;
};

struct Label {
  std::string name;

  friend bool operator==(const Label&, const Label&) = default;
};

struct Jump {
  std::string target;

  friend bool operator==(const Jump&, const Jump&) = default;
};

struct JumpWhen {
  std::string target;
  MemRef condition;

  friend bool operator==(const JumpWhen&, const JumpWhen&) = default;
};

struct JumpUnless {
  std::string target;
  MemRef condition;

  friend bool operator==(const JumpUnless&, const JumpUnless&) = default;
};

struct Halt {
  friend bool operator==(const Halt&, const Halt&) = default;
};

using Instruction =
    std::variant<Gate, Measure, Label, Jump, JumpWhen, JumpUnless, Halt>;

struct Program {
  std::vector<MemoryDeclaration> declarations;
  bool reset_requested = false;
  std::vector<Instruction> body;

  const MemoryDeclaration* find_declaration(const std::string& name) const;

  /// Throws ParseError (with a zero position) on any violated invariant:
  /// dangling references, duplicate labels, arity mismatches, and so on.
  void validate() const;

  /// Qubit indices mentioned by any instruction, sorted ascending.
  std::vector<uint32_t> used_qubits() const;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Canonical text form. parse(to_text(p)) is structurally equal to p.
std::string to_text(const Program& program);
std::string to_text(const Instruction& instruction);

/// Parses canonical or hand-written source; throws ParseError with
/// line/column on malformed input. Validation runs on the result.
Program parse(const std::string& source);

}  // namespace qcp::quil
