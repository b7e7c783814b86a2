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
#include <array>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qcp/quil/ast.hpp"

namespace qcp::quil {
namespace {

// Literal angles that print as pi expressions. Values are computed with the
// exact arithmetic the parser uses, so recognition is bitwise and printing
// these forms round-trips exactly.
const std::vector<std::pair<double, const char*>>& pi_forms() {
  static const std::vector<std::pair<double, const char*>> forms = {
      {kPi, "pi"},
      {-kPi, "-pi"},
      {kPi / 2, "pi/2"},
      {-(kPi / 2), "-pi/2"},
      {kPi / 4, "pi/4"},
      {-(kPi / 4), "-pi/4"},
      {3 * kPi / 4, "3*pi/4"},
      {-(3 * kPi / 4), "-3*pi/4"},
      {2 * kPi, "2*pi"},
      {-(2 * kPi), "-2*pi"},
  };
  return forms;
}

std::string format_angle(double value) {
  for (const auto& [v, text] : pi_forms()) {
    if (value == v) return text;
  }
  return format_double(value);
}

[[noreturn]] void invalid(const std::string& message) {
  throw ParseError(message, SourcePos{0, 0});
}

}  // namespace

const char* to_string(MemoryKind kind) {
  switch (kind) {
    case MemoryKind::Bit:
      return "BIT";
    case MemoryKind::Octet:
      return "OCTET";
    case MemoryKind::Integer:
      return "INTEGER";
    case MemoryKind::Real:
      return "REAL";
  }
  return "?";
}

std::optional<MemoryKind> memory_kind_from_string(const std::string& name) {
  if (name == "BIT") return MemoryKind::Bit;
  if (name == "OCTET") return MemoryKind::Octet;
  if (name == "INTEGER") return MemoryKind::Integer;
  if (name == "REAL") return MemoryKind::Real;
  return std::nullopt;
}

int element_bits(MemoryKind kind) {
  switch (kind) {
    case MemoryKind::Bit:
      return 1;
    case MemoryKind::Octet:
      return 8;
    case MemoryKind::Integer:
    case MemoryKind::Real:
      return 64;
  }
  return 0;
}

const GateInfo& gate_info(GateName name) {
  static const std::array<GateInfo, 10> table = {{
      {"RX", 1, 1},
      {"RY", 1, 1},
      {"RZ", 1, 1},
      {"H", 0, 1},
      {"X", 0, 1},
      {"Y", 0, 1},
      {"Z", 0, 1},
      {"CNOT", 0, 2},
      {"CZ", 0, 2},
      {"SWAP", 0, 2},
  }};
  return table[static_cast<size_t>(name)];
}

std::optional<GateName> gate_from_string(const std::string& name) {
  static const std::unordered_map<std::string, GateName> table = {
      {"RX", GateName::RX}, {"RY", GateName::RY},     {"RZ", GateName::RZ},
      {"H", GateName::H},   {"X", GateName::X},       {"Y", GateName::Y},
      {"Z", GateName::Z},   {"CNOT", GateName::CNOT}, {"CZ", GateName::CZ},
      {"SWAP", GateName::SWAP}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const MemoryDeclaration* Program::find_declaration(
    const std::string& name) const {
  for (const auto& decl : declarations) {
    if (decl.name == name) return &decl;
  }
  return nullptr;
}

std::vector<uint32_t> Program::used_qubits() const {
  std::set<uint32_t> qubits;
  for (const auto& instruction : body) {
    if (const auto* gate = std::get_if<Gate>(&instruction)) {
      qubits.insert(gate->qubits.begin(), gate->qubits.end());
    } else if (const auto* measure = std::get_if<Measure>(&instruction)) {
      qubits.insert(measure->qubit);
    }
  }
  return {qubits.begin(), qubits.end()};
}

void Program::validate() const {
  std::unordered_map<std::string, const MemoryDeclaration*> regions;
  for (const auto& decl : declarations) {
    if (decl.length < 1) invalid("region '" + decl.name + "' has zero length");
    if (!regions.emplace(decl.name, &decl).second) {
      invalid("duplicate declaration of region '" + decl.name + "'");
    }
  }

  auto check_ref = [&](const MemRef& ref, MemoryKind want,
                       const char* context) {
    auto it = regions.find(ref.region);
    if (it == regions.end()) {
      invalid(std::string("undeclared memory region '") + ref.region +
              "' used as " + context);
    }
    if (it->second->kind != want) {
      invalid("region '" + ref.region + "' has kind " +
              to_string(it->second->kind) + " but " + context + " requires " +
              to_string(want));
    }
    if (ref.index >= it->second->length) {
      invalid("index " + std::to_string(ref.index) + " out of bounds for '" +
              ref.region + "[" + std::to_string(it->second->length) + "]'");
    }
  };

  std::unordered_map<std::string, int> labels;
  for (const auto& instruction : body) {
    if (const auto* label = std::get_if<Label>(&instruction)) {
      if (++labels[label->name] > 1) {
        invalid("label '" + label->name + "' defined more than once");
      }
    }
  }
  auto check_target = [&](const std::string& target) {
    if (labels.find(target) == labels.end()) {
      invalid("jump to undefined label '" + target + "'");
    }
  };

  for (const auto& instruction : body) {
    if (const auto* gate = std::get_if<Gate>(&instruction)) {
      const GateInfo& info = gate_info(gate->name);
      if (static_cast<int>(gate->args.size()) != info.num_params) {
        invalid(std::string(info.name) + " expects " +
                std::to_string(info.num_params) + " parameter(s)");
      }
      if (static_cast<int>(gate->qubits.size()) != info.num_qubits) {
        invalid(std::string(info.name) + " expects " +
                std::to_string(info.num_qubits) + " qubit(s)");
      }
      std::unordered_set<uint32_t> seen(gate->qubits.begin(),
                                        gate->qubits.end());
      if (seen.size() != gate->qubits.size()) {
        invalid(std::string(info.name) + " applied to duplicate qubits");
      }
      for (const auto& arg : gate->args) {
        if (!arg.is_literal()) {
          check_ref(arg.ref(), MemoryKind::Real, "a gate parameter");
        }
      }
    } else if (const auto* measure = std::get_if<Measure>(&instruction)) {
      check_ref(measure->target, MemoryKind::Bit, "a measurement target");
    } else if (const auto* jump = std::get_if<Jump>(&instruction)) {
      check_target(jump->target);
    } else if (const auto* jw = std::get_if<JumpWhen>(&instruction)) {
      check_target(jw->target);
      check_ref(jw->condition, MemoryKind::Bit, "a jump condition");
    } else if (const auto* ju = std::get_if<JumpUnless>(&instruction)) {
      check_target(ju->target);
      check_ref(ju->condition, MemoryKind::Bit, "a jump condition");
    }
  }
}

std::string to_text(const Instruction& instruction) {
  std::ostringstream out;
  if (const auto* gate = std::get_if<Gate>(&instruction)) {
    out << gate_info(gate->name).name;
    if (!gate->args.empty()) {
      out << '(';
      for (size_t i = 0; i < gate->args.size(); ++i) {
        if (i > 0) out << ", ";
        const GateArg& arg = gate->args[i];
        if (arg.is_literal()) {
          out << format_angle(arg.literal());
        } else {
          out << arg.ref().region << '[' << arg.ref().index << ']';
        }
      }
      out << ')';
    }
    for (uint32_t q : gate->qubits) out << ' ' << q;
  } else if (const auto* measure = std::get_if<Measure>(&instruction)) {
    out << "MEASURE " << measure->qubit << ' ' << measure->target.region << '['
        << measure->target.index << ']';
  } else if (const auto* label = std::get_if<Label>(&instruction)) {
    out << "LABEL @" << label->name;
  } else if (const auto* jump = std::get_if<Jump>(&instruction)) {
    out << "JUMP @" << jump->target;
  } else if (const auto* jw = std::get_if<JumpWhen>(&instruction)) {
    out << "JUMP-WHEN @" << jw->target << ' ' << jw->condition.region << '['
        << jw->condition.index << ']';
  } else if (const auto* ju = std::get_if<JumpUnless>(&instruction)) {
    out << "JUMP-UNLESS @" << ju->target << ' ' << ju->condition.region << '['
        << ju->condition.index << ']';
  } else {
    out << "HALT";
  }
  return out.str();
}

std::string to_text(const Program& program) {
  std::ostringstream out;
  bool first = true;
  auto line = [&](const std::string& text) {
    if (!first) out << '\n';
    out << text;
    first = false;
  };
  for (const auto& decl : program.declarations) {
    line("DECLARE " + decl.name + " " + to_string(decl.kind) + "[" +
         std::to_string(decl.length) + "]");
  }
  if (program.reset_requested) line("RESET");
  for (const auto& instruction : program.body) {
    line(to_text(instruction));
  }
  return out.str();
}

}  // namespace qcp::quil
