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

#include <sstream>
#include <stdexcept>

#include "qcp/expt/pauli.hpp"

namespace qcp::expt {

std::vector<uint32_t> PauliObservable::support() const {
  std::vector<uint32_t> qubits;
  qubits.reserve(ops.size());
  for (const auto& [q, _] : ops) qubits.push_back(q);
  return qubits;
}

char PauliObservable::basis(uint32_t qubit) const {
  auto it = ops.find(qubit);
  return it == ops.end() ? 'I' : it->second;
}

PauliObservable PauliObservable::parse(const std::string& text) {
  PauliObservable observable;
  size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_space();
  bool first = true;
  while (pos < text.size()) {
    if (!first) {
      if (text[pos] != '*') {
        throw std::invalid_argument("pauli string: expected '*' in '" + text +
                                    "'");
      }
      ++pos;
      skip_space();
    }
    first = false;
    if (pos >= text.size()) {
      throw std::invalid_argument("pauli string: trailing '*' in '" + text +
                                  "'");
    }
    char op = text[pos];
    if (op != 'X' && op != 'Y' && op != 'Z') {
      throw std::invalid_argument(
          "pauli string: expected X, Y, or Z in '" + text + "'");
    }
    ++pos;
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (start == pos) {
      throw std::invalid_argument("pauli string: missing qubit index in '" +
                                  text + "'");
    }
    uint32_t qubit = static_cast<uint32_t>(std::stoul(text.substr(start, pos - start)));
    if (!observable.ops.emplace(qubit, op).second) {
      throw std::invalid_argument("pauli string: qubit " +
                                  std::to_string(qubit) + " repeats in '" +
                                  text + "'");
    }
    skip_space();
  }
  if (observable.ops.empty()) {
    throw std::invalid_argument("pauli string: empty observable");
  }
  return observable;
}

std::string PauliObservable::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [q, op] : ops) {
    if (!first) out << '*';
    out << op << q;
    first = false;
  }
  return out.str();
}

}  // namespace qcp::expt
