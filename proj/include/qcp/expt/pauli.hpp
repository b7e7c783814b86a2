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
#include <map>
#include <string>
#include <vector>

namespace qcp::expt {

/// A weighted multi-qubit Pauli product, e.g. "X0*Y1".
struct PauliObservable {
  std::map<uint32_t, char> ops;  // qubit -> 'X' | 'Y' | 'Z'
  double coefficient = 1.0;

  std::vector<uint32_t> support() const;
  char basis(uint32_t qubit) const;  // 'I' when the qubit is untouched

  /// Parses "X0*Y1" style strings (qubit indices after each letter).
  static PauliObservable parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const PauliObservable&,
                         const PauliObservable&) = default;
};

}  // namespace qcp::expt
