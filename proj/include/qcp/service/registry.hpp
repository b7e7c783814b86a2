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

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qcp/compiler/binary.hpp"

namespace qcp::service {

/// Hex SHA-256 digest.
std::string sha256_hex(const std::vector<uint8_t>& bytes);

/// Content-addressed store of serialized parametric binaries. Insertion
/// is idempotent: identical content always maps to the identical id, and
/// an id always dereferences to the bytes that produced it.
class BinaryRegistry {
 public:
  std::string store(const compiler::ParametricBinary& binary);
  std::optional<std::vector<uint8_t>> lookup_bytes(const std::string& id) const;
  std::optional<compiler::ParametricBinary> lookup(const std::string& id) const;
  size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<uint8_t>> entries_;
};

}  // namespace qcp::service
