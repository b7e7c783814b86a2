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

#include <openssl/evp.h>

#include <stdexcept>

#include "qcp/service/registry.hpp"

namespace qcp::service {

std::string sha256_hex(const std::vector<uint8_t>& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string BinaryRegistry::store(const compiler::ParametricBinary& binary) {
  std::vector<uint8_t> bytes = binary.serialize();
  std::string id = sha256_hex(bytes);
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.emplace(id, std::move(bytes));  // idempotent by content
  return id;
}

std::optional<std::vector<uint8_t>> BinaryRegistry::lookup_bytes(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<compiler::ParametricBinary> BinaryRegistry::lookup(
    const std::string& id) const {
  auto bytes = lookup_bytes(id);
  if (!bytes) return std::nullopt;
  return compiler::ParametricBinary::deserialize(*bytes);
}

size_t BinaryRegistry::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

}  // namespace qcp::service
