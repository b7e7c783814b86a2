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
#include <string>
#include <vector>

#include "qcp/compiler/binary.hpp"

namespace qcp::exec {

/// Runtime memory-register assignments applied to a parametric binary.
/// Entries are typed; patch() checks them against the data layout.
class MemoryMap {
 public:
  struct Entry {
    std::string region;
    uint32_t index = 0;
    quil::MemoryKind kind = quil::MemoryKind::Real;
    double real = 0.0;
    int64_t integer = 0;
    uint8_t octet = 0;
    bool bit = false;
  };

  void set_real(const std::string& region, uint32_t index, double value);
  void set_integer(const std::string& region, uint32_t index, int64_t value);
  void set_octet(const std::string& region, uint32_t index, uint8_t value);
  void set_bit(const std::string& region, uint32_t index, bool value);

  const std::vector<Entry>& entries() const { return entries_; }
  bool has_region(const std::string& region) const;

  /// Document form {"region": [values...]}; kinds come from the layout.
  static MemoryMap from_json(const std::string& text,
                             const compiler::DataMemoryLayout& layout);
  std::string to_json() const;

 private:
  void upsert(Entry entry);
  std::vector<Entry> entries_;
};

/// A binary together with a concrete data-memory image.
struct PatchedBinary {
  compiler::ParametricBinary binary;
  std::vector<uint8_t> data_memory;
};

/// Fills the data-memory image from the map (unassigned REAL slots stay
/// 0.0). Never touches the other sections. Throws ExecutionError on
/// unknown regions, out-of-bounds indices, or kind mismatches.
PatchedBinary patch(const compiler::ParametricBinary& binary,
                    const MemoryMap& memory);

/// In-place re-patch of an existing image (the per-step update used by
/// parametric sweeps).
void repatch(PatchedBinary& patched, const MemoryMap& memory);

}  // namespace qcp::exec
