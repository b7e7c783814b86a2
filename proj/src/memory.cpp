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

#include <bit>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "qcp/exec/memory.hpp"

namespace qcp::exec {

using quil::MemoryKind;

void MemoryMap::upsert(Entry entry) {
  for (auto& existing : entries_) {
    if (existing.region == entry.region && existing.index == entry.index) {
      existing = std::move(entry);
      return;
    }
  }
  entries_.push_back(std::move(entry));
}

void MemoryMap::set_real(const std::string& region, uint32_t index,
                         double value) {
  Entry e;
  e.region = region;
  e.index = index;
  e.kind = MemoryKind::Real;
  e.real = value;
  upsert(std::move(e));
}

void MemoryMap::set_integer(const std::string& region, uint32_t index,
                            int64_t value) {
  Entry e;
  e.region = region;
  e.index = index;
  e.kind = MemoryKind::Integer;
  e.integer = value;
  upsert(std::move(e));
}

void MemoryMap::set_octet(const std::string& region, uint32_t index,
                          uint8_t value) {
  Entry e;
  e.region = region;
  e.index = index;
  e.kind = MemoryKind::Octet;
  e.octet = value;
  upsert(std::move(e));
}

void MemoryMap::set_bit(const std::string& region, uint32_t index, bool value) {
  Entry e;
  e.region = region;
  e.index = index;
  e.kind = MemoryKind::Bit;
  e.bit = value;
  upsert(std::move(e));
}

bool MemoryMap::has_region(const std::string& region) const {
  for (const auto& entry : entries_) {
    if (entry.region == region) return true;
  }
  return false;
}

MemoryMap MemoryMap::from_json(const std::string& text,
                               const compiler::DataMemoryLayout& layout) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ExecutionError(std::string("memory map: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ExecutionError("memory map: expected an object of regions");
  }
  MemoryMap map;
  for (const auto& [region, values] : doc.items()) {
    int region_index = layout.find(region);
    if (region_index < 0) {
      throw ExecutionError("memory map: unknown region '" + region + "'");
    }
    if (!values.is_array()) {
      throw ExecutionError("memory map: region '" + region +
                           "' must be an array");
    }
    MemoryKind kind = layout.regions[region_index].kind;
    uint32_t index = 0;
    for (const auto& value : values) {
      if (!value.is_number()) {
        throw ExecutionError("memory map: region '" + region +
                             "' holds a non-numeric value");
      }
      switch (kind) {
        case MemoryKind::Real:
          map.set_real(region, index, value.get<double>());
          break;
        case MemoryKind::Integer:
          map.set_integer(region, index, value.get<int64_t>());
          break;
        case MemoryKind::Octet: {
          int64_t v = value.get<int64_t>();
          if (v < 0 || v > 255) {
            throw ExecutionError("memory map: octet value out of range");
          }
          map.set_octet(region, index, static_cast<uint8_t>(v));
          break;
        }
        case MemoryKind::Bit: {
          int64_t v = value.get<int64_t>();
          if (v != 0 && v != 1) {
            throw ExecutionError("memory map: bit value must be 0 or 1");
          }
          map.set_bit(region, index, v == 1);
          break;
        }
      }
      ++index;
    }
  }
  return map;
}

std::string MemoryMap::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& entry : entries_) {
    auto& arr = doc[entry.region];
    if (!arr.is_array()) arr = nlohmann::json::array();
    while (arr.size() <= entry.index) arr.push_back(0);
    switch (entry.kind) {
      case MemoryKind::Real:
        arr[entry.index] = entry.real;
        break;
      case MemoryKind::Integer:
        arr[entry.index] = entry.integer;
        break;
      case MemoryKind::Octet:
        arr[entry.index] = entry.octet;
        break;
      case MemoryKind::Bit:
        arr[entry.index] = entry.bit ? 1 : 0;
        break;
    }
  }
  return doc.dump();
}

void repatch(PatchedBinary& patched, const MemoryMap& memory) {
  const auto& layout = patched.binary.layout;
  for (const auto& entry : memory.entries()) {
    int region_index = layout.find(entry.region);
    if (region_index < 0) {
      throw ExecutionError("patch: unknown region '" + entry.region + "'");
    }
    const compiler::DataRegion& region = layout.regions[region_index];
    if (region.kind != entry.kind) {
      throw ExecutionError("patch: region '" + entry.region + "' has kind " +
                           quil::to_string(region.kind) + ", assignment is " +
                           quil::to_string(entry.kind));
    }
    if (entry.index >= region.length) {
      throw ExecutionError("patch: index " + std::to_string(entry.index) +
                           " out of bounds for region '" + entry.region +
                           "[" + std::to_string(region.length) + "]'");
    }
    compiler::SlotRef slot{static_cast<uint32_t>(region_index), entry.index};
    switch (region.kind) {
      case MemoryKind::Real: {
        uint64_t bits = std::bit_cast<uint64_t>(entry.real);
        uint64_t offset = layout.element_offset(slot);
        for (int i = 0; i < 8; ++i) {
          patched.data_memory[offset + i] = (bits >> (8 * i)) & 0xff;
        }
        break;
      }
      case MemoryKind::Integer: {
        uint64_t bits = static_cast<uint64_t>(entry.integer);
        uint64_t offset = layout.element_offset(slot);
        for (int i = 0; i < 8; ++i) {
          patched.data_memory[offset + i] = (bits >> (8 * i)) & 0xff;
        }
        break;
      }
      case MemoryKind::Octet:
        patched.data_memory[layout.element_offset(slot)] = entry.octet;
        break;
      case MemoryKind::Bit: {
        auto [byte, mask] = layout.bit_location(slot);
        if (entry.bit) {
          patched.data_memory[byte] |= mask;
        } else {
          patched.data_memory[byte] &= static_cast<uint8_t>(~mask);
        }
        break;
      }
    }
  }
}

PatchedBinary patch(const compiler::ParametricBinary& binary,
                    const MemoryMap& memory) {
  PatchedBinary patched;
  patched.binary = binary;
  patched.data_memory.assign(binary.layout.total_bytes, 0);
  repatch(patched, memory);
  return patched;
}

}  // namespace qcp::exec
