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
#include <cstring>

#include <nlohmann/json.hpp>

#include "qcp/common.hpp"
#include "qcp/compiler/binary.hpp"

namespace qcp::compiler {
namespace {

constexpr char kMagic[4] = {'P', 'Q', 'B', '1'};
constexpr uint32_t kVersion = 1;

class Writer {
 public:
  void u8(uint8_t v) { bytes_.push_back(v); }
  void u32(uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back((v >> (8 * i)) & 0xff);
  }
  void u64(uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back((v >> (8 * i)) & 0xff);
  }
  void i8(int8_t v) { bytes_.push_back(static_cast<uint8_t>(v)); }
  void f64(double v) { u64(std::bit_cast<uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<uint32_t>(s.size()));
    bytes_.insert(bytes_.end(), s.begin(), s.end());
  }
  void append(const std::vector<uint8_t>& other) {
    bytes_.insert(bytes_.end(), other.begin(), other.end());
  }
  std::vector<uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  uint8_t u8() { return bytes_.at(pos_++); }
  uint32_t u32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(u8()) << (8 * i);
    return v;
  }
  uint64_t u64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(u8()) << (8 * i);
    return v;
  }
  int8_t i8() { return static_cast<int8_t>(u8()); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    uint32_t n = u32();
    if (pos_ + n > bytes_.size()) {
      throw CompileError("corrupt binary: truncated string");
    }
    std::string s(bytes_.begin() + pos_, bytes_.begin() + pos_ + n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }
  size_t pos() const { return pos_; }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

void write_bitref(Writer& w, const BitRef& ref) {
  w.u8(static_cast<uint8_t>(ref.kind));
  w.u32(ref.slot.region);
  w.u32(ref.slot.index);
  w.u32(ref.qubit);
}

BitRef read_bitref(Reader& r) {
  BitRef ref;
  ref.kind = static_cast<BitRef::Kind>(r.u8());
  ref.slot.region = r.u32();
  ref.slot.index = r.u32();
  ref.qubit = r.u32();
  return ref;
}

nlohmann::json bitref_json(const BitRef& ref) {
  if (ref.kind == BitRef::Kind::ResetScratch) {
    return {{"scratch_qubit", ref.qubit}};
  }
  return {{"region", ref.slot.region}, {"index", ref.slot.index}};
}

}  // namespace

int DataMemoryLayout::find(const std::string& name) const {
  for (size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

uint64_t DataMemoryLayout::element_offset(const SlotRef& ref) const {
  const DataRegion& region = regions.at(ref.region);
  int bits = quil::element_bits(region.kind);
  if (bits == 1) {
    throw CompileError("element_offset used on a BIT region");
  }
  return region.byte_offset + static_cast<uint64_t>(ref.index) * (bits / 8);
}

std::pair<uint64_t, uint8_t> DataMemoryLayout::bit_location(
    const SlotRef& ref) const {
  const DataRegion& region = regions.at(ref.region);
  if (region.kind != quil::MemoryKind::Bit) {
    throw CompileError("bit_location used on a non-BIT region");
  }
  uint64_t byte = region.byte_offset + ref.index / 8;
  uint8_t mask = static_cast<uint8_t>(1u << (ref.index % 8));
  return {byte, mask};
}

DataMemoryLayout build_layout(
    const std::vector<quil::MemoryDeclaration>& declarations) {
  DataMemoryLayout layout;
  uint64_t offset = 0;
  for (const auto& decl : declarations) {
    int bits = quil::element_bits(decl.kind);
    uint64_t align = (bits == 64) ? 8 : 1;
    offset = (offset + align - 1) / align * align;
    uint64_t size = (bits == 1)
                        ? (decl.length + 7) / 8
                        : static_cast<uint64_t>(decl.length) * (bits / 8);
    layout.regions.push_back({decl.name, decl.kind, decl.length, offset});
    offset += size;
  }
  layout.total_bytes = offset;
  return layout;
}

std::vector<uint8_t> ParametricBinary::serialize() const {
  // Sections are built separately and emitted length-prefixed after the
  // header, in fixed order: instruction memory, waveform memory, data
  // layout, readout layout, reset CFGs, metadata.
  std::vector<std::vector<uint8_t>> sections;

  Writer w;
  w.u32(static_cast<uint32_t>(blocks.size()));
  for (const auto& block : blocks) {
    w.u32(block.id);
    w.u32(static_cast<uint32_t>(block.instructions.size()));
    for (const auto& instruction : block.instructions) {
      if (const auto* pulse = std::get_if<Pulse>(&instruction)) {
        w.u8(0);
        w.u32(pulse->qubit);
        w.i8(pulse->rx_multiple);
        w.u32(pulse->waveform);
      } else if (const auto* cz = std::get_if<CZPulse>(&instruction)) {
        w.u8(1);
        w.u32(cz->a);
        w.u32(cz->b);
        w.u32(cz->waveform);
      } else if (const auto* sp = std::get_if<ShiftPhase>(&instruction)) {
        w.u8(2);
        w.u32(sp->qubit);
        w.u8(sp->has_slot ? 1 : 0);
        w.u32(sp->slot.region);
        w.u32(sp->slot.index);
        w.f64(sp->literal);
      } else if (const auto* capture = std::get_if<Capture>(&instruction)) {
        w.u8(3);
        w.u32(capture->qubit);
        write_bitref(w, capture->destination);
        w.u32(capture->waveform);
      }
    }
    w.u8(static_cast<uint8_t>(block.terminator.kind));
    w.u32(block.terminator.target);
    write_bitref(w, block.terminator.condition);
    w.u32(block.terminator.if_one);
    w.u32(block.terminator.if_zero);
    w.u32(block.terminator.back);
    w.u32(block.terminator.exit);
  }
  sections.push_back(w.take());

  // Waveform memory.
  w = Writer{};
  w.u32(static_cast<uint32_t>(waveforms.size()));
  for (const auto& wf : waveforms) w.str(wf.label);
  sections.push_back(w.take());

  // Data layout.
  w = Writer{};
  w.u32(static_cast<uint32_t>(layout.regions.size()));
  for (const auto& region : layout.regions) {
    w.str(region.name);
    w.u8(static_cast<uint8_t>(region.kind));
    w.u32(region.length);
    w.u64(region.byte_offset);
  }
  w.u64(layout.total_bytes);
  sections.push_back(w.take());

  // Readout layout.
  w = Writer{};
  w.u32(static_cast<uint32_t>(readout.size()));
  for (const auto& entry : readout) {
    w.str(entry.region);
    w.u32(entry.index);
    w.u32(entry.qubit);
  }
  sections.push_back(w.take());

  // Reset CFGs.
  w = Writer{};
  w.u32(static_cast<uint32_t>(reset_cfgs.size()));
  for (const auto& cfg : reset_cfgs) {
    w.u32(cfg.qubit);
    w.u32(cfg.header);
    w.u32(cfg.measurement);
    w.u32(cfg.idle);
    w.u32(cfg.feedback);
    w.u32(cfg.rounds);
  }
  sections.push_back(w.take());

  // Metadata.
  w = Writer{};
  w.u32(main_entry);
  w.u32(static_cast<uint32_t>(logical_to_physical.size()));
  for (uint32_t v : logical_to_physical) w.u32(v);
  w.u32(static_cast<uint32_t>(used_qubits.size()));
  for (uint32_t v : used_qubits) w.u32(v);
  sections.push_back(w.take());

  Writer out;
  for (char c : kMagic) out.u8(static_cast<uint8_t>(c));
  out.u32(kVersion);
  for (const auto& section : sections) {
    out.u64(section.size());
    out.append(section);
  }
  return out.take();
}

ParametricBinary ParametricBinary::deserialize(
    const std::vector<uint8_t>& bytes) {
  Reader r(bytes);
  for (char c : kMagic) {
    if (r.u8() != static_cast<uint8_t>(c)) {
      throw CompileError("not a parametric binary (bad magic)");
    }
  }
  if (r.u32() != kVersion) {
    throw CompileError("unsupported parametric binary version");
  }

  size_t section_end = 0;
  auto begin_section = [&] {
    uint64_t length = r.u64();
    section_end = r.pos() + length;
    if (section_end > bytes.size()) {
      throw CompileError("corrupt binary: section overruns file");
    }
  };
  auto end_section = [&] {
    if (r.pos() != section_end) {
      throw CompileError("corrupt binary: section length mismatch");
    }
  };

  ParametricBinary binary;
  begin_section();
  uint32_t nblocks = r.u32();
  binary.blocks.reserve(nblocks);
  for (uint32_t i = 0; i < nblocks; ++i) {
    BasicBlock block;
    block.id = r.u32();
    uint32_t ninstr = r.u32();
    block.instructions.reserve(ninstr);
    for (uint32_t k = 0; k < ninstr; ++k) {
      switch (r.u8()) {
        case 0: {
          Pulse pulse;
          pulse.qubit = r.u32();
          pulse.rx_multiple = r.i8();
          pulse.waveform = r.u32();
          block.instructions.emplace_back(pulse);
          break;
        }
        case 1: {
          CZPulse cz;
          cz.a = r.u32();
          cz.b = r.u32();
          cz.waveform = r.u32();
          block.instructions.emplace_back(cz);
          break;
        }
        case 2: {
          ShiftPhase sp;
          sp.qubit = r.u32();
          sp.has_slot = r.u8() != 0;
          sp.slot.region = r.u32();
          sp.slot.index = r.u32();
          sp.literal = r.f64();
          block.instructions.emplace_back(sp);
          break;
        }
        case 3: {
          Capture capture;
          capture.qubit = r.u32();
          capture.destination = read_bitref(r);
          capture.waveform = r.u32();
          block.instructions.emplace_back(capture);
          break;
        }
        default:
          throw CompileError("corrupt binary: unknown instruction tag");
      }
    }
    block.terminator.kind = static_cast<Terminator::Kind>(r.u8());
    block.terminator.target = r.u32();
    block.terminator.condition = read_bitref(r);
    block.terminator.if_one = r.u32();
    block.terminator.if_zero = r.u32();
    block.terminator.back = r.u32();
    block.terminator.exit = r.u32();
    binary.blocks.push_back(std::move(block));
  }
  end_section();

  begin_section();
  uint32_t nwave = r.u32();
  for (uint32_t i = 0; i < nwave; ++i) binary.waveforms.push_back({r.str()});
  end_section();

  begin_section();
  uint32_t nregions = r.u32();
  for (uint32_t i = 0; i < nregions; ++i) {
    DataRegion region;
    region.name = r.str();
    region.kind = static_cast<quil::MemoryKind>(r.u8());
    region.length = r.u32();
    region.byte_offset = r.u64();
    binary.layout.regions.push_back(std::move(region));
  }
  binary.layout.total_bytes = r.u64();
  end_section();

  begin_section();
  uint32_t nreadout = r.u32();
  for (uint32_t i = 0; i < nreadout; ++i) {
    ReadoutEntry entry;
    entry.region = r.str();
    entry.index = r.u32();
    entry.qubit = r.u32();
    binary.readout.push_back(std::move(entry));
  }
  end_section();

  begin_section();
  uint32_t ncfgs = r.u32();
  for (uint32_t i = 0; i < ncfgs; ++i) {
    ResetCFG cfg;
    cfg.qubit = r.u32();
    cfg.header = r.u32();
    cfg.measurement = r.u32();
    cfg.idle = r.u32();
    cfg.feedback = r.u32();
    cfg.rounds = r.u32();
    binary.reset_cfgs.push_back(cfg);
  }
  end_section();

  begin_section();
  binary.main_entry = r.u32();
  uint32_t nmap = r.u32();
  for (uint32_t i = 0; i < nmap; ++i) {
    binary.logical_to_physical.push_back(r.u32());
  }
  uint32_t nused = r.u32();
  for (uint32_t i = 0; i < nused; ++i) binary.used_qubits.push_back(r.u32());
  end_section();

  if (!r.done()) throw CompileError("corrupt binary: trailing bytes");

  for (const auto& block : binary.blocks) {
    auto check_block = [&](uint32_t id) {
      if (id >= binary.blocks.size()) {
        throw CompileError("corrupt binary: terminator targets missing block");
      }
    };
    switch (block.terminator.kind) {
      case Terminator::Kind::Jump:
        check_block(block.terminator.target);
        break;
      case Terminator::Kind::Conditional:
        check_block(block.terminator.if_one);
        check_block(block.terminator.if_zero);
        break;
      case Terminator::Kind::RoundLoop:
        check_block(block.terminator.back);
        check_block(block.terminator.exit);
        break;
      case Terminator::Kind::Halt:
        break;
    }
  }
  return binary;
}

std::string ParametricBinary::to_json() const {
  nlohmann::json j;
  auto blocks_json = nlohmann::json::array();
  for (const auto& block : blocks) {
    nlohmann::json bj;
    bj["id"] = block.id;
    auto instrs = nlohmann::json::array();
    for (const auto& instruction : block.instructions) {
      if (const auto* pulse = std::get_if<Pulse>(&instruction)) {
        instrs.push_back({{"op", "pulse"},
                          {"qubit", pulse->qubit},
                          {"rx_multiple", pulse->rx_multiple},
                          {"waveform", pulse->waveform}});
      } else if (const auto* cz = std::get_if<CZPulse>(&instruction)) {
        instrs.push_back({{"op", "cz"},
                          {"a", cz->a},
                          {"b", cz->b},
                          {"waveform", cz->waveform}});
      } else if (const auto* sp = std::get_if<ShiftPhase>(&instruction)) {
        nlohmann::json sj{{"op", "shift_phase"}, {"qubit", sp->qubit}};
        if (sp->has_slot) {
          sj["slot"] = {{"region", sp->slot.region}, {"index", sp->slot.index}};
        } else {
          sj["literal"] = sp->literal;
        }
        instrs.push_back(sj);
      } else if (const auto* capture = std::get_if<Capture>(&instruction)) {
        instrs.push_back({{"op", "capture"},
                          {"qubit", capture->qubit},
                          {"destination", bitref_json(capture->destination)},
                          {"waveform", capture->waveform}});
      }
    }
    bj["instructions"] = instrs;
    switch (block.terminator.kind) {
      case Terminator::Kind::Jump:
        bj["terminator"] = {{"kind", "jump"}, {"target", block.terminator.target}};
        break;
      case Terminator::Kind::Conditional:
        bj["terminator"] = {{"kind", "conditional"},
                            {"condition", bitref_json(block.terminator.condition)},
                            {"if_one", block.terminator.if_one},
                            {"if_zero", block.terminator.if_zero}};
        break;
      case Terminator::Kind::RoundLoop:
        bj["terminator"] = {{"kind", "round_loop"},
                            {"back", block.terminator.back},
                            {"exit", block.terminator.exit}};
        break;
      case Terminator::Kind::Halt:
        bj["terminator"] = {{"kind", "halt"}};
        break;
    }
    blocks_json.push_back(bj);
  }
  j["instruction_memory"] = blocks_json;

  auto waveforms_json = nlohmann::json::array();
  for (const auto& wf : waveforms) waveforms_json.push_back(wf.label);
  j["waveform_memory"] = waveforms_json;

  auto layout_json = nlohmann::json::array();
  for (const auto& region : layout.regions) {
    layout_json.push_back({{"name", region.name},
                           {"kind", quil::to_string(region.kind)},
                           {"length", region.length},
                           {"byte_offset", region.byte_offset}});
  }
  j["data_layout"] = {{"regions", layout_json},
                      {"total_bytes", layout.total_bytes}};

  auto readout_json = nlohmann::json::array();
  for (const auto& entry : readout) {
    readout_json.push_back({{"region", entry.region},
                            {"index", entry.index},
                            {"qubit", entry.qubit}});
  }
  j["readout_layout"] = readout_json;

  auto cfgs_json = nlohmann::json::array();
  for (const auto& cfg : reset_cfgs) {
    cfgs_json.push_back({{"qubit", cfg.qubit},
                         {"header", cfg.header},
                         {"measurement", cfg.measurement},
                         {"idle", cfg.idle},
                         {"feedback", cfg.feedback},
                         {"rounds", cfg.rounds}});
  }
  j["reset_cfgs"] = cfgs_json;
  j["main_entry"] = main_entry;
  j["logical_to_physical"] = logical_to_physical;
  j["used_qubits"] = used_qubits;
  return j.dump(2);
}

}  // namespace qcp::compiler
