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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "qcp/quil/ast.hpp"

using namespace qcp;
using namespace qcp::quil;

TEST_CASE("minimal well-formed program") {
  Program p = parse("DECLARE ro BIT[1]\nH 0\nMEASURE 0 ro[0]");
  CHECK(p.declarations.size() == 1);
  CHECK(p.declarations[0].name == "ro");
  CHECK(p.declarations[0].kind == MemoryKind::Bit);
  CHECK(p.body.size() == 2);
  CHECK(std::holds_alternative<Gate>(p.body[0]));
  CHECK(std::holds_alternative<Measure>(p.body[1]));
}

TEST_CASE("parametric program keeps memory references symbolic") {
  // Max-Cut QAOA ansatz with deferred beta/gamma assignment.
  const std::string source =
      "DECLARE beta REAL[1]\n"
      "DECLARE gamma REAL[1]\n"
      "DECLARE ro BIT[2]\n"
      "H 0\n"
      "H 1\n"
      "CNOT 0 1\n"
      "RZ(gamma[0]) 1\n"
      "CNOT 0 1\n"
      "RX(beta[0]) 0\n"
      "RX(beta[0]) 1\n"
      "MEASURE 0 ro[0]\n"
      "MEASURE 1 ro[1]\n";
  Program p = parse(source);
  CHECK(p.declarations.size() == 3);
  const auto& rz = std::get<Gate>(p.body[3]);
  REQUIRE(rz.name == GateName::RZ);
  REQUIRE_FALSE(rz.args[0].is_literal());
  CHECK(rz.args[0].ref().region == "gamma");
  CHECK(parse(to_text(p)) == p);
}

TEST_CASE("undeclared memory reference fails resolution") {
  CHECK_THROWS_AS(parse("RZ(alpha[0]) 0"), ParseError);
}

TEST_CASE("printing") {
  SUBCASE("empty program prints as empty text") {
    CHECK(to_text(Program{}) == "");
  }
  SUBCASE("single measurement") {
    Program p;
    p.declarations.push_back({"ro", MemoryKind::Bit, 1});
    p.body.emplace_back(Measure{0, {"ro", 0}});
    CHECK(to_text(p) == "DECLARE ro BIT[1]\nMEASURE 0 ro[0]");
  }
  SUBCASE("symmetrization snippet round-trips verbatim") {
    const std::string source =
        "DECLARE symmetrization REAL[1]\n"
        "DECLARE ro BIT[1]\n"
        "RX(symmetrization[0]) 0\n"
        "MEASURE 0 ro[0]";
    Program p = parse(source);
    CHECK(to_text(p) == source);
  }
}

TEST_CASE("pi expressions evaluate at parse time") {
  Program p = parse(
      "RZ(pi/2) 0\nRZ(-pi/2) 0\nRZ(2*pi) 0\nRZ(3*pi/4) 0\nRX(pi) 0\n"
      "RZ(0.25 + 1.5/2) 0\nRZ((pi + pi)/2) 0");
  auto angle = [&](int i) { return std::get<Gate>(p.body[i]).args[0].literal(); };
  CHECK(angle(0) == kPi / 2);
  CHECK(angle(1) == -(kPi / 2));
  CHECK(angle(2) == 2 * kPi);
  CHECK(angle(3) == 3 * kPi / 4);
  CHECK(angle(4) == kPi);
  CHECK(angle(5) == doctest::Approx(1.0));
  CHECK(angle(6) == doctest::Approx(kPi));
  // Angles print back in their canonical pi form where one exists.
  CHECK(to_text(p.body[0]) == "RZ(pi/2) 0");
  CHECK(to_text(p.body[3]) == "RZ(3*pi/4) 0");
}

TEST_CASE("memory references may not participate in arithmetic") {
  CHECK_THROWS_AS(parse("DECLARE gamma REAL[1]\nRZ(2*gamma[0]) 0"), ParseError);
  CHECK_THROWS_AS(parse("DECLARE gamma REAL[1]\nRZ(gamma[0]/2) 0"), ParseError);
}

TEST_CASE("parse errors carry position and category") {
  SUBCASE("unknown gate") {
    try {
      parse("H 0\nFOO 1");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.pos().line == 2);
      CHECK(std::string(e.what()).find("unknown gate") != std::string::npos);
    }
  }
  SUBCASE("syntax error") {
    try {
      parse("RZ(pi/2 0");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.pos().line == 1);
      CHECK(e.pos().column > 1);
    }
  }
  SUBCASE("duplicate label") {
    CHECK_THROWS_AS(parse("LABEL @a\nLABEL @a"), ParseError);
  }
  SUBCASE("jump to missing label") {
    CHECK_THROWS_AS(parse("JUMP @nowhere"), ParseError);
  }
  SUBCASE("duplicate region") {
    CHECK_THROWS_AS(parse("DECLARE ro BIT[1]\nDECLARE ro BIT[2]"), ParseError);
  }
  SUBCASE("gate arity") {
    CHECK_THROWS_AS(parse("H 0 1"), ParseError);
    CHECK_THROWS_AS(parse("CNOT 0 0"), ParseError);
    CHECK_THROWS_AS(parse("RZ 0"), ParseError);
  }
  SUBCASE("measure into non-bit region") {
    CHECK_THROWS_AS(parse("DECLARE r REAL[1]\nMEASURE 0 r[0]"), ParseError);
  }
  SUBCASE("out of bounds reference") {
    CHECK_THROWS_AS(parse("DECLARE ro BIT[1]\nMEASURE 0 ro[1]"), ParseError);
  }
}

TEST_CASE("RESET is a head-only directive") {
  Program p = parse("DECLARE ro BIT[1]\nRESET\nH 0\nMEASURE 0 ro[0]");
  CHECK(p.reset_requested);
  CHECK(to_text(p).find("RESET") != std::string::npos);
  CHECK_THROWS_AS(parse("H 0\nRESET"), ParseError);
  CHECK_THROWS_AS(parse("RESET\nRESET\nH 0"), ParseError);
}

TEST_CASE("control flow constructs parse and print") {
  const std::string source =
      "DECLARE ro BIT[1]\n"
      "LABEL @start\n"
      "MEASURE 0 ro[0]\n"
      "JUMP-WHEN @start ro[0]\n"
      "JUMP-UNLESS @done ro[0]\n"
      "LABEL @done\n"
      "HALT";
  Program p = parse(source);
  CHECK(to_text(p) == source);
  CHECK(parse(to_text(p)) == p);
}

namespace {

// Random program with declarations, gates, measurement, and loop-free
// control flow, for the round-trip property.
Program random_full_program(Rng& rng) {
  Program p = oracle::random_program(rng, 3, 10, rng.below(2) ? 1 : 0);
  p.declarations.push_back({"ro", MemoryKind::Bit, 3});
  p.declarations.push_back({"counts", MemoryKind::Integer, 2});
  p.declarations.push_back({"tag", MemoryKind::Octet, 1});
  if (rng.below(2)) p.reset_requested = true;
  uint32_t labels = 0;
  std::vector<Instruction> extra;
  if (rng.below(2)) {
    extra.emplace_back(Label{"l" + std::to_string(labels)});
    extra.emplace_back(Measure{0, {"ro", 0}});
    extra.emplace_back(JumpWhen{"l" + std::to_string(labels), {"ro", 0}});
    ++labels;
  }
  if (rng.below(2)) {
    extra.emplace_back(Jump{"end"});
    extra.emplace_back(Label{"end"});
  }
  extra.emplace_back(Halt{});
  for (auto& instruction : extra) p.body.push_back(std::move(instruction));
  return p;
}

}  // namespace

TEST_CASE("round-trip property on random programs") {
  Rng rng(20260810);
  for (int trial = 0; trial < 200; ++trial) {
    Program p = random_full_program(rng);
    p.validate();
    std::string text = to_text(p);
    Program q = parse(text);
    CAPTURE(text);
    CHECK(q == p);
    CHECK(to_text(q) == text);
  }
}
