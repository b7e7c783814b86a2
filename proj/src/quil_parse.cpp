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

#include <cctype>
#include <charconv>
#include <string_view>

#include "qcp/quil/ast.hpp"

namespace qcp::quil {
namespace {

enum class TokenKind {
  Identifier,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  At,
  Plus,
  Minus,
  Star,
  Slash,
  End,
};

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int line_number)
      : line_(line), line_number_(line_number) {
    next();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    next();
    return t;
  }

  [[noreturn]] void fail(const std::string& message, const Token& token) const {
    throw ParseError(message, token.pos);
  }

 private:
  void next() {
    while (pos_ < line_.size() &&
           (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) {
      ++pos_;
    }
    SourcePos here{line_number_, static_cast<int>(pos_) + 1};
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      current_ = {TokenKind::End, "", here};
      return;
    }
    char c = line_[pos_];
    auto single = [&](TokenKind kind) {
      current_ = {kind, std::string(1, c), here};
      ++pos_;
    };
    switch (c) {
      case '(':
        return single(TokenKind::LParen);
      case ')':
        return single(TokenKind::RParen);
      case '[':
        return single(TokenKind::LBracket);
      case ']':
        return single(TokenKind::RBracket);
      case ',':
        return single(TokenKind::Comma);
      case '@':
        return single(TokenKind::At);
      case '+':
        return single(TokenKind::Plus);
      case '-':
        return single(TokenKind::Minus);
      case '*':
        return single(TokenKind::Star);
      case '/':
        return single(TokenKind::Slash);
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < line_.size() &&
             (std::isdigit(static_cast<unsigned char>(line_[pos_])) ||
              line_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < line_.size() && (line_[pos_] == 'e' || line_[pos_] == 'E')) {
        size_t mark = pos_++;
        if (pos_ < line_.size() && (line_[pos_] == '+' || line_[pos_] == '-')) {
          ++pos_;
        }
        if (pos_ < line_.size() &&
            std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
          while (pos_ < line_.size() &&
                 std::isdigit(static_cast<unsigned char>(line_[pos_]))) {
            ++pos_;
          }
        } else {
          pos_ = mark;  // bare 'e' belongs to a following identifier
        }
      }
      current_ = {TokenKind::Number, std::string(line_.substr(start, pos_ - start)),
                  here};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
              line_[pos_] == '_')) {
        ++pos_;
      }
      current_ = {TokenKind::Identifier,
                  std::string(line_.substr(start, pos_ - start)), here};
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", here);
  }

  std::string_view line_;
  int line_number_;
  size_t pos_ = 0;
  Token current_{TokenKind::End, "", {0, 0}};
};

class LineParser {
 public:
  explicit LineParser(LineLexer& lexer) : lexer_(lexer) {}

  Token expect(TokenKind kind, const char* what) {
    if (lexer_.peek().kind != kind) {
      lexer_.fail(std::string("expected ") + what, lexer_.peek());
    }
    return lexer_.take();
  }

  void expect_end() {
    if (lexer_.peek().kind != TokenKind::End) {
      lexer_.fail("unexpected trailing input", lexer_.peek());
    }
  }

  uint32_t parse_uint(const char* what) {
    Token t = expect(TokenKind::Number, what);
    uint32_t value = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                               value);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size()) {
      lexer_.fail(std::string("malformed ") + what, t);
    }
    return value;
  }

  MemRef parse_memref() {
    Token name = expect(TokenKind::Identifier, "memory region name");
    expect(TokenKind::LBracket, "'['");
    uint32_t index = parse_uint("memory index");
    expect(TokenKind::RBracket, "']'");
    return MemRef{name.text, index};
  }

  // Literal arithmetic over numbers and pi; memory references are not
  // permitted inside expressions.
  double parse_expr() {
    double value = parse_term();
    for (;;) {
      TokenKind k = lexer_.peek().kind;
      if (k == TokenKind::Plus) {
        lexer_.take();
        value = value + parse_term();
      } else if (k == TokenKind::Minus) {
        lexer_.take();
        value = value - parse_term();
      } else {
        return value;
      }
    }
  }

  double parse_term() {
    double value = parse_factor();
    for (;;) {
      TokenKind k = lexer_.peek().kind;
      if (k == TokenKind::Star) {
        lexer_.take();
        value = value * parse_factor();
      } else if (k == TokenKind::Slash) {
        lexer_.take();
        value = value / parse_factor();
      } else {
        return value;
      }
    }
  }

  double parse_factor() {
    if (lexer_.peek().kind == TokenKind::Minus) {
      lexer_.take();
      return -parse_factor();
    }
    if (lexer_.peek().kind == TokenKind::Plus) {
      lexer_.take();
      return parse_factor();
    }
    return parse_primary();
  }

  double parse_primary() {
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Number) {
      Token num = lexer_.take();
      double value = 0.0;
      auto res = std::from_chars(num.text.data(),
                                 num.text.data() + num.text.size(), value);
      if (res.ec != std::errc() ||
          res.ptr != num.text.data() + num.text.size()) {
        lexer_.fail("malformed number", num);
      }
      return value;
    }
    if (t.kind == TokenKind::Identifier && t.text == "pi") {
      lexer_.take();
      return kPi;
    }
    if (t.kind == TokenKind::LParen) {
      lexer_.take();
      double value = parse_expr();
      expect(TokenKind::RParen, "')'");
      return value;
    }
    lexer_.fail("expected a number, 'pi', or '('", t);
  }

  GateArg parse_gate_arg() {
    // An identifier other than pi must be a memory reference; references
    // cannot participate in arithmetic.
    const Token& t = lexer_.peek();
    if (t.kind == TokenKind::Identifier && t.text != "pi") {
      MemRef ref = parse_memref();
      TokenKind k = lexer_.peek().kind;
      if (k == TokenKind::Plus || k == TokenKind::Minus ||
          k == TokenKind::Star || k == TokenKind::Slash) {
        lexer_.fail("memory references may not appear in arithmetic",
                    lexer_.peek());
      }
      return GateArg{ref};
    }
    return GateArg{parse_expr()};
  }

 private:
  LineLexer& lexer_;
};

}  // namespace

Program parse(const std::string& source) {
  Program program;
  bool body_started = false;

  int line_number = 0;
  size_t cursor = 0;
  while (cursor <= source.size()) {
    size_t eol = source.find('\n', cursor);
    std::string_view line(source.data() + cursor,
                          (eol == std::string::npos ? source.size() : eol) -
                              cursor);
    ++line_number;
    cursor = (eol == std::string::npos) ? source.size() + 1 : eol + 1;

    LineLexer lexer(line, line_number);
    if (lexer.peek().kind == TokenKind::End) continue;  // blank or comment
    LineParser p(lexer);

    Token head = p.expect(TokenKind::Identifier, "an instruction");
    const std::string& word = head.text;

    if (word == "DECLARE") {
      Token name = p.expect(TokenKind::Identifier, "region name");
      Token kind = p.expect(TokenKind::Identifier, "memory kind");
      auto mk = memory_kind_from_string(kind.text);
      if (!mk) lexer.fail("unknown memory kind '" + kind.text + "'", kind);
      uint32_t length = 1;
      if (lexer.peek().kind == TokenKind::LBracket) {
        lexer.take();
        length = p.parse_uint("region length");
        p.expect(TokenKind::RBracket, "']'");
      }
      if (length < 1) lexer.fail("region length must be at least 1", name);
      p.expect_end();
      program.declarations.push_back({name.text, *mk, length});
      continue;
    }

    if (word == "RESET") {
      p.expect_end();
      if (body_started) {
        lexer.fail("RESET is only allowed before the program body", head);
      }
      if (program.reset_requested) {
        lexer.fail("duplicate RESET directive", head);
      }
      program.reset_requested = true;
      continue;
    }

    body_started = true;

    if (word == "HALT") {
      p.expect_end();
      program.body.emplace_back(Halt{});
    } else if (word == "LABEL") {
      p.expect(TokenKind::At, "'@'");
      Token name = p.expect(TokenKind::Identifier, "label name");
      p.expect_end();
      program.body.emplace_back(Label{name.text});
    } else if (word == "JUMP") {
      if (lexer.peek().kind == TokenKind::Minus) {
        lexer.take();
        Token variant = p.expect(TokenKind::Identifier, "WHEN or UNLESS");
        p.expect(TokenKind::At, "'@'");
        Token name = p.expect(TokenKind::Identifier, "label name");
        MemRef condition = p.parse_memref();
        p.expect_end();
        if (variant.text == "WHEN") {
          program.body.emplace_back(JumpWhen{name.text, condition});
        } else if (variant.text == "UNLESS") {
          program.body.emplace_back(JumpUnless{name.text, condition});
        } else {
          lexer.fail("unknown jump variant '" + variant.text + "'", variant);
        }
      } else {
        p.expect(TokenKind::At, "'@'");
        Token name = p.expect(TokenKind::Identifier, "label name");
        p.expect_end();
        program.body.emplace_back(Jump{name.text});
      }
    } else if (word == "MEASURE") {
      uint32_t qubit = p.parse_uint("qubit index");
      MemRef target = p.parse_memref();
      p.expect_end();
      program.body.emplace_back(Measure{qubit, target});
    } else {
      auto gate = gate_from_string(word);
      if (!gate) lexer.fail("unknown gate name '" + word + "'", head);
      Gate instruction;
      instruction.name = *gate;
      if (lexer.peek().kind == TokenKind::LParen) {
        lexer.take();
        instruction.args.push_back(p.parse_gate_arg());
        while (lexer.peek().kind == TokenKind::Comma) {
          lexer.take();
          instruction.args.push_back(p.parse_gate_arg());
        }
        p.expect(TokenKind::RParen, "')'");
      }
      while (lexer.peek().kind == TokenKind::Number) {
        instruction.qubits.push_back(p.parse_uint("qubit index"));
      }
      if (instruction.qubits.empty()) {
        lexer.fail("gate needs at least one qubit", head);
      }
      p.expect_end();
      program.body.emplace_back(std::move(instruction));
    }
  }

  program.validate();
  return program;
}

}  // namespace qcp::quil
