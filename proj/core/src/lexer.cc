// Copyright 2026 The Solfi Authors
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

#include "lexer.h"

#include <array>
#include <cctype>

#include "solfi/error.h"

namespace solfi::internal {
namespace {

// Longest first.
constexpr std::array<std::string_view, 22> kMultiCharPuncts = {
    "<<=", ">>=", "**", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=",  "-=",  "*=", "/=", "%=", "|=", "&=", "^=", "<<", ">>", "=>"};

constexpr std::string_view kSingleCharPuncts = "()[]{};,.=+-*/%!~<>&|^?:";

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool IsIdentPart(char c) {
  return IsIdentStart(c) || std::isdigit(static_cast<unsigned char>(c));
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : source_(source) {}

  std::vector<Token> Run() {
    std::vector<Token> tokens;
    while (true) {
      SkipTrivia();
      if (pos_ >= source_.size()) {
        tokens.push_back({TokenKind::End, {}, pos_, line_, Column(pos_)});
        return tokens;
      }
      tokens.push_back(Next());
    }
  }

 private:
  std::size_t Column(std::size_t offset) const {
    return offset - line_start_ + 1;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw SyntaxError(message, line_, Column(pos_));
  }

  void Advance() {
    if (source_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  void SkipTrivia() {
    while (pos_ < source_.size()) {
      char c = source_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else if (source_.substr(pos_, 2) == "//") {
        while (pos_ < source_.size() && source_[pos_] != '\n') Advance();
      } else if (source_.substr(pos_, 2) == "/*") {
        Advance();
        Advance();
        while (pos_ < source_.size() && source_.substr(pos_, 2) != "*/") {
          Advance();
        }
        if (pos_ >= source_.size()) Fail("unterminated block comment");
        Advance();
        Advance();
      } else {
        return;
      }
    }
  }

  Token Make(TokenKind kind, std::size_t start, std::size_t start_line,
             std::size_t start_column) const {
    return {kind, source_.substr(start, pos_ - start), start, start_line,
            start_column};
  }

  Token Next() {
    const std::size_t start = pos_;
    const std::size_t start_line = line_;
    const std::size_t start_column = Column(pos_);
    const char c = source_[pos_];

    if (IsIdentStart(c)) {
      while (pos_ < source_.size() && IsIdentPart(source_[pos_])) Advance();
      return Make(TokenKind::Identifier, start, start_line, start_column);
    }
    if (IsDigit(c)) {
      if (c == '0' && pos_ + 1 < source_.size() &&
          (source_[pos_ + 1] == 'x' || source_[pos_ + 1] == 'X')) {
        Advance();
        Advance();
        std::size_t digits = 0;
        while (pos_ < source_.size() &&
               std::isxdigit(static_cast<unsigned char>(source_[pos_]))) {
          Advance();
          ++digits;
        }
        if (digits == 0) Fail("malformed hex literal");
        if (pos_ < source_.size() && IsIdentPart(source_[pos_])) {
          Fail("malformed hex literal");
        }
        return Make(TokenKind::HexNumber, start, start_line, start_column);
      }
      while (pos_ < source_.size() && IsDigit(source_[pos_])) Advance();
      if (pos_ + 1 < source_.size() && source_[pos_] == '.' &&
          IsDigit(source_[pos_ + 1])) {
        Advance();
        while (pos_ < source_.size() && IsDigit(source_[pos_])) Advance();
      }
      if (pos_ < source_.size() && (source_[pos_] == 'e' || source_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < source_.size() && source_[look] == '-') ++look;
        if (look < source_.size() && IsDigit(source_[look])) {
          while (pos_ < look) Advance();
          while (pos_ < source_.size() && IsDigit(source_[pos_])) Advance();
        }
      }
      if (pos_ < source_.size() && IsIdentPart(source_[pos_])) {
        Fail("malformed number literal");
      }
      return Make(TokenKind::Number, start, start_line, start_column);
    }
    if (c == '"' || c == '\'') {
      Advance();
      while (pos_ < source_.size() && source_[pos_] != c) {
        if (source_[pos_] == '\n') Fail("unterminated string literal");
        if (source_[pos_] == '\\') Advance();
        if (pos_ < source_.size()) Advance();
      }
      if (pos_ >= source_.size()) Fail("unterminated string literal");
      Advance();
      return Make(TokenKind::String, start, start_line, start_column);
    }
    for (std::string_view punct : kMultiCharPuncts) {
      if (source_.substr(pos_, punct.size()) == punct) {
        for (std::size_t i = 0; i < punct.size(); ++i) Advance();
        return Make(TokenKind::Punct, start, start_line, start_column);
      }
    }
    if (kSingleCharPuncts.find(c) != std::string_view::npos) {
      Advance();
      return Make(TokenKind::Punct, start, start_line, start_column);
    }
    Fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) {
  return Lexer(source).Run();
}

}  // namespace solfi::internal
