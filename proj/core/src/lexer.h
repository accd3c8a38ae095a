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

#ifndef SOLFI_SRC_LEXER_H_
#define SOLFI_SRC_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace solfi::internal {

enum class TokenKind { Identifier, Number, HexNumber, String, Punct, End };

struct Token {
  TokenKind kind;
  std::string_view text;
  std::size_t offset;
  std::size_t line;
  std::size_t column;
};

// Splits source into tokens. Comments and whitespace are dropped.
std::vector<Token> Tokenize(std::string_view source);

}  // namespace solfi::internal

#endif  // SOLFI_SRC_LEXER_H_
