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

#ifndef SOLFI_SRC_SOLIDITY_TYPES_H_
#define SOLFI_SRC_SOLIDITY_TYPES_H_

#include <charconv>
#include <optional>
#include <string_view>

namespace solfi {

struct IntegerTypeInfo {
  bool is_signed;
  int bits;
};

// "uint" -> {false, 256}, "int8" -> {true, 8}; nullopt for anything else.
inline std::optional<IntegerTypeInfo> ParseIntegerTypeName(
    std::string_view name) {
  bool is_signed = true;
  if (name.starts_with("uint")) {
    is_signed = false;
    name.remove_prefix(4);
  } else if (name.starts_with("int")) {
    name.remove_prefix(3);
  } else {
    return std::nullopt;
  }
  if (name.empty()) return IntegerTypeInfo{is_signed, 256};
  int bits = 0;
  auto [end, ec] = std::from_chars(name.data(), name.data() + name.size(), bits);
  if (ec != std::errc() || end != name.data() + name.size()) return std::nullopt;
  if (bits < 8 || bits > 256 || bits % 8 != 0) return std::nullopt;
  return IntegerTypeInfo{is_signed, bits};
}

// "bytes32" -> 32, "byte" -> 1; nullopt for dynamic "bytes" and others.
inline std::optional<int> ParseFixedBytesTypeName(std::string_view name) {
  if (name == "byte") return 1;
  if (!name.starts_with("bytes") || name.size() == 5) return std::nullopt;
  name.remove_prefix(5);
  int size = 0;
  auto [end, ec] = std::from_chars(name.data(), name.data() + name.size(), size);
  if (ec != std::errc() || end != name.data() + name.size()) return std::nullopt;
  if (size < 1 || size > 32) return std::nullopt;
  return size;
}

inline bool IsElementaryTypeName(std::string_view name) {
  return name == "address" || name == "bool" || name == "string" ||
         name == "bytes" || ParseIntegerTypeName(name).has_value() ||
         ParseFixedBytesTypeName(name).has_value();
}

}  // namespace solfi

#endif  // SOLFI_SRC_SOLIDITY_TYPES_H_
