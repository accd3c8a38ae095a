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

#ifndef SOLFI_VALUE_H_
#define SOLFI_VALUE_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "solfi/ast.h"
#include "solfi/keccak.h"

namespace solfi {

using BigInt = boost::multiprecision::cpp_int;

// Parameter types the workload generator understands.
struct SolType {
  enum class Kind { Bool, Int, Address, String, Bytes, FixedBytes, Array };

  Kind kind = Kind::Bool;
  bool is_signed = false;
  int size = 0;                 // bits for Int, byte count for FixedBytes
  std::vector<SolType> element;  // exactly one entry for Array
  std::optional<std::size_t> length;  // static array length

  static SolType Of(Kind k) {
    SolType t;
    t.kind = k;
    return t;
  }
  static SolType Bool() { return Of(Kind::Bool); }
  static SolType Int(int bits, bool is_signed);
  static SolType Address() { return Of(Kind::Address); }
  static SolType String() { return Of(Kind::String); }
  static SolType DynamicBytes() { return Of(Kind::Bytes); }
  static SolType FixedBytes(int n);
  static SolType Array(SolType element,
                       std::optional<std::size_t> length = std::nullopt);

  // ABI spelling, e.g. "uint256", "bytes32", "address[]", "int8[3]".
  std::string Canonical() const;
  bool operator==(const SolType&) const = default;
};

// Parses an ABI spelling produced by Canonical(). Throws UnsupportedType.
SolType ParseSolType(std::string_view text);

// Throws UnsupportedType for mappings, user-defined types and anything else
// outside SolType.
SolType TypeFromAst(const AstNode& type_node);

struct Value {
  // bool | integer | address or byte string | UTF-8 string | array elements
  std::variant<bool, BigInt, Bytes, std::string, std::vector<Value>> data;

  bool operator==(const Value&) const = default;
};

BigInt MinOf(const SolType& int_type);
BigInt MaxOf(const SolType& int_type);

bool TypeChecks(const SolType& type, const Value& value);

// Debug rendering, e.g. `true`, `255`, `0x00ff`, `"ab"`, `[1, 2]`.
std::string ToString(const SolType& type, const Value& value);

}  // namespace solfi

#endif  // SOLFI_VALUE_H_
