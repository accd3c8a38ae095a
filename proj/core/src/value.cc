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

#include "solfi/value.h"

#include <charconv>

#include "solfi/error.h"
#include "solidity_types.h"

namespace solfi {

SolType SolType::Int(int bits, bool is_signed) {
  SolType t = Of(Kind::Int);
  t.size = bits;
  t.is_signed = is_signed;
  return t;
}

SolType SolType::FixedBytes(int n) {
  SolType t = Of(Kind::FixedBytes);
  t.size = n;
  return t;
}

SolType SolType::Array(SolType element, std::optional<std::size_t> length) {
  SolType t = Of(Kind::Array);
  t.element.push_back(std::move(element));
  t.length = length;
  return t;
}

std::string SolType::Canonical() const {
  switch (kind) {
    case Kind::Bool: return "bool";
    case Kind::Int:
      return (is_signed ? "int" : "uint") + std::to_string(size);
    case Kind::Address: return "address";
    case Kind::String: return "string";
    case Kind::Bytes: return "bytes";
    case Kind::FixedBytes: return "bytes" + std::to_string(size);
    case Kind::Array:
      return element.at(0).Canonical() + "[" +
             (length ? std::to_string(*length) : "") + "]";
  }
  return "";
}

SolType ParseSolType(std::string_view text) {
  if (text.ends_with("]")) {
    auto open = text.rfind('[');
    if (open == std::string_view::npos) {
      throw UnsupportedType("bad array type " + std::string(text));
    }
    auto inner = text.substr(open + 1, text.size() - open - 2);
    std::optional<std::size_t> length;
    if (!inner.empty()) {
      std::size_t n = 0;
      auto [end, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), n);
      if (ec != std::errc() || end != inner.data() + inner.size()) {
        throw UnsupportedType("bad array length in " + std::string(text));
      }
      length = n;
    }
    return SolType::Array(ParseSolType(text.substr(0, open)), length);
  }
  if (text == "bool") return SolType::Bool();
  if (text == "address" || text == "address payable") return SolType::Address();
  if (text == "string") return SolType::String();
  if (text == "bytes") return SolType::DynamicBytes();
  if (auto n = ParseFixedBytesTypeName(text)) return SolType::FixedBytes(*n);
  if (auto info = ParseIntegerTypeName(text)) {
    return SolType::Int(info->bits, info->is_signed);
  }
  throw UnsupportedType("unsupported type " + std::string(text));
}

SolType TypeFromAst(const AstNode& type_node) {
  switch (type_node.kind) {
    case NodeKind::ElementaryTypeName:
      return ParseSolType(type_node.Attr(attr::kName));
    case NodeKind::ArrayTypeName: {
      std::optional<std::size_t> length;
      if (type_node.children.size() == 2) {
        const AstNode& len = *type_node.child(1);
        const auto& digits = len.Attr(attr::kValue);
        std::size_t n = 0;
        auto [end, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (len.kind != NodeKind::Literal || ec != std::errc() ||
            end != digits.data() + digits.size()) {
          throw UnsupportedType("non-literal array length");
        }
        length = n;
      }
      return SolType::Array(TypeFromAst(*type_node.child(0)), length);
    }
    default:
      throw UnsupportedType("unsupported type " + TypeText(type_node));
  }
}

BigInt MinOf(const SolType& t) {
  if (!t.is_signed) return 0;
  return -(BigInt(1) << (t.size - 1));
}

BigInt MaxOf(const SolType& t) {
  if (!t.is_signed) return (BigInt(1) << t.size) - 1;
  return (BigInt(1) << (t.size - 1)) - 1;
}

bool TypeChecks(const SolType& type, const Value& value) {
  using K = SolType::Kind;
  switch (type.kind) {
    case K::Bool: return std::holds_alternative<bool>(value.data);
    case K::Int: {
      const auto* v = std::get_if<BigInt>(&value.data);
      return v != nullptr && *v >= MinOf(type) && *v <= MaxOf(type);
    }
    case K::Address: {
      const auto* v = std::get_if<Bytes>(&value.data);
      return v != nullptr && v->size() == 20;
    }
    case K::FixedBytes: {
      const auto* v = std::get_if<Bytes>(&value.data);
      return v != nullptr && v->size() == static_cast<std::size_t>(type.size);
    }
    case K::Bytes: return std::holds_alternative<Bytes>(value.data);
    case K::String: return std::holds_alternative<std::string>(value.data);
    case K::Array: {
      const auto* v = std::get_if<std::vector<Value>>(&value.data);
      if (v == nullptr || (type.length && v->size() != *type.length)) {
        return false;
      }
      for (const auto& e : *v) {
        if (!TypeChecks(type.element.at(0), e)) return false;
      }
      return true;
    }
  }
  return false;
}

std::string ToString(const SolType& type, const Value& value) {
  using K = SolType::Kind;
  switch (type.kind) {
    case K::Bool: return std::get<bool>(value.data) ? "true" : "false";
    case K::Int: return std::get<BigInt>(value.data).str();
    case K::Address:
    case K::Bytes:
    case K::FixedBytes: return "0x" + HexEncode(std::get<Bytes>(value.data));
    case K::String: return "\"" + std::get<std::string>(value.data) + "\"";
    case K::Array: {
      std::string out = "[";
      const auto& elems = std::get<std::vector<Value>>(value.data);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i > 0) out += ", ";
        out += ToString(type.element.at(0), elems[i]);
      }
      return out + "]";
    }
  }
  return "";
}

}  // namespace solfi
