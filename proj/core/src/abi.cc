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

#include "solfi/abi.h"

#include "solfi/error.h"

namespace solfi {
namespace {

using K = SolType::Kind;

constexpr std::size_t kWord = 32;

bool IsDynamic(const SolType& t) {
  if (t.kind == K::String || t.kind == K::Bytes) return true;
  if (t.kind == K::Array) return !t.length || IsDynamic(t.element[0]);
  return false;
}

std::size_t HeadSize(const SolType& t) {
  if (t.kind == K::Array && t.length && !IsDynamic(t)) {
    return *t.length * HeadSize(t.element[0]);
  }
  return kWord;
}

void AppendWord(Bytes& out, const BigInt& value) {
  BigInt v = value < 0 ? (BigInt(1) << 256) + value : value;
  Bytes word(kWord, 0);
  for (std::size_t i = 0; i < kWord && v > 0; ++i) {
    word[kWord - 1 - i] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  out.insert(out.end(), word.begin(), word.end());
}

void AppendPadded(Bytes& out, const Bytes& data) {
  out.insert(out.end(), data.begin(), data.end());
  out.resize(out.size() + (kWord - data.size() % kWord) % kWord, 0);
}

Bytes EncodeTuple(const std::vector<const SolType*>& types,
                  const std::vector<const Value*>& values);

Bytes EncodeOne(const SolType& t, const Value& v) {
  Bytes out;
  switch (t.kind) {
    case K::Bool: AppendWord(out, std::get<bool>(v.data) ? 1 : 0); break;
    case K::Int: AppendWord(out, std::get<BigInt>(v.data)); break;
    case K::Address: {
      const Bytes& b = std::get<Bytes>(v.data);
      out.resize(kWord - b.size(), 0);
      out.insert(out.end(), b.begin(), b.end());
      break;
    }
    case K::FixedBytes: AppendPadded(out, std::get<Bytes>(v.data)); break;
    case K::Bytes:
    case K::String: {
      Bytes data;
      if (t.kind == K::Bytes) {
        data = std::get<Bytes>(v.data);
      } else {
        const auto& s = std::get<std::string>(v.data);
        data.assign(s.begin(), s.end());
      }
      AppendWord(out, data.size());
      AppendPadded(out, data);
      break;
    }
    case K::Array: {
      const auto& elems = std::get<std::vector<Value>>(v.data);
      if (!t.length) AppendWord(out, elems.size());
      std::vector<const SolType*> types(elems.size(), &t.element[0]);
      std::vector<const Value*> values;
      for (const auto& e : elems) values.push_back(&e);
      Bytes body = EncodeTuple(types, values);
      out.insert(out.end(), body.begin(), body.end());
      break;
    }
  }
  return out;
}

Bytes EncodeTuple(const std::vector<const SolType*>& types,
                  const std::vector<const Value*>& values) {
  std::size_t head_size = 0;
  for (const auto* t : types) head_size += HeadSize(*t);
  Bytes head, tail;
  for (std::size_t i = 0; i < types.size(); ++i) {
    Bytes encoded = EncodeOne(*types[i], *values[i]);
    if (IsDynamic(*types[i])) {
      AppendWord(head, head_size + tail.size());
      tail.insert(tail.end(), encoded.begin(), encoded.end());
    } else {
      head.insert(head.end(), encoded.begin(), encoded.end());
    }
  }
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

Bytes AbiEncode(const std::vector<SolType>& types,
                const std::vector<Value>& values) {
  if (types.size() != values.size()) {
    throw UnsupportedType("argument count does not match parameter count");
  }
  std::vector<const SolType*> tp;
  std::vector<const Value*> vp;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (!TypeChecks(types[i], values[i])) {
      throw UnsupportedType("value does not fit " + types[i].Canonical());
    }
    tp.push_back(&types[i]);
    vp.push_back(&values[i]);
  }
  return EncodeTuple(tp, vp);
}

Bytes AbiEncodeCall(std::string_view signature,
                    const std::vector<SolType>& types,
                    const std::vector<Value>& values) {
  auto digest = Keccak256(signature);
  Bytes out(digest.begin(), digest.begin() + 4);
  Bytes args = AbiEncode(types, values);
  out.insert(out.end(), args.begin(), args.end());
  return out;
}

}  // namespace solfi
