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

#ifndef SOLFI_KECCAK_H_
#define SOLFI_KECCAK_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace solfi {

using Bytes = std::vector<std::uint8_t>;

// Original Keccak-256 (0x01 padding), as used by the EVM; not SHA3-256.
std::array<std::uint8_t, 32> Keccak256(std::string_view data);

// Lowercase hex without prefix.
std::string HexEncode(const std::uint8_t* data, std::size_t size);
template <std::size_t N>
std::string HexEncode(const std::array<std::uint8_t, N>& bytes) {
  return HexEncode(bytes.data(), N);
}
inline std::string HexEncode(const Bytes& bytes) {
  return HexEncode(bytes.data(), bytes.size());
}

// Accepts an optional 0x prefix. Throws FormatError on odd length or
// non-hex digits.
Bytes HexDecode(std::string_view hex);

// First four bytes of keccak256(signature), hex encoded.
std::string FunctionSelector(std::string_view signature);

}  // namespace solfi

#endif  // SOLFI_KECCAK_H_
