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

#ifndef SOLFI_SRC_KEYED_RNG_H_
#define SOLFI_SRC_KEYED_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "solfi/keccak.h"
#include "solfi/value.h"

namespace solfi {

// mt19937_64 seeded from keccak256(key). Range reduction is done by hand so
// streams are identical across standard libraries.
class KeyedRng {
 public:
  explicit KeyedRng(std::string_view key) : engine_(SeedFrom(key)) {}

  std::uint64_t Next() { return engine_(); }
  std::uint64_t Below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  // Uniform non-negative integer with `bits` random bits.
  BigInt Bits(int bits) {
    BigInt out = 0;
    for (int done = 0; done < bits; done += 64) {
      std::uint64_t word = engine_();
      int take = bits - done < 64 ? bits - done : 64;
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      out |= BigInt(word) << done;
    }
    return out;
  }

 private:
  static std::uint64_t SeedFrom(std::string_view key) {
    auto digest = Keccak256(key);
    std::uint64_t seed = 0;
    for (int i = 0; i < 8; ++i) seed = (seed << 8) | digest[i];
    return seed;
  }

  std::mt19937_64 engine_;
};

}  // namespace solfi

#endif  // SOLFI_SRC_KEYED_RNG_H_
