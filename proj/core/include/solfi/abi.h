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

#ifndef SOLFI_ABI_H_
#define SOLFI_ABI_H_

#include <vector>

#include "solfi/keccak.h"
#include "solfi/value.h"

namespace solfi {

// Standard contract ABI encoding of a value tuple (head/tail layout).
// Throws UnsupportedType when a value does not type-check.
Bytes AbiEncode(const std::vector<SolType>& types,
                const std::vector<Value>& values);

// 4-byte selector of `signature` followed by the encoded arguments.
Bytes AbiEncodeCall(std::string_view signature,
                    const std::vector<SolType>& types,
                    const std::vector<Value>& values);

}  // namespace solfi

#endif  // SOLFI_ABI_H_
