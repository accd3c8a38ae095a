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

#ifndef SOLFI_SRC_TRACE_JSON_H_
#define SOLFI_SRC_TRACE_JSON_H_

#include "json.hpp"
#include "solfi/harness.h"

namespace solfi {

// Shared by run persistence and the mock script reader. Throws
// nlohmann::json::exception or FormatError on malformed input.
nlohmann::json TraceToJson(const TransactionTrace& trace);
// Fields absent from `j` keep their value in `base`.
TransactionTrace TraceFromJson(const nlohmann::json& j,
                               TransactionTrace base = {});
StorageMap StorageFromJson(const nlohmann::json& j);

}  // namespace solfi

#endif  // SOLFI_SRC_TRACE_JSON_H_
