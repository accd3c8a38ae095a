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

#ifndef SOLFI_WORKLOAD_H_
#define SOLFI_WORKLOAD_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solfi/ast.h"
#include "solfi/value.h"

namespace solfi {

struct ParamSpec {
  std::string name;
  SolType type;
  std::string location;  // "none", "memory", "calldata", "storage"
  bool operator==(const ParamSpec&) const = default;
};

struct FunctionSignature {
  std::string name;
  std::vector<ParamSpec> params;
  std::string visibility;
  bool payable = false;

  // "f(uint256,bool)"
  std::string Canonical() const;
  bool operator==(const FunctionSignature&) const = default;
};

// The contract that gets deployed: the last contract of the unit.
const AstNode* MainContract(const AstNode& unit);

// Public/external functions of the main contract and its in-unit bases, in
// source order, constructors and fallback excluded; an override replaces the
// base definition. Functions with unsupported parameter types are skipped
// and their names appended to `skipped`.
std::vector<FunctionSignature> ExtractSignatures(
    const AstNode& unit, std::vector<std::string>* skipped = nullptr);

enum class Strategy { TypeBased, LiteralBased, Random };
std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct CallSpec {
  std::size_t seq = 0;
  std::string function;   // plain name
  std::string signature;  // canonical signature, disambiguates overloads
  std::vector<Value> args;
  Strategy strategy = Strategy::TypeBased;
  std::uint64_t value_wei = 0;
  bool operator==(const CallSpec&) const = default;
};

inline constexpr std::size_t kDefaultCapPerFunction = 1500;
inline constexpr std::string_view kDefaultSender =
    "0x1111111111111111111111111111111111111111";

struct Workload {
  std::string contract_id;
  std::string contract_name;
  std::uint64_t seed = 0;
  std::size_t cap_per_function = kDefaultCapPerFunction;
  std::string sender = std::string(kDefaultSender);
  std::vector<ParamSpec> constructor_params;
  std::vector<Value> constructor_args;
  std::vector<FunctionSignature> functions;
  std::vector<CallSpec> calls;
  std::string config_hash;  // empty when generated outside a campaign

  const FunctionSignature* FindFunction(std::string_view signature) const;
  bool operator==(const Workload&) const = default;
};

struct WorkloadOptions {
  std::uint64_t seed = 0;
  std::size_t cap_per_function = kDefaultCapPerFunction;
  std::string sender = std::string(kDefaultSender);
};

Workload GenerateWorkload(const AstNode& unit, std::string_view contract_id,
                          const WorkloadOptions& options = {});

// Per-strategy value lists used by the generator; exposed for testing.
std::vector<Value> TypeBasedValues(const SolType& type,
                                   std::string_view sender);
std::vector<Value> LiteralValues(const AstNode& function, const SolType& type);

inline constexpr int kWorkloadSchemaVersion = 1;

std::string WorkloadToJson(const Workload& workload);
// Throws SchemaError.
Workload WorkloadFromJson(std::string_view json);
void WriteWorkload(const Workload& workload, const std::filesystem::path& path);
Workload ReadWorkload(const std::filesystem::path& path);

}  // namespace solfi

#endif  // SOLFI_WORKLOAD_H_
