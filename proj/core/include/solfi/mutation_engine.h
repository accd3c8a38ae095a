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

#ifndef SOLFI_MUTATION_ENGINE_H_
#define SOLFI_MUTATION_ENGINE_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solfi/ast.h"
#include "solfi/fault_id.h"
#include "solfi/fault_model.h"

namespace solfi {

enum class GateStatus { Compiled, CompileFailed, NotGated };

std::string_view GateStatusName(GateStatus status);
std::optional<GateStatus> ParseGateStatus(std::string_view name);

struct Mutant {
  std::string mutant_id;  // <contract>__<faultId>__<ordinal>
  std::string contract_id;
  FaultId fault = FaultId::A_MISP;
  std::size_t ordinal = 0;
  std::size_t site_line = 0;
  SourceSpan site_span;
  std::string source_path;  // relative to the campaign directory
  GateStatus gate_status = GateStatus::NotGated;
  std::string gate_log;  // compiler output excerpt

  bool operator==(const Mutant&) const = default;
};

std::string MutantId(std::string_view contract_id, FaultId fault,
                     std::size_t ordinal);

struct GeneratedMutant {
  Mutant mutant;
  std::string text;
};

// One mutant per (operator, site), in operator order then site order.
// `site_line` is the anchor's line in the mutant text, or in the canonical
// original when the anchor was removed. `source_path` follows the campaign
// layout <contract>/<faultId>/<ordinal>.sol.
std::vector<GeneratedMutant> GenerateMutants(
    std::string_view contract_id, const AstNode& unit,
    const std::vector<const FaultOperator*>& operators);

// Every registry operator.
std::vector<const FaultOperator*> AllOperators();

struct GateResult {
  GateStatus status = GateStatus::NotGated;
  std::string log;
  int exit_code = -1;
};

inline constexpr std::string_view kDefaultGateCommand = "solc --bin {file}";

// Runs `command_template` through /bin/sh with {file} and {dir} replaced by
// the shell-quoted mutant path and its directory. Exit 0 -> Compiled, other
// exits -> CompileFailed. Throws CompilerUnavailable when the shell reports
// the command as missing or not executable (126/127).
GateResult CompileGate(const std::filesystem::path& file,
                       std::string_view command_template);

// First output line of the compiler's --version, or "unavailable".
std::string GateVersion(std::string_view command_template);

struct ContractEntry {
  std::string contract_id;
  std::string source_path;    // as given in the corpus
  std::string original_path;  // canonical copy inside the campaign
  bool operator==(const ContractEntry&) const = default;
};

inline constexpr int kManifestSchemaVersion = 1;

struct MutationManifest {
  int schema_version = kManifestSchemaVersion;
  std::string campaign_id;
  std::string config_hash;
  std::string timestamp;
  std::string gate_command;
  std::string gate_version;
  std::vector<ContractEntry> contracts;
  std::vector<Mutant> mutants;

  // Keyed by every FaultId, zero when absent.
  std::map<FaultId, std::size_t> FaultCounts() const;
  const Mutant* FindMutant(std::string_view mutant_id) const;

  bool operator==(const MutationManifest&) const = default;
};

std::string ManifestToJson(const MutationManifest& manifest);
// Throws SchemaError on version mismatch, missing fields, or fault counts
// that disagree with the mutant list.
MutationManifest ManifestFromJson(std::string_view json);

void WriteManifest(const MutationManifest& manifest,
                   const std::filesystem::path& path);
MutationManifest ReadManifest(const std::filesystem::path& path);

}  // namespace solfi

#endif  // SOLFI_MUTATION_ENGINE_H_
