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

#include "solfi/mutation_engine.h"

#include <algorithm>

#include "io_util.h"
#include "json.hpp"
#include "solfi/error.h"

namespace solfi {
namespace {

using nlohmann::json;

constexpr std::size_t kGateLogLimit = 2000;

std::string ReplaceAll(std::string text, std::string_view from,
                       const std::string& to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

template <typename T>
T Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field: ") + key);
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad field ") + key + ": " + e.what());
  }
}

json SpanToJson(const SourceSpan& span) {
  return {{"offset", span.offset}, {"length", span.length}, {"line", span.line}};
}

SourceSpan SpanFromJson(const json& j) {
  return {Field<std::size_t>(j, "offset"), Field<std::size_t>(j, "length"),
          Field<std::size_t>(j, "line")};
}

}  // namespace

std::string_view GateStatusName(GateStatus status) {
  switch (status) {
    case GateStatus::Compiled: return "Compiled";
    case GateStatus::CompileFailed: return "CompileFailed";
    case GateStatus::NotGated: return "NotGated";
  }
  return "";
}

std::optional<GateStatus> ParseGateStatus(std::string_view name) {
  for (auto s : {GateStatus::Compiled, GateStatus::CompileFailed,
                 GateStatus::NotGated}) {
    if (GateStatusName(s) == name) return s;
  }
  return std::nullopt;
}

std::string MutantId(std::string_view contract_id, FaultId fault,
                     std::size_t ordinal) {
  return std::string(contract_id) + "__" + std::string(FaultName(fault)) +
         "__" + std::to_string(ordinal);
}

std::vector<const FaultOperator*> AllOperators() {
  std::vector<const FaultOperator*> ops;
  for (const auto& op : Registry()) ops.push_back(&op);
  return ops;
}

std::vector<GeneratedMutant> GenerateMutants(
    std::string_view contract_id, const AstNode& unit,
    const std::vector<const FaultOperator*>& operators) {
  LineMap original_lines;
  Emit(unit, &original_lines);
  std::vector<GeneratedMutant> out;
  for (const FaultOperator* op : operators) {
    for (const auto& site : MatchSites(*op, unit)) {
      auto faulty = Apply(*op, unit, site);
      LineMap lines;
      GeneratedMutant generated;
      generated.text = Emit(*faulty, &lines);
      Mutant& m = generated.mutant;
      m.contract_id = std::string(contract_id);
      m.fault = op->id;
      m.ordinal = site.ordinal;
      m.mutant_id = MutantId(contract_id, op->id, site.ordinal);
      auto it = lines.find(site.anchor);
      m.site_line = it != lines.end() ? it->second
                                      : original_lines.at(site.anchor);
      m.site_span = site.span;
      m.source_path = (std::filesystem::path(std::string(contract_id)) /
                       std::string(FaultName(op->id)) /
                       (std::to_string(site.ordinal) + ".sol"))
                          .generic_string();
      out.push_back(std::move(generated));
    }
  }
  return out;
}

GateResult CompileGate(const std::filesystem::path& file,
                       std::string_view command_template) {
  std::string command = ReplaceAll(std::string(command_template), "{file}",
                                   ShellQuote(file.string()));
  command = ReplaceAll(command, "{dir}", ShellQuote(file.parent_path().string()));
  CommandResult run = RunShell(command);
  if (run.exit_code == 126 || run.exit_code == 127) {
    throw CompilerUnavailable("gate command unavailable (exit " +
                              std::to_string(run.exit_code) + "): " +
                              run.output.substr(0, 200));
  }
  GateResult result;
  result.exit_code = run.exit_code;
  result.status =
      run.exit_code == 0 ? GateStatus::Compiled : GateStatus::CompileFailed;
  result.log = run.output.substr(0, kGateLogLimit);
  return result;
}

std::string GateVersion(std::string_view command_template) {
  std::string tool(command_template.substr(0, command_template.find(' ')));
  if (tool.empty() || tool.find('{') != std::string::npos) return "unavailable";
  CommandResult run = RunShell(tool + " --version");
  if (run.exit_code != 0) return "unavailable";
  std::string text = run.output;
  // solc prints a banner line before the version line.
  auto pos = text.find("Version:");
  if (pos != std::string::npos) text = text.substr(pos);
  text = text.substr(0, text.find('\n'));
  return text.empty() ? "unavailable" : text;
}

std::map<FaultId, std::size_t> MutationManifest::FaultCounts() const {
  std::map<FaultId, std::size_t> counts;
  for (FaultId id : AllFaults()) counts[id] = 0;
  for (const auto& m : mutants) ++counts[m.fault];
  return counts;
}

const Mutant* MutationManifest::FindMutant(std::string_view mutant_id) const {
  for (const auto& m : mutants) {
    if (m.mutant_id == mutant_id) return &m;
  }
  return nullptr;
}

std::string ManifestToJson(const MutationManifest& manifest) {
  json j;
  j["schema_version"] = manifest.schema_version;
  j["campaign_id"] = manifest.campaign_id;
  j["config_hash"] = manifest.config_hash;
  j["timestamp"] = manifest.timestamp;
  j["gate"] = {{"command", manifest.gate_command},
               {"version", manifest.gate_version}};
  j["contracts"] = json::array();
  for (const auto& c : manifest.contracts) {
    j["contracts"].push_back({{"contract_id", c.contract_id},
                              {"source_path", c.source_path},
                              {"original_path", c.original_path}});
  }
  j["mutants"] = json::array();
  for (const auto& m : manifest.mutants) {
    j["mutants"].push_back({
        {"mutant_id", m.mutant_id},
        {"contract_id", m.contract_id},
        {"fault", FaultName(m.fault)},
        {"ordinal", m.ordinal},
        {"site_line", m.site_line},
        {"site_span", SpanToJson(m.site_span)},
        {"source_path", m.source_path},
        {"gate_status", GateStatusName(m.gate_status)},
        {"gate_log", m.gate_log},
    });
  }
  json counts = json::object();
  for (const auto& [id, n] : manifest.FaultCounts()) counts[FaultName(id)] = n;
  j["fault_counts"] = counts;
  return j.dump(2) + "\n";
}

MutationManifest ManifestFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("manifest is not JSON: ") + e.what());
  }
  MutationManifest m;
  m.schema_version = Field<int>(j, "schema_version");
  if (m.schema_version != kManifestSchemaVersion) {
    throw SchemaError("unsupported manifest schema_version " +
                      std::to_string(m.schema_version));
  }
  m.campaign_id = Field<std::string>(j, "campaign_id");
  m.config_hash = Field<std::string>(j, "config_hash");
  m.timestamp = Field<std::string>(j, "timestamp");
  const json& gate = Field<json>(j, "gate");
  m.gate_command = Field<std::string>(gate, "command");
  m.gate_version = Field<std::string>(gate, "version");
  for (const auto& c : Field<json>(j, "contracts")) {
    m.contracts.push_back({Field<std::string>(c, "contract_id"),
                           Field<std::string>(c, "source_path"),
                           Field<std::string>(c, "original_path")});
  }
  for (const auto& jm : Field<json>(j, "mutants")) {
    Mutant mutant;
    mutant.mutant_id = Field<std::string>(jm, "mutant_id");
    mutant.contract_id = Field<std::string>(jm, "contract_id");
    auto fault = ParseFaultId(Field<std::string>(jm, "fault"));
    if (!fault) throw SchemaError("unknown fault in " + mutant.mutant_id);
    mutant.fault = *fault;
    mutant.ordinal = Field<std::size_t>(jm, "ordinal");
    mutant.site_line = Field<std::size_t>(jm, "site_line");
    mutant.site_span = SpanFromJson(Field<json>(jm, "site_span"));
    mutant.source_path = Field<std::string>(jm, "source_path");
    auto status = ParseGateStatus(Field<std::string>(jm, "gate_status"));
    if (!status) throw SchemaError("unknown gate_status in " + mutant.mutant_id);
    mutant.gate_status = *status;
    mutant.gate_log = Field<std::string>(jm, "gate_log");
    m.mutants.push_back(std::move(mutant));
  }
  const json& counts = Field<json>(j, "fault_counts");
  for (const auto& [id, n] : m.FaultCounts()) {
    if (Field<std::size_t>(counts, std::string(FaultName(id)).c_str()) != n) {
      throw SchemaError("fault_counts disagree with mutants for " +
                        std::string(FaultName(id)));
    }
  }
  return m;
}

void WriteManifest(const MutationManifest& manifest,
                   const std::filesystem::path& path) {
  WriteFile(path, ManifestToJson(manifest));
}

MutationManifest ReadManifest(const std::filesystem::path& path) {
  return ManifestFromJson(ReadFile(path));
}

}  // namespace solfi
