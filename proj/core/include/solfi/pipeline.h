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

#ifndef SOLFI_PIPELINE_H_
#define SOLFI_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "solfi/bench.h"
#include "solfi/classifier.h"
#include "solfi/harness.h"
#include "solfi/mutation_engine.h"
#include "solfi/workload.h"

namespace solfi {

// Campaign settings. Path-valued fields hold the text as configured and are
// resolved against `base_dir` when used.
struct CampaignConfig {
  std::string corpus_dir = "corpus";
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::size_t cap_per_function = kDefaultCapPerFunction;
  std::string gate_cmd = std::string(kDefaultGateCommand);
  std::string executor = "mock";  // "mock" or "rpc"
  // Mock script path for "mock", node URL for "rpc".
  std::string endpoint;
  std::uint64_t gas_limit = kDefaultGasLimit;
  std::string slack_lines = "0";  // line count or "file-level"
  std::vector<std::string> tools = {"Securify", "Slither", "Mythril"};
  std::string mapping;  // empty: the bundled mapping
  std::string reports_dir;  // empty: <campaign>/reports
  // Tool name -> command template with {file} and {out} placeholders.
  std::map<std::string, std::string> tool_commands;
  bool compare_read_set = false;
  std::size_t jobs = 1;
  std::filesystem::path base_dir = ".";

  std::filesystem::path Resolve(const std::string& path) const;
  std::filesystem::path CampaignDir() const { return Resolve(out_dir); }
};

// Applies `key = value` lines; '#' starts a comment. Throws ConfigError.
void ApplyConfigText(CampaignConfig& config, std::string_view text);
// Sets one key. Throws ConfigError for unknown keys and bad values.
void SetConfigValue(CampaignConfig& config, std::string_view key, std::string_view value);
// SOLFI_RPC_ENDPOINT and SOLFI_GATE_CMD.
void ApplyEnvironment(CampaignConfig& config);

// Canonical JSON of every field that affects outputs.
std::string CanonicalConfigJson(const CampaignConfig& config);
// First 16 hex digits of keccak256 over the canonical JSON.
std::string ConfigHash(const CampaignConfig& config);

// ISO-8601 UTC from SOURCE_DATE_EPOCH when set, else the current time.
std::string CampaignTimestamp();

// The mapping bundled at build time.
std::string_view BundledMappingCsv();
ToolMapping LoadMapping(const CampaignConfig& config);

// Campaign directory layout.
struct CampaignLayout {
  std::filesystem::path root;
  std::filesystem::path reports;  // <reports>/<tool>/<subject>.json
  std::filesystem::path Manifest() const { return root / "manifest.json"; }
  std::filesystem::path Original(const std::string& contract_id) const {
    return root / "originals" / (contract_id + ".sol");
  }
  std::filesystem::path WorkloadFile(const std::string& contract_id) const {
    return root / "workloads" / (contract_id + ".json");
  }
  std::filesystem::path GoldenRun(const std::string& contract_id) const {
    return root / "runs" / "golden" / (contract_id + ".jsonl");
  }
  std::filesystem::path MutantRun(const std::string& mutant_id) const {
    return root / "runs" / "mutants" / (mutant_id + ".jsonl");
  }
  std::filesystem::path Profiles() const { return root / "profiles.json"; }
  std::filesystem::path ImpactCsv() const { return root / "impact.csv"; }
  std::filesystem::path Summary() const { return root / "summary.json"; }
  std::filesystem::path Report(const std::string& tool, const std::string& subject) const;
  std::filesystem::path Alerts() const { return root / "bench" / "alerts.jsonl"; }
  std::filesystem::path BenchDir() const { return root / "bench"; }
  std::filesystem::path ReportDir() const { return root / "report"; }
};

CampaignLayout LayoutFor(const CampaignConfig& config);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitEmpty = 2;

struct InjectResult {
  MutationManifest manifest;
  std::size_t failed_contracts = 0;
  int exit_code = kExitOk;  // kExitEmpty when no mutant compiled
};

// Parses every corpus .sol file in name order, writes canonical originals and
// mutants, gates each mutant and writes the manifest.
InjectResult CmdInject(const CampaignConfig& config);

struct WorkloadResult {
  std::vector<Workload> workloads;
  int exit_code = kExitOk;
};

// One workload per manifest contract, generated from its canonical original.
WorkloadResult CmdWorkload(const CampaignConfig& config);

struct RunResult {
  std::vector<std::string> order;  // run ids in execution order
  std::size_t golden_runs = 0;
  std::size_t mutant_runs = 0;
  std::size_t skipped_mutants = 0;  // not Compiled
  std::size_t incomplete = 0;
  int exit_code = kExitOk;
};

// Golden runs for every contract, then runs for Compiled mutants.
RunResult CmdRun(const CampaignConfig& config);

struct ClassifyResult {
  std::vector<MutantImpactProfile> profiles;
  CampaignSummary summary;
  std::size_t missing_golden = 0;
  int exit_code = kExitOk;
};

// A mutant whose golden or own run is missing gets every transaction Skipped.
ClassifyResult CmdClassify(const CampaignConfig& config);

std::string ProfilesToJson(const std::vector<MutantImpactProfile>& profiles,
                           std::string_view config_hash);
// Throws SchemaError.
std::vector<MutantImpactProfile> ProfilesFromJson(std::string_view text);

struct BenchIngestResult {
  std::vector<ToolReports> reports;
  std::size_t alerts = 0;
  std::size_t missing_reports = 0;
  std::size_t failed_reports = 0;
};

// Runs configured tool commands for absent reports, then parses every
// report and writes the unified alert file.
BenchIngestResult CmdBenchIngest(const CampaignConfig& config);

std::string AlertsToJsonl(const std::vector<ToolReports>& reports,
                          std::string_view config_hash);
// Throws FormatError.
std::vector<ToolReports> AlertsFromJsonl(std::string_view text,
                                         const std::vector<std::string>& tools);

enum class BenchStage { All, Score, Elusive, Crosstab };

struct BenchResult {
  ScoreResult score;
  int exit_code = kExitOk;
};

// Scores the unified alerts (ingesting first when absent) and writes the
// files of `stage`.
BenchResult CmdBench(const CampaignConfig& config, BenchStage stage);

// Plot-ready verdict, mode-presence and overhead tables from the profiles.
int CmdReport(const CampaignConfig& config);

}  // namespace solfi

#endif  // SOLFI_PIPELINE_H_
