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

#ifndef SOLFI_BENCH_H_
#define SOLFI_BENCH_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "solfi/classifier.h"
#include "solfi/fault_id.h"
#include "solfi/mutation_engine.h"

namespace solfi {

// "Securify", "Slither" and "Mythril" case-insensitively; any other name is
// returned unchanged.
std::string CanonicalTool(std::string_view name);

// Known tools first in their fixed order, then others by name.
bool ToolLess(const std::string& a, const std::string& b);

struct Alert {
  std::string tool;
  std::string subject_id;  // mutant_id, or contract_id for a parent report
  std::string detector;
  std::optional<std::size_t> line;
  std::string message;
  bool operator==(const Alert&) const = default;
};

struct MappingEntry {
  std::string tool;
  std::string detector;
  FaultId fault = FaultId::A_MISP;
  auto operator<=>(const MappingEntry&) const = default;
};

// (tool, detector) -> faults. A detector may map to several faults and a
// fault to several detectors of one tool.
class ToolMapping {
 public:
  ToolMapping() = default;
  explicit ToolMapping(std::vector<MappingEntry> entries);

  // Throws SchemaError on a malformed row or unknown fault id.
  static ToolMapping FromCsv(std::string_view text);
  static ToolMapping Load(const std::filesystem::path& path);

  bool Maps(const std::string& tool, const std::string& detector, FaultId fault) const;
  // The tool has at least one detector mapped to `fault`.
  bool DesignedFor(const std::string& tool, FaultId fault) const;
  std::vector<std::string> Tools() const;
  const std::vector<MappingEntry>& Entries() const { return entries_; }

 private:
  std::vector<MappingEntry> entries_;
  std::set<std::tuple<std::string, std::string, FaultId>> index_;
  std::set<std::pair<std::string, FaultId>> designed_;
};

// Parses one tool report. Recognised shapes:
//   Slither  {"results":{"detectors":[{"check","elements":[{"source_mapping":{"lines"}}]}]}}
//            or a list of {"check","line"}
//   Mythril  {"issues":[{"swc-id","lineno"}]}
//   Securify {"<contract>":{"results":{"<pattern>":{"violations":[lines],"warnings":[lines]}}}}
//            or a list of {"pattern","line"}
//   any tool {"alerts":[{"detector","line","message"}]}
// Entries that do not parse are logged and skipped. Throws FormatError when
// the text is not JSON or has none of these shapes.
std::vector<Alert> IngestReportText(std::string_view tool, std::string_view subject_id,
                                    std::string_view text);
// Also throws IoError.
std::vector<Alert> IngestReport(std::string_view tool, std::string_view subject_id,
                                const std::filesystem::path& path);

struct Slack {
  std::size_t lines = 0;
  // Any alert of a mapped detector matches, with or without a line.
  bool file_level = false;
  static Slack FileLevel() { return {0, true}; }
};

// Accepts a line count or "file-level". Throws FormatError.
Slack ParseSlack(std::string_view text);

bool MatchAlert(const Alert& alert, const Mutant& mutant, const ToolMapping& mapping,
                const Slack& slack);

// True when `parent` already carries an alert with the same detector and line.
bool DuplicatesParent(const Alert& alert, const std::vector<Alert>& parent);

struct DetectionRecord {
  std::string mutant_id;
  FaultId fault = FaultId::A_MISP;
  std::string tool;
  bool detected = false;
  std::optional<Alert> matched_alert;
  bool designed_for = false;
  bool operator==(const DetectionRecord&) const = default;
};

struct JudgedAlert {
  Alert alert;
  FaultId fault = FaultId::A_MISP;  // of the mutant the alert was raised on
  bool designed_for = false;
  bool parent_duplicate = false;
  bool true_positive = false;
};

// Reports for one tool. A missing mutant report counts as no alerts.
struct ToolReports {
  std::string tool;
  std::map<std::string, std::vector<Alert>> by_mutant;
  std::map<std::string, std::vector<Alert>> by_contract;  // parent reports
};

struct ScoreResult {
  std::vector<std::string> tools;
  std::vector<Mutant> mutants;
  std::vector<DetectionRecord> records;  // mutant order, then tool order
  std::vector<JudgedAlert> alerts;
};

ScoreResult Score(const std::vector<Mutant>& mutants,
                  const std::vector<ToolReports>& reports,
                  const ToolMapping& mapping, const Slack& slack);

// Percent, absent for an empty denominator.
std::optional<double> Percent(std::size_t numerator, std::size_t denominator);

struct ToolScore {
  std::size_t designed_for = 0;  // mutants
  std::size_t detected = 0;
  std::size_t alerts = 0;  // raised on designed-for mutants
  std::size_t true_positive_alerts = 0;
  std::optional<double> AccuracyPct() const { return Percent(detected, designed_for); }
  std::optional<double> PrecisionPct() const {
    return Percent(true_positive_alerts, alerts);
  }
};

ToolScore ScoreTool(const ScoreResult& result, const std::string& tool);

enum class VennMode {
  AllDesignedFor,  // every mutant some tool was designed for
  CommonFaults,    // mutants whose fault every tool was designed for
};

// Region key: the exact set of tools that detected a mutant. Every nonempty
// subset of `tools` is present.
using VennRegions = std::map<std::set<std::string>, std::size_t>;

VennRegions Venn(const std::vector<DetectionRecord>& records,
                 const std::vector<std::string>& tools, VennMode mode);
std::string RegionName(const std::set<std::string>& region);

struct FaultElusiveness {
  std::size_t generated = 0;
  std::size_t undetected = 0;
  std::optional<double> UndetectedPct() const { return Percent(undetected, generated); }
};

struct ElusiveResult {
  std::size_t scanned = 0;
  std::vector<std::string> mutants;  // detected by no tool
  std::map<FaultId, FaultElusiveness> per_fault;
  std::optional<double> SharePct() const { return Percent(mutants.size(), scanned); }
};

// Over every mutant of `result`, regardless of designed_for.
ElusiveResult Elusive(const ScoreResult& result);

struct SeverityRow {
  std::size_t correctness = 0;
  std::size_t integrity = 0;
  std::size_t latent = 0;
  std::size_t transactions = 0;  // classified transactions of elusive mutants
  std::size_t mutants = 0;
  std::size_t Count(Verdict v) const;
  // Percent of `transactions`.
  std::optional<double> RatioPct(Verdict v) const;
};

// Rows for every fault with at least one elusive mutant that has a profile.
std::map<FaultId, SeverityRow> SeverityCrosstab(
    const std::vector<std::string>& elusive,
    const std::vector<MutantImpactProfile>& profiles);

struct BenchOutputs {
  std::string detection_csv;
  std::string venn_json;
  std::string elusive_csv;
  std::string severity_csv;
  std::map<std::string, std::string> plots;  // file name -> contents
};

BenchOutputs RenderBench(const ScoreResult& result,
                         const std::vector<MutantImpactProfile>& profiles,
                         std::string_view config_hash);
// Writes the files under `dir` and plots under `dir`/plots.
void WriteBench(const BenchOutputs& outputs, const std::filesystem::path& dir);

}  // namespace solfi

#endif  // SOLFI_BENCH_H_
