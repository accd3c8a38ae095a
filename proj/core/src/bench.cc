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

#include "solfi/bench.h"

#include <algorithm>
#include <array>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "io_util.h"
#include "json.hpp"
#include "solfi/error.h"

namespace solfi {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 3> kKnownTools = {"Securify", "Slither",
                                                        "Mythril"};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string Number(const std::optional<double>& v) {
  return v ? fmt::format("{:.6f}", *v) : "";
}

std::optional<std::size_t> LineOf(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return v.get<std::size_t>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) return std::stoull(s);
  }
  return std::nullopt;
}

std::string Text(const json& entry, const char* key) {
  auto it = entry.find(key);
  return it != entry.end() && it->is_string() ? it->get<std::string>() : "";
}

struct Ingest {
  std::string tool;
  std::string subject;
  std::vector<Alert> alerts;
  std::size_t skipped = 0;

  void Add(std::string detector, std::optional<std::size_t> line, std::string message) {
    if (detector.empty()) {
      ++skipped;
      return;
    }
    alerts.push_back({tool, subject, std::move(detector), line, std::move(message)});
  }

  // {"check"|"pattern"|"detector", "line"|"lineno", "description"|"message"}
  void Flat(const json& entry) {
    if (!entry.is_object()) {
      ++skipped;
      return;
    }
    std::string detector = Text(entry, "detector");
    for (const char* key : {"check", "pattern", "swc-id"}) {
      if (detector.empty()) detector = Text(entry, key);
    }
    std::optional<std::size_t> line;
    for (const char* key : {"line", "lineno"}) {
      if (!line && entry.contains(key)) line = LineOf(entry[key]);
    }
    std::string message = Text(entry, "message");
    if (message.empty()) message = Text(entry, "description");
    Add(std::move(detector), line, std::move(message));
  }

  void Slither(const json& entry) {
    if (!entry.is_object() || !entry.contains("elements")) return Flat(entry);
    std::optional<std::size_t> line;
    if (entry.contains("line")) line = LineOf(entry["line"]);
    for (const auto& element : entry["elements"]) {
      if (line) break;
      if (!element.is_object()) continue;
      auto mapping = element.find("source_mapping");
      if (mapping == element.end() || !mapping->contains("lines")) continue;
      for (const auto& l : (*mapping)["lines"]) {
        auto candidate = LineOf(l);
        if (candidate && (!line || *candidate < *line)) line = candidate;
      }
    }
    Add(Text(entry, "check"), line, Text(entry, "description"));
  }

  void Mythril(const json& entry) {
    if (!entry.is_object()) {
      ++skipped;
      return;
    }
    std::string swc;
    if (entry.contains("swc-id")) {
      const json& id = entry["swc-id"];
      swc = id.is_string() ? id.get<std::string>() : id.is_number() ? id.dump() : "";
    } else {
      swc = Text(entry, "swcID");
    }
    if (!swc.empty() && !swc.starts_with("SWC-")) swc = "SWC-" + swc;
    std::optional<std::size_t> line;
    if (entry.contains("lineno")) line = LineOf(entry["lineno"]);
    std::string message = Text(entry, "title");
    if (message.empty()) message = Text(entry, "description");
    Add(std::move(swc), line, std::move(message));
  }

  // {"<contract>": {"results": {"<pattern>": {"violations": [...], ...}}}}
  void SecurifyContract(const json& contract) {
    if (!contract.is_object() || !contract.contains("results") ||
        !contract["results"].is_object()) {
      ++skipped;
      return;
    }
    for (const auto& [pattern, result] : contract["results"].items()) {
      if (!result.is_object()) {
        ++skipped;
        continue;
      }
      for (const char* kind : {"violations", "warnings"}) {
        if (!result.contains(kind)) continue;
        for (const auto& l : result[kind]) {
          auto line = LineOf(l);
          if (!line) {
            ++skipped;
            continue;
          }
          Add(pattern, line, kind);
        }
      }
    }
  }
};

}  // namespace

std::string CanonicalTool(std::string_view name) {
  for (auto known : kKnownTools) {
    if (Lower(name) == Lower(known)) return std::string(known);
  }
  return std::string(name);
}

bool ToolLess(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& t) {
    auto it = std::find(kKnownTools.begin(), kKnownTools.end(), t);
    return static_cast<std::size_t>(it - kKnownTools.begin());
  };
  return std::make_pair(rank(a), a) < std::make_pair(rank(b), b);
}

ToolMapping::ToolMapping(std::vector<MappingEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    index_.emplace(e.tool, e.detector, e.fault);
    designed_.emplace(e.tool, e.fault);
  }
}

ToolMapping ToolMapping::FromCsv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<MappingEntry> entries;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed.starts_with("#")) continue;
    std::vector<std::string> cells;
    std::istringstream row(trimmed);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(Trim(cell));
    if (header) {
      header = false;
      if (cells != std::vector<std::string>{"tool", "detector", "fault_id"}) {
        throw SchemaError("mapping header must be tool,detector,fault_id");
      }
      continue;
    }
    if (cells.size() != 3 || cells[0].empty() || cells[1].empty()) {
      throw SchemaError("mapping line " + std::to_string(line_no) + " is malformed");
    }
    auto fault = ParseFaultId(cells[2]);
    if (!fault) {
      throw SchemaError("mapping line " + std::to_string(line_no) + ": unknown fault " +
                        cells[2]);
    }
    entries.push_back({CanonicalTool(cells[0]), cells[1], *fault});
  }
  if (header) throw SchemaError("mapping file is empty");
  return ToolMapping(std::move(entries));
}

ToolMapping ToolMapping::Load(const std::filesystem::path& path) {
  return FromCsv(ReadFile(path));
}

bool ToolMapping::Maps(const std::string& tool, const std::string& detector,
                       FaultId fault) const {
  return index_.contains({tool, detector, fault});
}

bool ToolMapping::DesignedFor(const std::string& tool, FaultId fault) const {
  return designed_.contains({tool, fault});
}

std::vector<std::string> ToolMapping::Tools() const {
  std::set<std::string> tools;
  for (const auto& e : entries_) tools.insert(e.tool);
  std::vector<std::string> out(tools.begin(), tools.end());
  std::sort(out.begin(), out.end(), ToolLess);
  return out;
}

std::vector<Alert> IngestReportText(std::string_view tool_name,
                                    std::string_view subject_id,
                                    std::string_view text) {
  std::string tool = CanonicalTool(tool_name);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(tool + " report for " + std::string(subject_id) +
                      " is not JSON: " + e.what());
  }
  Ingest ingest{tool, std::string(subject_id), {}, 0};
  auto each = [&](const json& list, auto member) {
    if (!list.is_array()) throw FormatError(tool + " report has a non-list entry set");
    for (const auto& entry : list) {
      try {
        (ingest.*member)(entry);
      } catch (const json::exception&) {
        ++ingest.skipped;
      }
    }
  };

  if (doc.is_object() && doc.contains("alerts")) {
    each(doc["alerts"], &Ingest::Flat);
  } else if (tool == "Slither" && doc.is_object()) {
    if (!doc.contains("results")) throw FormatError("Slither report has no results");
    const json& results = doc["results"];
    if (results.is_object() && results.contains("detectors")) {
      each(results["detectors"], &Ingest::Slither);
    } else if (!results.is_object() && !results.is_array()) {
      throw FormatError("Slither report has malformed results");
    }
  } else if (tool == "Mythril" && (doc.is_object() || doc.is_array())) {
    // Both the single-object and the per-file list layouts.
    json files = doc.is_array() ? doc : json::array({doc});
    bool any = false;
    for (const auto& file : files) {
      if (file.is_object() && file.contains("issues")) {
        any = true;
        each(file["issues"], &Ingest::Mythril);
      }
    }
    if (!any) throw FormatError("Mythril report has no issues list");
  } else if (tool == "Securify" && doc.is_object()) {
    for (const auto& [name, contract] : doc.items()) {
      try {
        ingest.SecurifyContract(contract);
      } catch (const json::exception&) {
        ++ingest.skipped;
      }
    }
  } else if (doc.is_array()) {
    each(doc, tool == "Slither" ? &Ingest::Slither
                                : tool == "Mythril" ? &Ingest::Mythril : &Ingest::Flat);
  } else {
    throw FormatError("unrecognised " + tool + " report layout");
  }
  if (ingest.skipped > 0) {
    spdlog::warn("{} report for {}: skipped {} unparseable entries", tool, subject_id,
                 ingest.skipped);
  }
  return std::move(ingest.alerts);
}

std::vector<Alert> IngestReport(std::string_view tool, std::string_view subject_id,
                                const std::filesystem::path& path) {
  return IngestReportText(tool, subject_id, ReadFile(path));
}

Slack ParseSlack(std::string_view text) {
  if (text == "file-level") return Slack::FileLevel();
  std::size_t lines = 0;
  if (text.empty() || !std::all_of(text.begin(), text.end(), ::isdigit)) {
    throw FormatError("slack must be a line count or file-level, got " + std::string(text));
  }
  for (char c : text) lines = lines * 10 + static_cast<std::size_t>(c - '0');
  return {lines, false};
}

bool MatchAlert(const Alert& alert, const Mutant& mutant, const ToolMapping& mapping,
                const Slack& slack) {
  if (!mapping.Maps(alert.tool, alert.detector, mutant.fault)) return false;
  if (slack.file_level) return true;
  if (!alert.line) return false;
  std::size_t distance =
      *alert.line > mutant.site_line ? *alert.line - mutant.site_line
                                     : mutant.site_line - *alert.line;
  return distance <= slack.lines;
}

bool DuplicatesParent(const Alert& alert, const std::vector<Alert>& parent) {
  return std::any_of(parent.begin(), parent.end(), [&](const Alert& p) {
    return p.detector == alert.detector && p.line == alert.line;
  });
}

ScoreResult Score(const std::vector<Mutant>& mutants,
                  const std::vector<ToolReports>& reports,
                  const ToolMapping& mapping, const Slack& slack) {
  ScoreResult result;
  result.mutants = mutants;
  for (const auto& r : reports) result.tools.push_back(r.tool);
  std::sort(result.tools.begin(), result.tools.end(), ToolLess);
  static const std::vector<Alert> kNone;
  for (const auto& mutant : mutants) {
    for (const auto& tool : result.tools) {
      const ToolReports& r =
          *std::find_if(reports.begin(), reports.end(),
                        [&](const ToolReports& x) { return x.tool == tool; });
      auto m = r.by_mutant.find(mutant.mutant_id);
      auto p = r.by_contract.find(mutant.contract_id);
      const auto& alerts = m == r.by_mutant.end() ? kNone : m->second;
      const auto& parent = p == r.by_contract.end() ? kNone : p->second;
      DetectionRecord record{mutant.mutant_id, mutant.fault, tool, false, std::nullopt,
                             mapping.DesignedFor(tool, mutant.fault)};
      for (const auto& alert : alerts) {
        JudgedAlert judged{alert, mutant.fault, record.designed_for,
                           DuplicatesParent(alert, parent), false};
        judged.true_positive =
            !judged.parent_duplicate && MatchAlert(alert, mutant, mapping, slack);
        if (judged.true_positive && !record.detected) {
          record.detected = true;
          record.matched_alert = alert;
        }
        result.alerts.push_back(std::move(judged));
      }
      result.records.push_back(std::move(record));
    }
  }
  return result;
}

std::optional<double> Percent(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) return std::nullopt;
  return 100.0 * static_cast<double>(numerator) / static_cast<double>(denominator);
}

ToolScore ScoreTool(const ScoreResult& result, const std::string& tool) {
  ToolScore score;
  for (const auto& r : result.records) {
    if (r.tool != tool || !r.designed_for) continue;
    ++score.designed_for;
    if (r.detected) ++score.detected;
  }
  for (const auto& a : result.alerts) {
    if (a.alert.tool != tool || !a.designed_for || a.parent_duplicate) continue;
    ++score.alerts;
    if (a.true_positive) ++score.true_positive_alerts;
  }
  return score;
}

VennRegions Venn(const std::vector<DetectionRecord>& records,
                 const std::vector<std::string>& tools, VennMode mode) {
  VennRegions regions;
  std::size_t n = tools.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::set<std::string> region;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) region.insert(tools[i]);
    }
    regions[region] = 0;
  }
  struct Flags {
    std::set<std::string> detected;
    std::set<std::string> designed;
  };
  std::map<std::string, Flags> by_mutant;
  for (const auto& r : records) {
    if (std::find(tools.begin(), tools.end(), r.tool) == tools.end()) continue;
    auto& f = by_mutant[r.mutant_id];
    if (r.detected) f.detected.insert(r.tool);
    if (r.designed_for) f.designed.insert(r.tool);
  }
  for (const auto& [id, f] : by_mutant) {
    if (f.detected.empty()) continue;
    if (mode == VennMode::CommonFaults && f.designed.size() != tools.size()) continue;
    ++regions[f.detected];
  }
  return regions;
}

std::string RegionName(const std::set<std::string>& region) {
  std::vector<std::string> ordered(region.begin(), region.end());
  std::sort(ordered.begin(), ordered.end(), ToolLess);
  std::string out;
  for (const auto& t : ordered) out += (out.empty() ? "" : "&") + t;
  return out;
}

ElusiveResult Elusive(const ScoreResult& result) {
  std::set<std::string> detected;
  for (const auto& r : result.records) {
    if (r.detected) detected.insert(r.mutant_id);
  }
  ElusiveResult out;
  for (const auto& m : result.mutants) {
    ++out.scanned;
    auto& f = out.per_fault[m.fault];
    ++f.generated;
    if (!detected.contains(m.mutant_id)) {
      ++f.undetected;
      out.mutants.push_back(m.mutant_id);
    }
  }
  return out;
}

std::size_t SeverityRow::Count(Verdict v) const {
  switch (v) {
    case Verdict::CorrectnessFailure: return correctness;
    case Verdict::IntegrityFailure: return integrity;
    case Verdict::LatentIntegrityFailure: return latent;
    default: return 0;
  }
}

std::optional<double> SeverityRow::RatioPct(Verdict v) const {
  return Percent(Count(v), transactions);
}

std::map<FaultId, SeverityRow> SeverityCrosstab(
    const std::vector<std::string>& elusive,
    const std::vector<MutantImpactProfile>& profiles) {
  std::set<std::string> wanted(elusive.begin(), elusive.end());
  std::map<FaultId, SeverityRow> rows;
  for (const auto& p : profiles) {
    if (!wanted.contains(p.mutant_id) || p.deploy_failed) continue;
    auto& row = rows[p.fault];
    ++row.mutants;
    row.correctness += p.counts.at(Verdict::CorrectnessFailure);
    row.integrity += p.counts.at(Verdict::IntegrityFailure);
    row.latent += p.counts.at(Verdict::LatentIntegrityFailure);
    row.transactions += p.transactions_total - p.counts.at(Verdict::Skipped);
  }
  return rows;
}

BenchOutputs RenderBench(const ScoreResult& result,
                         const std::vector<MutantImpactProfile>& profiles,
                         std::string_view config_hash) {
  BenchOutputs out;
  const std::string hash_line = fmt::format("# config_hash: {}\n", config_hash);

  out.detection_csv = hash_line +
                      "mutant_id,fault,tool,designed_for,detected,detector,line\n";
  for (const auto& r : result.records) {
    std::string detector, line;
    if (r.matched_alert) {
      detector = r.matched_alert->detector;
      if (r.matched_alert->line) line = std::to_string(*r.matched_alert->line);
    }
    out.detection_csv += fmt::format("{},{},{},{},{},{},{}\n", r.mutant_id,
                                     FaultName(r.fault), r.tool, r.designed_for ? 1 : 0,
                                     r.detected ? 1 : 0, detector, line);
  }

  json venn = json::object();
  venn["config_hash"] = config_hash;
  venn["tools"] = result.tools;
  for (auto [key, mode] : {std::pair{"all_designed_for", VennMode::AllDesignedFor},
                           std::pair{"common_faults", VennMode::CommonFaults}}) {
    json regions = json::array();
    for (const auto& [region, count] : Venn(result.records, result.tools, mode)) {
      regions.push_back({{"region", RegionName(region)}, {"count", count}});
    }
    std::sort(regions.begin(), regions.end(), [](const json& a, const json& b) {
      return a["region"].get<std::string>() < b["region"].get<std::string>();
    });
    venn[key] = regions;
  }
  out.venn_json = venn.dump(1) + "\n";

  ElusiveResult elusive = Elusive(result);
  std::map<std::string, const Mutant*> by_id;
  for (const auto& m : result.mutants) by_id[m.mutant_id] = &m;
  out.elusive_csv = hash_line + "mutant_id,contract_id,fault\n";
  for (const auto& id : elusive.mutants) {
    const Mutant& m = *by_id.at(id);
    out.elusive_csv += fmt::format("{},{},{}\n", id, m.contract_id, FaultName(m.fault));
  }

  auto crosstab = SeverityCrosstab(elusive.mutants, profiles);
  out.severity_csv = hash_line +
                     "fault,elusive_mutants,transactions,CorrectnessFailure,"
                     "IntegrityFailure,LatentIntegrityFailure,correctness_pct,"
                     "integrity_pct,latent_pct\n";
  const std::array<Verdict, 3> severe = {Verdict::CorrectnessFailure,
                                         Verdict::IntegrityFailure,
                                         Verdict::LatentIntegrityFailure};
  for (const auto& [fault, row] : crosstab) {
    out.severity_csv += fmt::format("{},{},{},{},{},{},{},{},{}\n", FaultName(fault),
                                    row.mutants, row.transactions, row.correctness,
                                    row.integrity, row.latent,
                                    Number(row.RatioPct(severe[0])),
                                    Number(row.RatioPct(severe[1])),
                                    Number(row.RatioPct(severe[2])));
  }

  std::string tools_csv = hash_line +
                          "tool,designed_for,detected,accuracy_pct,alerts,"
                          "true_positive_alerts,precision_pct\n";
  for (const auto& tool : result.tools) {
    ToolScore s = ScoreTool(result, tool);
    tools_csv += fmt::format("{},{},{},{},{},{},{}\n", tool, s.designed_for, s.detected,
                             Number(s.AccuracyPct()), s.alerts, s.true_positive_alerts,
                             Number(s.PrecisionPct()));
  }
  out.plots["tool_scores.csv"] = tools_csv;

  std::string by_fault = hash_line + "tool,fault,designed_for,detected,detected_pct\n";
  for (const auto& tool : result.tools) {
    std::map<FaultId, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : result.records) {
      if (r.tool != tool || !r.designed_for) continue;
      auto& c = counts[r.fault];
      ++c.first;
      if (r.detected) ++c.second;
    }
    for (const auto& [fault, c] : counts) {
      by_fault += fmt::format("{},{},{},{},{}\n", tool, FaultName(fault), c.first, c.second,
                              Number(Percent(c.second, c.first)));
    }
  }
  out.plots["detection_by_fault.csv"] = by_fault;

  std::string venn_long = hash_line + "mode,region,count\n";
  for (auto [key, mode] : {std::pair{"all_designed_for", VennMode::AllDesignedFor},
                           std::pair{"common_faults", VennMode::CommonFaults}}) {
    std::vector<std::pair<std::string, std::size_t>> rows;
    for (const auto& [region, count] : Venn(result.records, result.tools, mode)) {
      rows.emplace_back(RegionName(region), count);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [name, count] : rows) {
      venn_long += fmt::format("{},{},{}\n", key, name, count);
    }
  }
  out.plots["venn_regions.csv"] = venn_long;

  std::string elusive_long = hash_line + "fault,generated,undetected,undetected_pct\n";
  for (const auto& [fault, f] : elusive.per_fault) {
    elusive_long += fmt::format("{},{},{},{}\n", FaultName(fault), f.generated,
                                f.undetected, Number(f.UndetectedPct()));
  }
  out.plots["elusive_by_fault.csv"] = elusive_long;

  std::string severity_long = hash_line + "fault,mode,count,ratio_pct\n";
  for (const auto& [fault, row] : crosstab) {
    for (Verdict v : severe) {
      severity_long += fmt::format("{},{},{},{}\n", FaultName(fault), VerdictName(v),
                                   row.Count(v), Number(row.RatioPct(v)));
    }
  }
  out.plots["elusive_severity.csv"] = severity_long;
  return out;
}

void WriteBench(const BenchOutputs& outputs, const std::filesystem::path& dir) {
  WriteFile(dir / "detection.csv", outputs.detection_csv);
  WriteFile(dir / "venn.json", outputs.venn_json);
  WriteFile(dir / "elusive.csv", outputs.elusive_csv);
  WriteFile(dir / "severity.csv", outputs.severity_csv);
  for (const auto& [name, text] : outputs.plots) WriteFile(dir / "plots" / name, text);
}

}  // namespace solfi
