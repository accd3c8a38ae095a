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

#include <gtest/gtest.h>

#include "oracles.h"
#include "solfi/error.h"
#include "test_util.h"

namespace solfi {

void PrintTo(const MappingEntry& e, std::ostream* os) {
  *os << e.tool << "/" << e.detector << "/" << FaultName(e.fault);
}

void PrintTo(const Alert& a, std::ostream* os) {
  *os << a.tool << ":" << a.subject_id << ":" << a.detector << ":"
      << (a.line ? std::to_string(*a.line) : "-") << ":" << a.message;
}

namespace {

ToolMapping ShippedMapping() {
  return ToolMapping::Load(testing::SourceDir() / "data" / "tool_mapping.csv");
}

Mutant MakeMutant(std::string contract, FaultId fault, std::size_t ordinal,
                  std::size_t line) {
  Mutant m;
  m.contract_id = std::move(contract);
  m.fault = fault;
  m.ordinal = ordinal;
  m.mutant_id = MutantId(m.contract_id, fault, ordinal);
  m.site_line = line;
  m.gate_status = GateStatus::Compiled;
  return m;
}

Alert MakeAlert(std::string tool, std::string subject, std::string detector,
                std::optional<std::size_t> line) {
  return {std::move(tool), std::move(subject), std::move(detector), line, ""};
}

TEST(ToolMappingTest, EqualsPublishedTableCellForCell) {
  std::set<MappingEntry> expected;
  for (const auto& row : oracle::kToolMapping) {
    auto fault = ParseFaultId(row.fault);
    ASSERT_TRUE(fault) << row.fault;
    for (auto [tool, cell] : {std::pair{"Securify", row.securify},
                              std::pair{"Slither", row.slither},
                              std::pair{"Mythril", row.mythril}}) {
      if (cell != "-") expected.insert({tool, std::string(cell), *fault});
    }
  }
  ToolMapping mapping = ShippedMapping();
  const auto& entries = mapping.Entries();
  std::set<MappingEntry> actual(entries.begin(), entries.end());
  EXPECT_EQ(actual.size(), entries.size()) << "duplicate rows";
  EXPECT_EQ(actual, expected);
}

TEST(ToolMappingTest, EveryFaultRowRepresented) {
  std::set<std::string_view> rows;
  for (const auto& row : oracle::kToolMapping) rows.insert(row.fault);
  EXPECT_EQ(rows.size(), kFaultCount);
  for (FaultId f : AllFaults()) {
    EXPECT_TRUE(rows.contains(FaultName(f)) ||
                (f == FaultId::A_WIT && rows.contains("A_MIT")))
        << FaultName(f);
  }
}

TEST(ToolMappingTest, Lookups) {
  ToolMapping m = ShippedMapping();
  EXPECT_TRUE(m.Maps("Slither", "uninitialized-storage", FaultId::A_MISP));
  EXPECT_TRUE(m.Maps("Mythril", "SWC-109", FaultId::A_MISP));
  EXPECT_FALSE(m.Maps("Slither", "uninitialized-storage", FaultId::CH_WRA));
  EXPECT_TRUE(m.DesignedFor("Mythril", FaultId::A_MCV));
  EXPECT_FALSE(m.DesignedFor("Slither", FaultId::A_MCV));
  EXPECT_EQ(m.Tools(), (std::vector<std::string>{"Securify", "Slither", "Mythril"}));
}

TEST(ToolMappingTest, RejectsMalformedFiles) {
  EXPECT_THROW(ToolMapping::FromCsv(""), SchemaError);
  EXPECT_THROW(ToolMapping::FromCsv("a,b,c\n"), SchemaError);
  EXPECT_THROW(ToolMapping::FromCsv("tool,detector,fault_id\nSlither,x\n"), SchemaError);
  EXPECT_THROW(ToolMapping::FromCsv("tool,detector,fault_id\nSlither,x,NOPE\n"),
               SchemaError);
  auto m = ToolMapping::FromCsv("tool,detector,fault_id\nslither,x,A_MC\n");
  EXPECT_TRUE(m.Maps("Slither", "x", FaultId::A_MC));
}

TEST(IngestTest, SlitherFlatAndNative) {
  auto flat = IngestReportText("slither", "M",
                               R"([{"check":"uninitialized-storage","line":8}])");
  ASSERT_EQ(flat.size(), 1u);
  EXPECT_EQ(flat[0], MakeAlert("Slither", "M", "uninitialized-storage", 8));

  auto native = IngestReportText("Slither", "M", R"js({
    "success": true, "error": null,
    "results": {"detectors": [
      {"check": "tx-origin", "description": "uses tx.origin",
       "elements": [{"source_mapping": {"lines": [14, 12, 13]}}]},
      {"description": "no check field"},
      {"check": "reentrancy-eth", "elements": []}]}})js");
  ASSERT_EQ(native.size(), 2u);
  EXPECT_EQ(native[0].detector, "tx-origin");
  EXPECT_EQ(native[0].line, 12u);
  EXPECT_EQ(native[0].message, "uses tx.origin");
  EXPECT_FALSE(native[1].line.has_value());
  EXPECT_TRUE(IngestReportText("Slither", "M", R"({"success":true,"results":{}})").empty());
}

TEST(IngestTest, Mythril) {
  auto alerts = IngestReportText("Mythril", "M", R"js({
    "error": null, "success": true,
    "issues": [{"swc-id": "109", "lineno": 8, "title": "Uninitialized"},
               {"swc-id": 101, "lineno": "9"},
               "garbage",
               {"title": "no id"}]})js");
  ASSERT_EQ(alerts.size(), 2u);
  EXPECT_EQ(alerts[0], (Alert{"Mythril", "M", "SWC-109", 8, "Uninitialized"}));
  EXPECT_EQ(alerts[1], MakeAlert("Mythril", "M", "SWC-101", 9));
  EXPECT_TRUE(IngestReportText("Mythril", "M", R"({"issues":[]})").empty());
}

TEST(IngestTest, Securify) {
  auto alerts = IngestReportText("Securify", "M", R"js({
    "a.sol:Wallet": {"results": {
      "UninitializedStorage": {"violations": [8], "warnings": [], "safe": [3]},
      "TODAmount": {"violations": [], "warnings": [20, "x"]}}},
    "a.sol:Broken": 7})js");
  ASSERT_EQ(alerts.size(), 2u);
  EXPECT_EQ(alerts[0].detector, "TODAmount");
  EXPECT_EQ(alerts[0].line, 20u);
  EXPECT_EQ(alerts[1].detector, "UninitializedStorage");
  EXPECT_EQ(alerts[1].line, 8u);
}

TEST(IngestTest, GenericAndErrors) {
  auto alerts = IngestReportText(
      "custom", "M", R"({"alerts":[{"detector":"d","line":3,"message":"m"},{}]})");
  ASSERT_EQ(alerts.size(), 1u);
  EXPECT_EQ(alerts[0], (Alert{"custom", "M", "d", 3, "m"}));
  EXPECT_THROW(IngestReportText("Slither", "M", "not json"), FormatError);
  EXPECT_THROW(IngestReportText("Mythril", "M", R"({"x":1})"), FormatError);
  EXPECT_THROW(IngestReportText("custom", "M", "42"), FormatError);
  EXPECT_THROW(IngestReport("Slither", "M", "/nonexistent/report.json"), IoError);
}

TEST(MatchAlertTest, MappingAndSlack) {
  ToolMapping m = ShippedMapping();
  Mutant misp = MakeMutant("pay", FaultId::A_MISP, 0, 8);
  Mutant wra = MakeMutant("pay", FaultId::CH_WRA, 0, 8);
  Alert a = MakeAlert("Slither", misp.mutant_id, "uninitialized-storage", 8);
  EXPECT_TRUE(MatchAlert(a, misp, m, {}));
  EXPECT_FALSE(MatchAlert(a, wra, m, {}));
  a.line = 12;
  EXPECT_FALSE(MatchAlert(a, misp, m, {2}));
  EXPECT_TRUE(MatchAlert(a, misp, m, {4}));
  a.line = 4;
  EXPECT_TRUE(MatchAlert(a, misp, m, {4}));
  EXPECT_FALSE(MatchAlert(a, misp, m, {3}));
  a.line.reset();
  EXPECT_FALSE(MatchAlert(a, misp, m, {1000}));
  EXPECT_TRUE(MatchAlert(a, misp, m, Slack::FileLevel()));
  Alert unmapped = MakeAlert("Slither", misp.mutant_id, "reentrancy-eth", 8);
  EXPECT_FALSE(MatchAlert(unmapped, misp, m, Slack::FileLevel()));
}

TEST(MatchAlertTest, ParseSlack) {
  EXPECT_EQ(ParseSlack("3").lines, 3u);
  EXPECT_FALSE(ParseSlack("0").file_level);
  EXPECT_TRUE(ParseSlack("file-level").file_level);
  EXPECT_THROW(ParseSlack("-1"), FormatError);
  EXPECT_THROW(ParseSlack(""), FormatError);
}

TEST(ScoreTest, ParentDuplicateIsDiscounted) {
  ToolMapping m = ShippedMapping();
  Mutant misp = MakeMutant("pay", FaultId::A_MISP, 0, 8);
  ToolReports slither{"Slither", {}, {}};
  slither.by_mutant[misp.mutant_id] = {
      MakeAlert("Slither", misp.mutant_id, "uninitialized-storage", 8)};
  auto fresh = Score({misp}, {slither}, m, {});
  ASSERT_EQ(fresh.records.size(), 1u);
  EXPECT_TRUE(fresh.records[0].detected);
  ASSERT_TRUE(fresh.records[0].matched_alert);
  EXPECT_EQ(fresh.records[0].matched_alert->line, 8u);

  slither.by_contract["pay"] = {MakeAlert("Slither", "pay", "uninitialized-storage", 8)};
  auto discounted = Score({misp}, {slither}, m, {});
  EXPECT_FALSE(discounted.records[0].detected);
  EXPECT_TRUE(discounted.alerts[0].parent_duplicate);

  slither.by_contract["pay"] = {MakeAlert("Slither", "pay", "uninitialized-storage", 9)};
  EXPECT_TRUE(Score({misp}, {slither}, m, {}).records[0].detected);
}

TEST(ScoreTest, MissingReportIsUndetectedAndDetectedImpliesDesignedFor) {
  ToolMapping m = ShippedMapping();
  Mutant mcv = MakeMutant("c", FaultId::A_MCV, 0, 5);
  ToolReports slither{"Slither", {}, {}};
  // A mapped detector of some other fault never makes an undesigned tool detect.
  slither.by_mutant[mcv.mutant_id] = {MakeAlert("Slither", mcv.mutant_id, "void-cst", 5)};
  ToolReports mythril{"Mythril", {}, {}};
  auto r = Score({mcv}, {mythril, slither}, m, {});
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].tool, "Slither");
  EXPECT_FALSE(r.records[0].designed_for);
  EXPECT_FALSE(r.records[0].detected);
  EXPECT_EQ(r.records[1].tool, "Mythril");
  EXPECT_TRUE(r.records[1].designed_for);
  EXPECT_FALSE(r.records[1].detected);
  for (const auto& rec : r.records) EXPECT_TRUE(!rec.detected || rec.designed_for);
}

TEST(ToolScoreTest, AccuracyAndPrecision) {
  EXPECT_NEAR(*Percent(516, 7382), 6.99, 0.01);
  EXPECT_NEAR(*Percent(8100, 55090), 14.70, 0.01);
  EXPECT_NEAR(*Percent(6902, 397236), 1.74, 0.01);
  EXPECT_FALSE(Percent(1, 0).has_value());

  ToolMapping m = ShippedMapping();
  std::vector<Mutant> mutants;
  ToolReports slither{"Slither", {}, {}};
  for (std::size_t i = 0; i < 10; ++i) {
    mutants.push_back(MakeMutant("c", FaultId::A_MISP, i, 8));
    slither.by_mutant[mutants.back().mutant_id] = {
        MakeAlert("Slither", mutants.back().mutant_id, "reentrancy-eth", 8)};
  }
  ToolScore none = ScoreTool(Score(mutants, {slither}, m, {}), "Slither");
  EXPECT_EQ(none.AccuracyPct(), 0.0);
  EXPECT_EQ(none.PrecisionPct(), 0.0);
  slither.by_mutant[mutants[0].mutant_id].push_back(
      MakeAlert("Slither", mutants[0].mutant_id, "uninitialized-storage", 8));
  ToolScore one = ScoreTool(Score(mutants, {slither}, m, {}), "Slither");
  EXPECT_EQ(one.AccuracyPct(), 10.0);
  EXPECT_EQ(one.true_positive_alerts, 1u);
  EXPECT_EQ(one.alerts, 11u);
  EXPECT_GT(*one.PrecisionPct(), *none.PrecisionPct());
  EXPECT_FALSE(ScoreTool(Score({}, {slither}, m, {}), "Slither").AccuracyPct());
}

DetectionRecord Rec(const std::string& id, const std::string& tool, bool detected,
                    bool designed = true) {
  return {id, FaultId::A_MC, tool, detected, std::nullopt, designed};
}

TEST(VennTest, RegionsPartitionDetected) {
  std::vector<std::string> tools = {"Securify", "Slither", "Mythril"};
  std::vector<DetectionRecord> recs = {
      Rec("a", "Securify", true), Rec("a", "Slither", true),  Rec("a", "Mythril", false),
      Rec("b", "Securify", true), Rec("b", "Slither", false), Rec("b", "Mythril", false),
      Rec("c", "Securify", true), Rec("c", "Slither", true),  Rec("c", "Mythril", true),
      Rec("d", "Securify", false), Rec("d", "Slither", false), Rec("d", "Mythril", false),
      Rec("e", "Securify", false, false), Rec("e", "Slither", true),
      Rec("e", "Mythril", false)};
  auto all = Venn(recs, tools, VennMode::AllDesignedFor);
  EXPECT_EQ(all.size(), 7u);
  EXPECT_EQ((all[{"Securify", "Slither"}]), 1u);
  EXPECT_EQ((all[{"Securify"}]), 1u);
  EXPECT_EQ((all[{"Securify", "Slither", "Mythril"}]), 1u);
  EXPECT_EQ((all[{"Slither"}]), 1u);
  std::size_t sum = 0;
  for (const auto& [r, n] : all) sum += n;
  EXPECT_EQ(sum, 4u);
  auto common = Venn(recs, tools, VennMode::CommonFaults);
  EXPECT_EQ((common[{"Slither"}]), 0u);
  EXPECT_EQ(RegionName({"Mythril", "Securify"}), "Securify&Mythril");
}

TEST(ElusiveTest, ComplementAndPerFault) {
  ToolMapping m = ShippedMapping();
  std::vector<Mutant> mutants = {MakeMutant("c", FaultId::A_MISP, 0, 8),
                                 MakeMutant("c", FaultId::A_MISP, 1, 9),
                                 MakeMutant("c", FaultId::A_MCV, 0, 3)};
  ToolReports slither{"Slither", {}, {}};
  slither.by_mutant[mutants[0].mutant_id] = {
      MakeAlert("Slither", mutants[0].mutant_id, "uninitialized-storage", 8)};
  auto r = Score(mutants, {slither}, m, {});
  auto e = Elusive(r);
  EXPECT_EQ(e.mutants, (std::vector<std::string>{mutants[1].mutant_id,
                                                 mutants[2].mutant_id}));
  EXPECT_EQ(e.scanned, 3u);
  EXPECT_EQ(e.per_fault[FaultId::A_MISP].UndetectedPct(), 50.0);
  EXPECT_EQ(e.per_fault[FaultId::A_MCV].UndetectedPct(), 100.0);
  auto no_tools = Elusive(Score(mutants, {}, m, {}));
  EXPECT_EQ(no_tools.mutants.size(), 3u);
}

MutantImpactProfile Profile(const std::string& id, FaultId fault,
                            std::map<Verdict, std::size_t> counts) {
  MutantImpactProfile p;
  p.mutant_id = id;
  p.contract_id = "c";
  p.fault = fault;
  for (Verdict v : AllVerdicts()) p.counts[v] = 0;
  for (auto [v, n] : counts) {
    p.counts[v] = n;
    p.transactions_total += n;
  }
  return p;
}

TEST(SeverityTest, Crosstab) {
  auto quiet = SeverityCrosstab(
      {"x"}, {Profile("x", FaultId::A_WVN, {{Verdict::NoEffect, 5}})});
  ASSERT_EQ(quiet.size(), 1u);
  EXPECT_EQ(quiet[FaultId::A_WVN].latent, 0u);

  auto two = SeverityCrosstab(
      {"x", "y"},
      {Profile("x", FaultId::A_WVN, {{Verdict::NoEffect, 49}, {Verdict::LatentIntegrityFailure, 1}}),
       Profile("y", FaultId::A_WVN, {{Verdict::NoEffect, 49}, {Verdict::LatentIntegrityFailure, 1},
                                     {Verdict::Skipped, 7}}),
       Profile("z", FaultId::A_WVN, {{Verdict::LatentIntegrityFailure, 100}})});
  EXPECT_EQ(two[FaultId::A_WVN].transactions, 100u);
  EXPECT_EQ(two[FaultId::A_WVN].RatioPct(Verdict::LatentIntegrityFailure), 2.0);
}

TEST(RenderBenchTest, EmptyCampaignIsHeadersOnly) {
  auto out = RenderBench({}, {}, "h");
  EXPECT_EQ(out.detection_csv,
            "# config_hash: h\nmutant_id,fault,tool,designed_for,detected,detector,line\n");
  EXPECT_EQ(out.elusive_csv, "# config_hash: h\nmutant_id,contract_id,fault\n");
  EXPECT_EQ(std::count(out.severity_csv.begin(), out.severity_csv.end(), '\n'), 2);
  for (const auto& [name, text] : out.plots) {
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2) << name;
  }
}

TEST(RenderBenchTest, DeterministicAndSeverityRowsPerElusiveFault) {
  ToolMapping m = ShippedMapping();
  std::vector<Mutant> mutants = {MakeMutant("c", FaultId::A_MISP, 0, 8),
                                 MakeMutant("c", FaultId::A_WVN, 0, 9),
                                 MakeMutant("c", FaultId::A_MCV, 0, 3)};
  ToolReports slither{"Slither", {}, {}};
  slither.by_mutant[mutants[0].mutant_id] = {
      MakeAlert("Slither", mutants[0].mutant_id, "uninitialized-storage", 8)};
  std::vector<MutantImpactProfile> profiles;
  for (const auto& mu : mutants) {
    profiles.push_back(Profile(mu.mutant_id, mu.fault, {{Verdict::NoEffect, 3}}));
  }
  auto r = Score(mutants, {slither, ToolReports{"Mythril", {}, {}}}, m, {});
  auto a = RenderBench(r, profiles, "h");
  auto b = RenderBench(r, profiles, "h");
  EXPECT_EQ(a.detection_csv, b.detection_csv);
  EXPECT_EQ(a.venn_json, b.venn_json);
  EXPECT_EQ(a.plots, b.plots);
  // header lines + one row per elusive fault (A_WVN, A_MCV)
  EXPECT_EQ(std::count(a.severity_csv.begin(), a.severity_csv.end(), '\n'), 4);
  EXPECT_NE(a.detection_csv.find(mutants[0].mutant_id +
                                 ",A_MISP,Slither,1,1,uninitialized-storage,8\n"),
            std::string::npos);

  auto dir = std::filesystem::temp_directory_path() / "solfi_bench_test";
  std::filesystem::remove_all(dir);
  WriteBench(a, dir);
  EXPECT_EQ(testing::ReadText(dir / "venn.json"), a.venn_json);
  EXPECT_TRUE(std::filesystem::exists(dir / "plots" / "tool_scores.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace solfi
