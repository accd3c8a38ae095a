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

#include "solfi/pipeline.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include "solfi/error.h"
#include "test_util.h"

namespace solfi {
namespace {

namespace fs = std::filesystem;
using testing::ReadText;
using testing::SourceDir;
using testing::TempDir;
using testing::WriteText;

fs::path DemoDir() { return SourceDir() / "fixtures" / "demo"; }

CampaignConfig CorpusConfig(const fs::path& out, std::size_t cap = 3) {
  CampaignConfig c;
  c.corpus_dir = (SourceDir() / "fixtures" / "corpus").string();
  c.out_dir = out.string();
  c.cap_per_function = cap;
  c.gate_cmd = "test -f {file}";
  return c;
}

CampaignConfig DemoConfig(const fs::path& out) {
  CampaignConfig c;
  c.base_dir = DemoDir();
  ApplyConfigText(c, ReadText(DemoDir() / "campaign.conf"));
  c.out_dir = out.string();
  return c;
}

// Relative path -> contents for every regular file under `root`.
std::map<std::string, std::string> Snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      files[fs::relative(e.path(), root).generic_string()] = ReadText(e.path());
    }
  }
  return files;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    setenv(name, value, 1);
  }
  ~ScopedEnv() { unsetenv(name_); }

 private:
  const char* name_;
};

TEST(ConfigTest, ParsesKeyValueText) {
  CampaignConfig c;
  ApplyConfigText(c, R"(# comment
[campaign]
corpus_dir = contracts
seed = 42
cap_per_function = 7
gate_cmd = "solc --bin {file}"
tools = slither, MYTHRIL
slack_lines = file-level
compare_read_set = true
tool_cmd.slither = slither {file} --json {out}
jobs = 4
)");
  EXPECT_EQ(c.corpus_dir, "contracts");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.cap_per_function, 7u);
  EXPECT_EQ(c.gate_cmd, "solc --bin {file}");
  EXPECT_EQ(c.tools, (std::vector<std::string>{"Slither", "Mythril"}));
  EXPECT_EQ(c.slack_lines, "file-level");
  EXPECT_TRUE(c.compare_read_set);
  EXPECT_EQ(c.tool_commands.at("Slither"), "slither {file} --json {out}");
  EXPECT_EQ(c.jobs, 4u);
}

TEST(ConfigTest, RejectsBadValues) {
  CampaignConfig c;
  EXPECT_THROW(ApplyConfigText(c, "colour = blue\n"), ConfigError);
  EXPECT_THROW(ApplyConfigText(c, "executor = ganache\n"), ConfigError);
  EXPECT_THROW(ApplyConfigText(c, "cap_per_function = 0\n"), ConfigError);
  EXPECT_THROW(ApplyConfigText(c, "seed = -1\n"), ConfigError);
  EXPECT_THROW(ApplyConfigText(c, "slack_lines = near\n"), ConfigError);
  EXPECT_THROW(ApplyConfigText(c, "just words\n"), ConfigError);
}

TEST(ConfigTest, ResolvesAgainstBaseDir) {
  CampaignConfig c;
  c.base_dir = "/campaigns/a";
  EXPECT_EQ(c.Resolve("corpus"), fs::path("/campaigns/a/corpus"));
  EXPECT_EQ(c.Resolve("/abs/corpus"), fs::path("/abs/corpus"));
}

TEST(ConfigTest, EnvironmentOverrides) {
  ScopedEnv rpc("SOLFI_RPC_ENDPOINT", "http://node:8545");
  ScopedEnv gate("SOLFI_GATE_CMD", "true");
  CampaignConfig mock;
  mock.endpoint = "script.json";
  ApplyEnvironment(mock);
  EXPECT_EQ(mock.endpoint, "script.json");
  EXPECT_EQ(mock.gate_cmd, "true");
  CampaignConfig rpc_config;
  rpc_config.executor = "rpc";
  ApplyEnvironment(rpc_config);
  EXPECT_EQ(rpc_config.endpoint, "http://node:8545");
}

TEST(ConfigTest, HashIgnoresOutputPlacementOnly) {
  CampaignConfig a;
  CampaignConfig b = a;
  b.out_dir = "elsewhere";
  b.jobs = 8;
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
  b.seed = 1;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
  CampaignConfig d = a;
  d.slack_lines = "2";
  EXPECT_NE(ConfigHash(a), ConfigHash(d));
}

TEST(ConfigTest, BundledMappingMatchesDataFile) {
  EXPECT_EQ(BundledMappingCsv(), ReadText(SourceDir() / "data" / "tool_mapping.csv"));
  CampaignConfig c;
  EXPECT_EQ(LoadMapping(c).Entries(),
            ToolMapping::Load(SourceDir() / "data" / "tool_mapping.csv").Entries());
}

TEST(PipelineTest, InjectIsByteIdenticalAcrossRunsAndDirectories) {
  ScopedEnv epoch("SOURCE_DATE_EPOCH", "1700000000");
  TempDir a, b;
  auto ra = CmdInject(CorpusConfig(a.path() / "c"));
  ASSERT_EQ(ra.exit_code, kExitOk);
  auto first = Snapshot(a.path() / "c");
  CmdInject(CorpusConfig(a.path() / "c"));
  EXPECT_EQ(Snapshot(a.path() / "c"), first);
  CmdInject(CorpusConfig(b.path() / "c"));
  EXPECT_EQ(Snapshot(b.path() / "c"), first);
  EXPECT_TRUE(first.contains("manifest.json"));
  EXPECT_TRUE(first.contains("originals/vault.sol"));
}

TEST(PipelineTest, EveryGeneratedMutantHasAFile) {
  TempDir t;
  auto r = CmdInject(CorpusConfig(t.path() / "c"));
  ASSERT_FALSE(r.manifest.mutants.empty());
  for (const auto& m : r.manifest.mutants) {
    EXPECT_TRUE(fs::exists(t.path() / "c" / m.source_path)) << m.mutant_id;
    EXPECT_EQ(m.gate_status, GateStatus::Compiled);
  }
}

TEST(PipelineTest, EmptyCorpusExitsTwo) {
  TempDir t;
  fs::create_directories(t.path() / "corpus");
  CampaignConfig c = CorpusConfig(t.path() / "c");
  c.corpus_dir = (t.path() / "corpus").string();
  EXPECT_EQ(CmdInject(c).exit_code, kExitEmpty);
}

TEST(PipelineTest, MissingCorpusThrows) {
  TempDir t;
  CampaignConfig c = CorpusConfig(t.path() / "c");
  c.corpus_dir = (t.path() / "absent").string();
  EXPECT_THROW(CmdInject(c), IoError);
}

TEST(PipelineTest, FailedGateSkipsMutantsDownstream) {
  TempDir t;
  CampaignConfig c = CorpusConfig(t.path() / "c");
  c.gate_cmd = "false {file}";
  auto inject = CmdInject(c);
  EXPECT_EQ(inject.exit_code, kExitEmpty);
  for (const auto& m : inject.manifest.mutants) {
    EXPECT_EQ(m.gate_status, GateStatus::CompileFailed);
  }
  ASSERT_EQ(CmdWorkload(c).exit_code, kExitOk);
  auto run = CmdRun(c);
  EXPECT_EQ(run.mutant_runs, 0u);
  EXPECT_EQ(run.skipped_mutants, inject.manifest.mutants.size());
  EXPECT_EQ(run.golden_runs, inject.manifest.contracts.size());
  EXPECT_EQ(CmdClassify(c).exit_code, kExitEmpty);
}

TEST(PipelineTest, GoldenRunsPrecedeMutantRuns) {
  TempDir t;
  CampaignConfig c = CorpusConfig(t.path() / "c", 2);
  c.jobs = 3;
  auto inject = CmdInject(c);
  CmdWorkload(c);
  auto run = CmdRun(c);
  std::size_t contracts = inject.manifest.contracts.size();
  ASSERT_EQ(run.order.size(), contracts + inject.manifest.mutants.size());
  for (std::size_t i = 0; i < run.order.size(); ++i) {
    EXPECT_EQ(run.order[i].starts_with("golden/"), i < contracts) << run.order[i];
  }
}

TEST(PipelineTest, ParallelRunsMatchSerialRuns) {
  TempDir a, b;
  CampaignConfig serial = CorpusConfig(a.path() / "c", 2);
  CampaignConfig parallel = CorpusConfig(b.path() / "c", 2);
  parallel.jobs = 4;
  for (auto* c : {&serial, &parallel}) {
    CmdInject(*c);
    CmdWorkload(*c);
    CmdRun(*c);
    CmdClassify(*c);
  }
  EXPECT_EQ(ReadText(a.path() / "c" / "impact.csv"), ReadText(b.path() / "c" / "impact.csv"));
  EXPECT_EQ(Snapshot(a.path() / "c" / "runs"), Snapshot(b.path() / "c" / "runs"));
}

TEST(PipelineTest, MissingGoldenSkipsContractMutants) {
  TempDir t;
  CampaignConfig c = CorpusConfig(t.path() / "c", 2);
  auto inject = CmdInject(c);
  CmdWorkload(c);
  CmdRun(c);
  CampaignLayout layout = LayoutFor(c);
  fs::remove(layout.GoldenRun("vault"));
  auto r = CmdClassify(c);
  std::size_t vault = 0;
  for (const auto& p : r.profiles) {
    if (p.contract_id != "vault") continue;
    ++vault;
    EXPECT_EQ(p.counts.at(Verdict::Skipped), p.transactions_total) << p.mutant_id;
    EXPECT_GT(p.transactions_total, 0u);
  }
  EXPECT_EQ(r.missing_golden, vault);
  EXPECT_GT(vault, 0u);
}

TEST(PipelineTest, NoReportsMakesEveryMutantElusive) {
  TempDir t;
  CampaignConfig c = CorpusConfig(t.path() / "c", 1);
  auto inject = CmdInject(c);
  auto bench = CmdBench(c, BenchStage::All);
  auto e = Elusive(bench.score);
  EXPECT_EQ(e.scanned, inject.manifest.mutants.size());
  EXPECT_EQ(e.mutants.size(), inject.manifest.mutants.size());
  EXPECT_TRUE(fs::exists(LayoutFor(c).BenchDir() / "elusive.csv"));
}

TEST(PipelineTest, AlertsJsonlRoundTrip) {
  ToolReports slither{"Slither", {}, {}};
  slither.by_mutant["a__A_MC__0"] = {
      {"Slither", "a__A_MC__0", "uninitialized-state", 4, "msg"},
      {"Slither", "a__A_MC__0", "shadowing", std::nullopt, ""}};
  slither.by_contract["a"] = {{"Slither", "a", "uninitialized-state", 4, "msg"}};
  ToolReports mythril{"Mythril", {}, {}};
  mythril.by_mutant["a__A_MC__1"] = {{"Mythril", "a__A_MC__1", "SWC-118", 8, "x"}};
  std::string text = AlertsToJsonl({slither, mythril}, "abc");
  auto back = AlertsFromJsonl(text, {"Slither", "Mythril"});
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].tool, "Slither");
  EXPECT_EQ(back[0].by_mutant, slither.by_mutant);
  EXPECT_EQ(back[0].by_contract, slither.by_contract);
  EXPECT_EQ(back[1].by_mutant, mythril.by_mutant);
  EXPECT_EQ(AlertsToJsonl(back, "abc"), text);
  EXPECT_THROW(AlertsFromJsonl("not json\n", {"Slither"}), FormatError);
}

// Counts derived by hand from fixtures/demo/mock_script.json and the demo
// workloads (pay_supplier 5 calls, vault 11 calls).
TEST(DemoCampaignTest, ReproducesScriptedVerdicts) {
  TempDir t;
  CampaignConfig c = DemoConfig(t.path() / "demo");
  ASSERT_EQ(CmdInject(c).exit_code, kExitOk);
  ASSERT_EQ(CmdWorkload(c).exit_code, kExitOk);
  auto run = CmdRun(c);
  EXPECT_EQ(run.golden_runs, 2u);
  EXPECT_EQ(run.mutant_runs, 33u);
  EXPECT_EQ(run.incomplete, 1u);
  auto r = CmdClassify(c);
  const auto& counts = r.summary.overall.counts;
  EXPECT_EQ(r.summary.mutants, 33u);
  EXPECT_EQ(r.summary.deploy_failed, 1u);
  EXPECT_EQ(counts.at(Verdict::NoEffect), 249u);
  EXPECT_EQ(counts.at(Verdict::RevertFailure), 12u);
  EXPECT_EQ(counts.at(Verdict::AbortFailure), 5u);
  EXPECT_EQ(counts.at(Verdict::OutOfGasFailure), 2u);
  EXPECT_EQ(counts.at(Verdict::CorrectnessFailure), 5u);
  EXPECT_EQ(counts.at(Verdict::IntegrityFailure), 5u);
  EXPECT_EQ(counts.at(Verdict::LatentIntegrityFailure), 5u);
  EXPECT_EQ(counts.at(Verdict::Skipped), 33u);
  EXPECT_EQ(r.summary.overall.Classified(), 283u);
}

TEST(DemoCampaignTest, ScoresCannedReports) {
  TempDir t;
  CampaignConfig c = DemoConfig(t.path() / "demo");
  CmdInject(c);
  CmdWorkload(c);
  CmdRun(c);
  CmdClassify(c);
  auto ingest = CmdBenchIngest(c);
  EXPECT_EQ(ingest.failed_reports, 0u);
  auto bench = CmdBench(c, BenchStage::All);
  std::map<std::string, std::string> detected;  // mutant -> tool
  for (const auto& rec : bench.score.records) {
    if (rec.detected) detected[rec.mutant_id] += rec.tool;
  }
  EXPECT_EQ(detected, (std::map<std::string, std::string>{
                          {"pay_supplier__A_MISP__0", "Slither"},
                          {"vault__A_MC__0", "Mythril"},
                          {"vault__A_MILV__0", "Securify"}}));
  // The repeated parent alert is discounted; the unrelated one is a false positive.
  auto slither = ScoreTool(bench.score, "Slither");
  EXPECT_EQ(slither.alerts, 2u);
  EXPECT_EQ(slither.true_positive_alerts, 1u);
  EXPECT_EQ(Elusive(bench.score).mutants.size(), 30u);
  auto severity = SeverityCrosstab(Elusive(bench.score).mutants,
                                   CmdClassify(c).profiles);
  EXPECT_EQ(severity.at(FaultId::A_MCV).correctness, 5u);
  EXPECT_EQ(severity.at(FaultId::A_WVATMD).integrity, 5u);
  EXPECT_EQ(severity.at(FaultId::I_MVMSV).latent, 5u);
  // pay_supplier 5 plus vault 11 less the Skipped transaction.
  EXPECT_EQ(severity.at(FaultId::AL_WRAR).transactions, 15u);
  EXPECT_EQ(severity.at(FaultId::AL_WRAR).latent, 0u);
  for (const char* f : {"detection.csv", "venn.json", "elusive.csv", "severity.csv"}) {
    EXPECT_TRUE(fs::exists(LayoutFor(c).BenchDir() / f)) << f;
  }
  EXPECT_EQ(CmdReport(c), kExitOk);
  EXPECT_TRUE(fs::exists(LayoutFor(c).ReportDir() / "verdict_shares.csv"));
}

}  // namespace
}  // namespace solfi
