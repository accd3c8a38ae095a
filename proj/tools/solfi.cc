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

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "solfi/error.h"
#include "solfi/pipeline.h"

namespace {

using solfi::CampaignConfig;

struct Flags {
  std::string config_file;
  std::optional<std::string> corpus, out, gate_cmd, executor, endpoint, slack, tools,
      mapping, reports;
  std::optional<std::uint64_t> seed, gas_limit;
  std::optional<std::size_t> cap, jobs;
  bool compare_read_set = false;
  bool verbose = false;
  bool quiet = false;
};

void AddFlags(CLI::App& app, Flags& f) {
  app.add_option("-c,--config", f.config_file, "Key-value campaign config file");
  app.add_option("--corpus", f.corpus, "Directory of .sol contracts");
  app.add_option("-o,--out", f.out, "Campaign directory");
  app.add_option("--seed", f.seed, "Workload seed");
  app.add_option("--cap", f.cap, "Calls per function (default 1500)");
  app.add_option("--gate-cmd", f.gate_cmd, "Compiler command template with {file}, {dir}");
  app.add_option("--executor", f.executor, "mock or rpc")->check(CLI::IsMember({"mock", "rpc"}));
  app.add_option("--endpoint", f.endpoint, "Mock script path or node URL");
  app.add_option("--gas-limit", f.gas_limit, "Gas limit per transaction");
  app.add_option("--slack-lines", f.slack, "Alert line slack, or file-level");
  app.add_option("--tools", f.tools, "Comma-separated verification tools");
  app.add_option("--mapping", f.mapping, "Detector mapping CSV");
  app.add_option("--reports", f.reports, "Tool report directory (<tool>/<subject>.json)");
  app.add_option("-j,--jobs", f.jobs, "Parallel workers")->check(CLI::PositiveNumber);
  app.add_flag("--compare-read-set", f.compare_read_set, "Compare read sets too");
  app.add_flag("-v,--verbose", f.verbose, "Debug logging");
  app.add_flag("-q,--quiet", f.quiet, "Warnings and errors only");
}

std::string ReadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw solfi::IoError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string Absolute(const std::string& path) {
  return std::filesystem::absolute(path).lexically_normal().string();
}

CampaignConfig BuildConfig(const Flags& f) {
  CampaignConfig c;
  if (!f.config_file.empty()) {
    std::filesystem::path path(f.config_file);
    c.base_dir = std::filesystem::absolute(path).parent_path();
    solfi::ApplyConfigText(c, ReadConfigFile(path));
  }
  solfi::ApplyEnvironment(c);
  auto set = [&](const char* key, const auto& value) {
    if (value) solfi::SetConfigValue(c, key, fmt::format("{}", *value));
  };
  if (f.corpus) set("corpus_dir", std::optional(Absolute(*f.corpus)));
  if (f.out) set("out_dir", std::optional(Absolute(*f.out)));
  if (f.mapping) set("mapping", std::optional(Absolute(*f.mapping)));
  if (f.reports) set("reports_dir", std::optional(Absolute(*f.reports)));
  set("seed", f.seed);
  set("cap_per_function", f.cap);
  set("gate_cmd", f.gate_cmd);
  set("executor", f.executor);
  if (f.endpoint) {
    bool is_url = f.endpoint->find("://") != std::string::npos;
    set("endpoint", std::optional(is_url ? *f.endpoint : Absolute(*f.endpoint)));
  }
  set("gas_limit", f.gas_limit);
  set("slack_lines", f.slack);
  set("tools", f.tools);
  set("jobs", f.jobs);
  if (f.compare_read_set) c.compare_read_set = true;
  return c;
}

std::string Pct(const std::optional<double>& v) {
  return v ? fmt::format("{:.2f}%", *v) : "n/a";
}

int Inject(const CampaignConfig& c) {
  auto r = solfi::CmdInject(c);
  std::size_t compiled = 0;
  for (const auto& m : r.manifest.mutants) {
    compiled += m.gate_status == solfi::GateStatus::Compiled;
  }
  std::size_t faults = 0;
  for (const auto& [fault, n] : r.manifest.FaultCounts()) faults += n > 0;
  fmt::print("inject: {} contracts, {} mutants covering {} fault ids, {} compiled\n",
             r.manifest.contracts.size(), r.manifest.mutants.size(), faults, compiled);
  return r.exit_code;
}

int Workload(const CampaignConfig& c) {
  auto r = solfi::CmdWorkload(c);
  std::size_t calls = 0;
  for (const auto& w : r.workloads) calls += w.calls.size();
  fmt::print("workload: {} workloads, {} calls\n", r.workloads.size(), calls);
  return r.exit_code;
}

int RunStage(const CampaignConfig& c) {
  auto r = solfi::CmdRun(c);
  fmt::print("run: {} golden, {} mutant runs, {} skipped mutants, {} incomplete\n",
             r.golden_runs, r.mutant_runs, r.skipped_mutants, r.incomplete);
  return r.exit_code;
}

int Classify(const CampaignConfig& c) {
  auto r = solfi::CmdClassify(c);
  fmt::print("classify: {} mutants ({} deploy failed), {} classified transactions\n",
             r.summary.mutants, r.summary.deploy_failed, r.summary.overall.Classified());
  for (solfi::Verdict v : solfi::AllVerdicts()) {
    if (v == solfi::Verdict::Skipped) continue;
    fmt::print("  {:<24} {:>8}  {}\n", solfi::VerdictName(v), r.summary.overall.counts.at(v),
               Pct(r.summary.overall.Share(v)));
  }
  return r.exit_code;
}

int Bench(const CampaignConfig& c, solfi::BenchStage stage) {
  auto r = solfi::CmdBench(c, stage);
  if (stage == solfi::BenchStage::All || stage == solfi::BenchStage::Score) {
    for (const auto& tool : r.score.tools) {
      auto s = solfi::ScoreTool(r.score, tool);
      fmt::print("{:<10} accuracy {} ({}/{})  precision {} ({}/{})\n", tool,
                 Pct(s.AccuracyPct()), s.detected, s.designed_for, Pct(s.PrecisionPct()),
                 s.true_positive_alerts, s.alerts);
    }
  }
  if (stage == solfi::BenchStage::All || stage == solfi::BenchStage::Elusive) {
    auto e = solfi::Elusive(r.score);
    fmt::print("elusive: {} of {} mutants ({})\n", e.mutants.size(), e.scanned,
               Pct(e.SharePct()));
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault injection and tool benchmarking for Solidity contracts", "solfi"};
  app.require_subcommand(1);
  Flags flags;
  AddFlags(app, flags);

  auto* inject = app.add_subcommand("inject", "Generate and gate mutants");
  auto* workload = app.add_subcommand("workload", "Generate workloads for originals");
  auto* run = app.add_subcommand("run", "Execute golden and mutant runs");
  auto* classify = app.add_subcommand("classify", "Classify runs into impact profiles");
  auto* bench = app.add_subcommand("bench", "Score verification-tool reports");
  auto* bench_ingest = bench->add_subcommand("ingest", "Normalize tool reports");
  auto* bench_score = bench->add_subcommand("score", "Detection, accuracy, precision, overlap");
  auto* bench_elusive = bench->add_subcommand("elusive", "Mutants no tool detected");
  auto* bench_crosstab = bench->add_subcommand("crosstab", "Severity of elusive mutants");
  auto* report = app.add_subcommand("report", "Plot-ready impact tables");
  auto* all = app.add_subcommand("all", "Every stage in order");
  for (auto* sub : {inject, workload, run, classify, bench, report, all, bench_ingest,
                    bench_score, bench_elusive, bench_crosstab}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return solfi::kExitInternal;
  }

  spdlog::set_default_logger(spdlog::stderr_color_mt("solfi"));
  spdlog::set_level(flags.verbose ? spdlog::level::debug
                                  : flags.quiet ? spdlog::level::warn : spdlog::level::info);
  try {
    CampaignConfig config = BuildConfig(flags);
    spdlog::debug("config {}: {}", solfi::ConfigHash(config),
                  solfi::CanonicalConfigJson(config));
    if (*inject) return Inject(config);
    if (*workload) return Workload(config);
    if (*run) return RunStage(config);
    if (*classify) return Classify(config);
    if (*report) {
      int code = solfi::CmdReport(config);
      fmt::print("report: written to {}\n",
                 solfi::LayoutFor(config).ReportDir().string());
      return code;
    }
    if (*bench) {
      if (*bench_ingest) {
        auto r = solfi::CmdBenchIngest(config);
        fmt::print("bench ingest: {} alerts, {} missing and {} unreadable reports\n",
                   r.alerts, r.missing_reports, r.failed_reports);
        return solfi::kExitOk;
      }
      if (*bench_score) return Bench(config, solfi::BenchStage::Score);
      if (*bench_elusive) return Bench(config, solfi::BenchStage::Elusive);
      if (*bench_crosstab) return Bench(config, solfi::BenchStage::Crosstab);
      return Bench(config, solfi::BenchStage::All);
    }
    int code = solfi::kExitOk;
    for (auto stage : {Inject, Workload, RunStage, Classify}) {
      code = stage(config);
      if (code != solfi::kExitOk) return code;
    }
    solfi::CmdBenchIngest(config);
    code = Bench(config, solfi::BenchStage::All);
    if (code != solfi::kExitOk) return code;
    return solfi::CmdReport(config);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return solfi::kExitInternal;
  }
}
