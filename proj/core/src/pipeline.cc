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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "io_util.h"
#include "json.hpp"
#include "solfi/error.h"
#include "solfi/keccak.h"
#include "solfi/mock_executor.h"
#include "solfi/rpc_executor.h"

namespace solfi {
namespace {

using nlohmann::json;

constexpr int kProfilesSchemaVersion = 1;
constexpr int kAlertsSchemaVersion = 1;

const std::set<std::string> kReservedNames = {"originals", "workloads", "runs",
                                              "reports",   "bench",     "report"};

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::uint64_t ParseUnsigned(std::string_view key, std::string_view value) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), ::isdigit)) {
    throw ConfigError(fmt::format("{} must be a non-negative integer, got '{}'", key, value));
  }
  try {
    return std::stoull(std::string(value));
  } catch (const std::out_of_range&) {
    throw ConfigError(fmt::format("{} is out of range: {}", key, value));
  }
}

bool ParseBool(std::string_view key, std::string_view value) {
  std::string v = Lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(fmt::format("{} must be true or false, got '{}'", key, value));
}

std::vector<std::string> SplitList(std::string_view value) {
  std::vector<std::string> out;
  std::istringstream in{std::string(value)};
  std::string item;
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(CanonicalTool(item));
  }
  return out;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
// exception after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i, w);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

std::unique_ptr<Executor> MakeExecutor(const CampaignConfig& config) {
  if (config.executor == "mock") {
    if (config.endpoint.empty()) return std::make_unique<MockExecutor>();
    return std::make_unique<MockExecutor>(
        MockExecutor::FromFile(config.Resolve(config.endpoint)));
  }
  RpcConfig rpc;
  if (!config.endpoint.empty()) rpc.endpoint = config.endpoint;
  return std::make_unique<RpcExecutor>(rpc);
}

MutantImpactProfile SkippedProfile(const Mutant& m, std::size_t transactions) {
  MutantImpactProfile p;
  p.mutant_id = m.mutant_id;
  p.contract_id = m.contract_id;
  p.fault = m.fault;
  for (Verdict v : AllVerdicts()) p.counts[v] = 0;
  p.counts[Verdict::Skipped] = transactions;
  p.transactions_total = transactions;
  return p;
}

// Warns when the manifest was produced under another configuration.
MutationManifest ReadCampaignManifest(const CampaignLayout& layout,
                                      const CampaignConfig& config) {
  MutationManifest manifest = ReadManifest(layout.Manifest());
  std::string hash = ConfigHash(config);
  if (!manifest.config_hash.empty() && manifest.config_hash != hash) {
    spdlog::warn("manifest config_hash {} differs from current {}", manifest.config_hash,
                 hash);
  }
  return manifest;
}

std::vector<const Mutant*> CompiledMutants(const MutationManifest& manifest) {
  std::vector<const Mutant*> out;
  for (const auto& m : manifest.mutants) {
    if (m.gate_status == GateStatus::Compiled) out.push_back(&m);
  }
  return out;
}

std::optional<RunRecord> TryReadRun(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return ReadRunRecord(path);
  } catch (const Error& e) {
    spdlog::warn("ignoring unreadable run {}: {}", path.string(), e.what());
    return std::nullopt;
  }
}

std::vector<MutantImpactProfile> ReadProfilesIfPresent(const CampaignLayout& layout) {
  if (!std::filesystem::exists(layout.Profiles())) return {};
  return ProfilesFromJson(ReadFile(layout.Profiles()));
}

}  // namespace

std::filesystem::path CampaignConfig::Resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

void SetConfigValue(CampaignConfig& c, std::string_view key, std::string_view raw) {
  std::string value = Trim(raw);
  if (key == "corpus_dir") {
    c.corpus_dir = value;
  } else if (key == "out_dir") {
    c.out_dir = value;
  } else if (key == "seed") {
    c.seed = ParseUnsigned(key, value);
  } else if (key == "cap_per_function") {
    c.cap_per_function = ParseUnsigned(key, value);
    if (c.cap_per_function == 0) throw ConfigError("cap_per_function must be positive");
  } else if (key == "gate_cmd") {
    c.gate_cmd = value;
  } else if (key == "executor") {
    if (value != "mock" && value != "rpc") {
      throw ConfigError("executor must be mock or rpc, got '" + value + "'");
    }
    c.executor = value;
  } else if (key == "endpoint") {
    c.endpoint = value;
  } else if (key == "gas_limit") {
    c.gas_limit = ParseUnsigned(key, value);
  } else if (key == "slack_lines") {
    try {
      ParseSlack(value);
    } catch (const FormatError& e) {
      throw ConfigError(e.what());
    }
    c.slack_lines = value;
  } else if (key == "tools") {
    c.tools = SplitList(value);
  } else if (key == "mapping") {
    c.mapping = value;
  } else if (key == "reports_dir") {
    c.reports_dir = value;
  } else if (key == "compare_read_set") {
    c.compare_read_set = ParseBool(key, value);
  } else if (key == "jobs") {
    c.jobs = ParseUnsigned(key, value);
    if (c.jobs == 0) throw ConfigError("jobs must be positive");
  } else if (key.starts_with("tool_cmd.")) {
    c.tool_commands[CanonicalTool(key.substr(9))] = value;
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ApplyConfigText(CampaignConfig& config, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == '[') continue;
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(fmt::format("config line {}: expected key = value", line_no));
    }
    std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      SetConfigValue(config, Trim(std::string_view(trimmed).substr(0, eq)), value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
}

void ApplyEnvironment(CampaignConfig& config) {
  if (const char* endpoint = std::getenv("SOLFI_RPC_ENDPOINT"); endpoint && *endpoint) {
    if (config.executor == "rpc") config.endpoint = endpoint;
  }
  if (const char* gate = std::getenv("SOLFI_GATE_CMD"); gate && *gate) {
    config.gate_cmd = gate;
  }
}

std::string CanonicalConfigJson(const CampaignConfig& c) {
  json j = {{"corpus_dir", c.corpus_dir},
            {"seed", c.seed},
            {"cap_per_function", c.cap_per_function},
            {"gate_cmd", c.gate_cmd},
            {"executor", c.executor},
            {"endpoint", c.endpoint},
            {"gas_limit", c.gas_limit},
            {"slack_lines", c.slack_lines},
            {"tools", c.tools},
            {"mapping", c.mapping},
            {"reports_dir", c.reports_dir},
            {"tool_commands", c.tool_commands},
            {"compare_read_set", c.compare_read_set}};
  return j.dump();
}

std::string ConfigHash(const CampaignConfig& config) {
  return HexEncode(Keccak256(CanonicalConfigJson(config))).substr(0, 16);
}

std::string CampaignTimestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::stoll(epoch));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

ToolMapping LoadMapping(const CampaignConfig& config) {
  if (config.mapping.empty()) return ToolMapping::FromCsv(BundledMappingCsv());
  return ToolMapping::Load(config.Resolve(config.mapping));
}

std::filesystem::path CampaignLayout::Report(const std::string& tool,
                                             const std::string& subject) const {
  return reports / Lower(tool) / (subject + ".json");
}

CampaignLayout LayoutFor(const CampaignConfig& config) {
  auto root = config.CampaignDir();
  return {root, config.reports_dir.empty() ? root / "reports"
                                           : config.Resolve(config.reports_dir)};
}

InjectResult CmdInject(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  auto corpus = config.Resolve(config.corpus_dir);
  if (!std::filesystem::is_directory(corpus)) {
    throw IoError("corpus directory not found: " + corpus.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
    if (entry.is_regular_file() && entry.path().extension() == ".sol") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  InjectResult result;
  MutationManifest& manifest = result.manifest;
  manifest.campaign_id = layout.root.filename().string();
  if (manifest.campaign_id.empty() || manifest.campaign_id == ".") {
    manifest.campaign_id = std::filesystem::weakly_canonical(layout.root).filename().string();
  }
  manifest.config_hash = ConfigHash(config);
  manifest.timestamp = CampaignTimestamp();
  manifest.gate_command = config.gate_cmd;
  std::filesystem::remove_all(layout.root / "originals");

  for (const auto& file : files) {
    std::string contract_id = file.stem().string();
    if (kReservedNames.contains(contract_id)) {
      spdlog::error("{}: contract name collides with a campaign directory; skipped",
                    file.string());
      ++result.failed_contracts;
      continue;
    }
    std::vector<GeneratedMutant> generated;
    std::string canonical;
    try {
      auto unit = Parse(ReadFile(file));
      canonical = Emit(*unit);
      generated = GenerateMutants(contract_id, *unit, AllOperators());
      std::filesystem::remove_all(layout.root / contract_id);
      WriteFile(layout.Original(contract_id), canonical);
      for (const auto& g : generated) WriteFile(layout.root / g.mutant.source_path, g.text);
    } catch (const Error& e) {
      spdlog::error("{}: {}; contract skipped", file.string(), e.what());
      ++result.failed_contracts;
      continue;
    }
    manifest.contracts.push_back(
        {contract_id, (std::filesystem::path(config.corpus_dir) / file.filename()).generic_string(),
         "originals/" + contract_id + ".sol"});
    for (auto& g : generated) manifest.mutants.push_back(std::move(g.mutant));
    spdlog::info("{}: {} mutants", contract_id, generated.size());
  }

  std::atomic<bool> unavailable{false};
  std::mutex warn_mutex;
  ParallelFor(manifest.mutants.size(), config.jobs, [&](std::size_t i, std::size_t) {
    Mutant& m = manifest.mutants[i];
    if (unavailable) return;
    try {
      GateResult gate = CompileGate(layout.root / m.source_path, config.gate_cmd);
      m.gate_status = gate.status;
      m.gate_log = gate.log;
    } catch (const CompilerUnavailable& e) {
      std::lock_guard lock(warn_mutex);
      if (!unavailable.exchange(true)) {
        spdlog::warn("compiler unavailable ({}); mutants left NotGated", e.what());
      }
    }
  });
  if (unavailable) {
    for (auto& m : manifest.mutants) {
      m.gate_status = GateStatus::NotGated;
      m.gate_log.clear();
    }
  }
  manifest.gate_version = unavailable ? "unavailable" : GateVersion(config.gate_cmd);
  WriteManifest(manifest, layout.Manifest());

  std::size_t compiled = CompiledMutants(manifest).size();
  spdlog::info("inject: {} contracts, {} mutants, {} compiled", manifest.contracts.size(),
               manifest.mutants.size(), compiled);
  result.exit_code = compiled > 0 ? kExitOk : kExitEmpty;
  return result;
}

WorkloadResult CmdWorkload(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  MutationManifest manifest = ReadCampaignManifest(layout, config);
  WorkloadResult result;
  std::string hash = ConfigHash(config);
  for (const auto& contract : manifest.contracts) {
    auto unit = Parse(ReadFile(layout.root / contract.original_path));
    std::vector<std::string> skipped;
    ExtractSignatures(*unit, &skipped);
    for (const auto& name : skipped) {
      spdlog::warn("{}: function {} has an unsupported parameter type; not called",
                   contract.contract_id, name);
    }
    Workload w = GenerateWorkload(*unit, contract.contract_id,
                                  {config.seed, config.cap_per_function});
    w.config_hash = hash;
    WriteWorkload(w, layout.WorkloadFile(contract.contract_id));
    spdlog::info("{}: {} calls over {} functions", contract.contract_id, w.calls.size(),
                 w.functions.size());
    result.workloads.push_back(std::move(w));
  }
  result.exit_code = result.workloads.empty() ? kExitEmpty : kExitOk;
  return result;
}

RunResult CmdRun(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  MutationManifest manifest = ReadCampaignManifest(layout, config);
  std::string hash = ConfigHash(config);
  RunResult result;
  std::size_t jobs = config.jobs;
  if (config.executor == "rpc" && jobs > 1) {
    spdlog::warn("rpc executor shares one node; running with --jobs 1");
    jobs = 1;
  }

  std::map<std::string, Workload> workloads;
  auto golden_executor = MakeExecutor(config);
  for (const auto& contract : manifest.contracts) {
    auto path = layout.WorkloadFile(contract.contract_id);
    if (!std::filesystem::exists(path)) {
      spdlog::warn("{}: no workload; contract and its mutants not run", contract.contract_id);
      continue;
    }
    Workload w = ReadWorkload(path);
    std::string run_id = "golden/" + contract.contract_id;
    RunRecord record =
        Run(*golden_executor,
            MakeArtifact(contract.contract_id, layout.root / contract.original_path, w), w,
            config.gas_limit, run_id);
    record.config_hash = hash;
    WriteRunRecord(record, layout.GoldenRun(contract.contract_id));
    result.order.push_back(run_id);
    ++result.golden_runs;
    if (!record.complete) ++result.incomplete;
    if (record.deploy_failed) {
      spdlog::warn("{}: golden deployment failed: {}", contract.contract_id, record.note);
    }
    workloads.emplace(contract.contract_id, std::move(w));
  }

  std::vector<const Mutant*> todo;
  for (const auto& m : manifest.mutants) {
    if (m.gate_status != GateStatus::Compiled) {
      ++result.skipped_mutants;
      continue;
    }
    if (!workloads.contains(m.contract_id)) continue;
    todo.push_back(&m);
    result.order.push_back(m.mutant_id);
  }
  if (result.skipped_mutants > 0) {
    spdlog::info("run: {} mutants not Compiled are skipped", result.skipped_mutants);
  }

  std::vector<std::unique_ptr<Executor>> executors;
  for (std::size_t w = 0; w < std::max<std::size_t>(1, std::min(jobs, todo.size())); ++w) {
    executors.push_back(MakeExecutor(config));
  }
  std::atomic<std::size_t> incomplete{0};
  ParallelFor(todo.size(), jobs, [&](std::size_t i, std::size_t worker) {
    const Mutant& m = *todo[i];
    const Workload& w = workloads.at(m.contract_id);
    RunRecord record = Run(*executors[worker],
                           MakeArtifact(m.mutant_id, layout.root / m.source_path, w), w,
                           config.gas_limit, m.mutant_id);
    record.config_hash = hash;
    WriteRunRecord(record, layout.MutantRun(m.mutant_id));
    if (!record.complete) ++incomplete;
  });
  result.mutant_runs = todo.size();
  result.incomplete += incomplete;
  spdlog::info("run: {} golden, {} mutant runs, {} incomplete", result.golden_runs,
               result.mutant_runs, result.incomplete);
  result.exit_code = result.golden_runs + result.mutant_runs > 0 ? kExitOk : kExitEmpty;
  return result;
}

std::string ProfilesToJson(const std::vector<MutantImpactProfile>& profiles,
                           std::string_view config_hash) {
  json j;
  j["schema_version"] = kProfilesSchemaVersion;
  j["config_hash"] = config_hash;
  j["profiles"] = json::array();
  for (const auto& p : profiles) j["profiles"].push_back(json::parse(ProfileToJson(p)));
  return j.dump(1) + "\n";
}

std::vector<MutantImpactProfile> ProfilesFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("profiles file is not JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema_version", 0) != kProfilesSchemaVersion ||
      !j.contains("profiles") || !j["profiles"].is_array()) {
    throw SchemaError("unsupported profiles file");
  }
  std::vector<MutantImpactProfile> out;
  for (const auto& p : j["profiles"]) out.push_back(ProfileFromJson(p.dump()));
  return out;
}

ClassifyResult CmdClassify(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  MutationManifest manifest = ReadCampaignManifest(layout, config);
  ClassifyOptions options{config.compare_read_set};
  ClassifyResult result;

  std::map<std::string, std::optional<RunRecord>> golden;
  for (const auto& c : manifest.contracts) {
    golden[c.contract_id] = TryReadRun(layout.GoldenRun(c.contract_id));
  }
  for (const Mutant* m : CompiledMutants(manifest)) {
    std::optional<RunRecord> run = TryReadRun(layout.MutantRun(m->mutant_id));
    const auto& ref = golden[m->contract_id];
    std::size_t n = run ? run->traces.size() : ref ? ref->traces.size() : 0;
    if (!run && !ref && std::filesystem::exists(layout.WorkloadFile(m->contract_id))) {
      n = ReadWorkload(layout.WorkloadFile(m->contract_id)).calls.size();
    }
    if (!ref) {
      ++result.missing_golden;
      result.profiles.push_back(SkippedProfile(*m, n));
      continue;
    }
    if (!run) {
      spdlog::warn("{}: no run record; all transactions Skipped", m->mutant_id);
      result.profiles.push_back(SkippedProfile(*m, n));
      continue;
    }
    if (run->deploy_failed) {
      result.profiles.push_back(
          DeployFailedProfile(m->mutant_id, m->contract_id, m->fault, n));
      continue;
    }
    try {
      result.profiles.push_back(ProfileMutant(m->mutant_id, m->contract_id, m->fault,
                                              PairRuns(*ref, *run), options));
    } catch (const WorkloadMismatch& e) {
      spdlog::warn("{}: {}; all transactions Skipped", m->mutant_id, e.what());
      result.profiles.push_back(SkippedProfile(*m, n));
    }
  }
  if (result.missing_golden > 0) {
    spdlog::warn("classify: {} mutants lack a golden run and are Skipped",
                 result.missing_golden);
  }
  std::string hash = ConfigHash(config);
  result.summary = SummarizeCampaign(result.profiles);
  WriteFile(layout.Profiles(), ProfilesToJson(result.profiles, hash));
  WriteFile(layout.ImpactCsv(), ImpactCsv(result.profiles, hash));
  WriteFile(layout.Summary(), SummaryJson(result.summary, hash));
  result.exit_code = result.profiles.empty() ? kExitEmpty : kExitOk;
  return result;
}

std::string AlertsToJsonl(const std::vector<ToolReports>& reports,
                          std::string_view config_hash) {
  std::vector<std::string> tools;
  for (const auto& r : reports) tools.push_back(r.tool);
  std::string out = json{{"schema_version", kAlertsSchemaVersion},
                         {"config_hash", config_hash},
                         {"tools", tools}}
                        .dump() +
                    "\n";
  auto emit = [&](const Alert& a, bool parent) {
    json j = {{"tool", a.tool},
              {"subject", a.subject_id},
              {"parent", parent},
              {"detector", a.detector},
              {"line", a.line ? json(*a.line) : json()},
              {"message", a.message}};
    out += j.dump() + "\n";
  };
  for (const auto& r : reports) {
    for (const auto& [subject, alerts] : r.by_contract) {
      for (const auto& a : alerts) emit(a, true);
    }
    for (const auto& [subject, alerts] : r.by_mutant) {
      for (const auto& a : alerts) emit(a, false);
    }
  }
  return out;
}

std::vector<ToolReports> AlertsFromJsonl(std::string_view text,
                                         const std::vector<std::string>& tools) {
  std::vector<ToolReports> reports;
  for (const auto& t : tools) reports.push_back({t, {}, {}});
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  try {
    if (!std::getline(in, line)) throw FormatError("empty alert file");
    ++line_no;
    json header = json::parse(line);
    if (header.at("schema_version").get<int>() != kAlertsSchemaVersion) {
      throw FormatError("unsupported alert file schema_version");
    }
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json j = json::parse(line);
      Alert a{j.at("tool").get<std::string>(), j.at("subject").get<std::string>(),
              j.at("detector").get<std::string>(), std::nullopt,
              j.at("message").get<std::string>()};
      if (!j.at("line").is_null()) a.line = j.at("line").get<std::size_t>();
      auto it = std::find_if(reports.begin(), reports.end(),
                             [&](const ToolReports& r) { return r.tool == a.tool; });
      if (it == reports.end()) continue;
      auto& bucket = j.at("parent").get<bool>() ? it->by_contract : it->by_mutant;
      bucket[a.subject_id].push_back(std::move(a));
    }
  } catch (const json::exception& e) {
    throw FormatError("alert file line " + std::to_string(line_no) + ": " + e.what());
  }
  return reports;
}

BenchIngestResult CmdBenchIngest(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  MutationManifest manifest = ReadCampaignManifest(layout, config);
  BenchIngestResult result;
  struct Subject {
    std::string id;
    std::filesystem::path source;
    bool parent;
  };
  std::vector<Subject> subjects;
  for (const auto& c : manifest.contracts) {
    subjects.push_back({c.contract_id, layout.root / c.original_path, true});
  }
  for (const Mutant* m : CompiledMutants(manifest)) {
    subjects.push_back({m->mutant_id, layout.root / m->source_path, false});
  }
  for (const auto& tool : config.tools) {
    ToolReports reports{tool, {}, {}};
    auto command = config.tool_commands.find(tool);
    std::size_t missing = 0;
    for (const auto& s : subjects) {
      auto path = layout.Report(tool, s.id);
      if (!std::filesystem::exists(path) && command != config.tool_commands.end()) {
        std::filesystem::create_directories(path.parent_path());
        std::string cmd = command->second;
        for (auto [key, value] : {std::pair{std::string("{file}"), s.source},
                                  std::pair{std::string("{out}"), path}}) {
          for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key)) {
            cmd.replace(pos, key.size(), ShellQuote(value.string()));
          }
        }
        CommandResult run = RunShell(cmd);
        if (run.exit_code != 0 && !std::filesystem::exists(path)) {
          spdlog::debug("{} on {} exited {}", tool, s.id, run.exit_code);
        }
      }
      if (!std::filesystem::exists(path)) {
        if (!s.parent) ++missing;
        continue;
      }
      try {
        auto alerts = IngestReport(tool, s.id, path);
        result.alerts += alerts.size();
        (s.parent ? reports.by_contract : reports.by_mutant)[s.id] = std::move(alerts);
      } catch (const Error& e) {
        spdlog::warn("{}: {}; counted as no alerts", path.string(), e.what());
        ++result.failed_reports;
      }
    }
    if (missing > 0) {
      spdlog::warn("{}: {} mutant reports missing; those mutants count as undetected",
                   tool, missing);
    }
    result.missing_reports += missing;
    result.reports.push_back(std::move(reports));
  }
  WriteFile(layout.Alerts(), AlertsToJsonl(result.reports, ConfigHash(config)));
  spdlog::info("bench ingest: {} alerts, {} missing and {} unreadable reports",
               result.alerts, result.missing_reports, result.failed_reports);
  return result;
}

BenchResult CmdBench(const CampaignConfig& config, BenchStage stage) {
  CampaignLayout layout = LayoutFor(config);
  MutationManifest manifest = ReadCampaignManifest(layout, config);
  ToolMapping mapping = LoadMapping(config);
  Slack slack = ParseSlack(config.slack_lines);
  std::vector<ToolReports> reports;
  if (std::filesystem::exists(layout.Alerts())) {
    reports = AlertsFromJsonl(ReadFile(layout.Alerts()), config.tools);
  } else {
    reports = CmdBenchIngest(config).reports;
  }
  std::vector<Mutant> mutants;
  for (const Mutant* m : CompiledMutants(manifest)) mutants.push_back(*m);

  BenchResult result;
  result.score = Score(mutants, reports, mapping, slack);
  std::vector<MutantImpactProfile> profiles = ReadProfilesIfPresent(layout);
  if (profiles.empty() && (stage == BenchStage::All || stage == BenchStage::Crosstab)) {
    spdlog::warn("no impact profiles; severity cross-tab is empty");
  }
  BenchOutputs out = RenderBench(result.score, profiles, ConfigHash(config));
  auto dir = layout.BenchDir();
  bool all = stage == BenchStage::All;
  if (all || stage == BenchStage::Score) {
    WriteFile(dir / "detection.csv", out.detection_csv);
    WriteFile(dir / "venn.json", out.venn_json);
    for (const char* plot : {"tool_scores.csv", "detection_by_fault.csv", "venn_regions.csv"}) {
      WriteFile(dir / "plots" / plot, out.plots.at(plot));
    }
  }
  if (all || stage == BenchStage::Elusive) {
    WriteFile(dir / "elusive.csv", out.elusive_csv);
    WriteFile(dir / "plots" / "elusive_by_fault.csv", out.plots.at("elusive_by_fault.csv"));
  }
  if (all || stage == BenchStage::Crosstab) {
    WriteFile(dir / "severity.csv", out.severity_csv);
    WriteFile(dir / "plots" / "elusive_severity.csv", out.plots.at("elusive_severity.csv"));
  }
  result.exit_code = mutants.empty() ? kExitEmpty : kExitOk;
  return result;
}

int CmdReport(const CampaignConfig& config) {
  CampaignLayout layout = LayoutFor(config);
  std::vector<MutantImpactProfile> profiles = ReadProfilesIfPresent(layout);
  std::string hash_line = fmt::format("# config_hash: {}\n", ConfigHash(config));
  CampaignSummary summary = SummarizeCampaign(profiles);

  std::string shares = hash_line + "fault,verdict,count,share_pct\n";
  auto share_rows = [&](std::string_view fault, const VerdictDistribution& d) {
    for (Verdict v : AllVerdicts()) {
      auto share = d.Share(v);
      shares += fmt::format("{},{},{},{}\n", fault, VerdictName(v), d.counts.at(v),
                            share && v != Verdict::Skipped ? fmt::format("{:.6f}", *share)
                                                           : "");
    }
  };
  if (!profiles.empty()) share_rows("ALL", summary.overall);
  for (const auto& [fault, d] : summary.per_fault) share_rows(FaultName(fault), d);

  std::map<FaultId, std::map<Verdict, std::size_t>> presence;
  std::map<FaultId, std::size_t> mutants;
  for (const auto& p : profiles) {
    if (p.deploy_failed) continue;
    ++mutants[p.fault];
    for (Verdict v : p.ModesPresent()) ++presence[p.fault][v];
  }
  std::string modes = hash_line + "fault,mode,mutants_with_mode,mutants\n";
  for (const auto& [fault, n] : mutants) {
    for (Verdict v : AllVerdicts()) {
      if (v == Verdict::NoEffect || v == Verdict::Skipped) continue;
      modes += fmt::format("{},{},{},{}\n", FaultName(fault), VerdictName(v),
                           presence[fault][v], n);
    }
  }

  std::string overhead = hash_line + "fault,dimension,mutants,mean_pct\n";
  std::map<FaultId, std::array<std::pair<double, std::size_t>, 3>> sums;
  for (const auto& p : profiles) {
    if (p.deploy_failed) continue;
    auto& s = sums[p.fault];
    const OverheadStats* stats[] = {&p.cpu, &p.mem, &p.time};
    for (int d = 0; d < 3; ++d) {
      if (stats[d]->mean) {
        s[d].first += *stats[d]->mean;
        ++s[d].second;
      }
    }
  }
  const char* dims[] = {"cpu", "memory", "time"};
  for (const auto& [fault, s] : sums) {
    for (int d = 0; d < 3; ++d) {
      overhead += fmt::format(
          "{},{},{},{}\n", FaultName(fault), dims[d], s[d].second,
          s[d].second ? fmt::format("{:.6f}", s[d].first / static_cast<double>(s[d].second))
                      : "");
    }
  }

  WriteFile(layout.ReportDir() / "verdict_shares.csv", shares);
  WriteFile(layout.ReportDir() / "mode_presence.csv", modes);
  WriteFile(layout.ReportDir() / "overhead.csv", overhead);
  return profiles.empty() ? kExitEmpty : kExitOk;
}

}  // namespace solfi
