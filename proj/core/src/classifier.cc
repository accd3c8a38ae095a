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

#include "solfi/classifier.h"

#include <fmt/format.h>

#include "json.hpp"
#include "solfi/error.h"

namespace solfi {
namespace {

using nlohmann::json;

std::map<Verdict, std::size_t> ZeroCounts() {
  std::map<Verdict, std::size_t> counts;
  for (Verdict v : AllVerdicts()) counts[v] = 0;
  return counts;
}

std::optional<double> PercentChange(std::optional<double> ref,
                                    std::optional<double> faulty) {
  if (!ref || !faulty || *ref == 0) return std::nullopt;
  return 100.0 * (*faulty - *ref) / *ref;
}

std::optional<double> AsDouble(std::optional<std::uint64_t> v) {
  if (!v) return std::nullopt;
  return static_cast<double>(*v);
}

class StatsBuilder {
 public:
  void Add(std::optional<double> ref, std::optional<double> faulty) {
    if (!ref || !faulty) return;
    if (*ref == 0) {
      ++stats_.zero_reference;
      return;
    }
    sum_ += 100.0 * (*faulty - *ref) / *ref;
    ++stats_.samples;
  }
  OverheadStats Finish() const {
    OverheadStats s = stats_;
    if (s.samples > 0) s.mean = sum_ / static_cast<double>(s.samples);
    return s;
  }

 private:
  OverheadStats stats_;
  double sum_ = 0;
};

std::string Number(std::optional<double> v) {
  return v ? fmt::format("{:.6f}", *v) : "";
}

json StatsToJson(const OverheadStats& s) {
  return {{"mean", s.mean ? json(*s.mean) : json()},
          {"samples", s.samples},
          {"zero_reference", s.zero_reference}};
}

OverheadStats StatsFromJson(const json& j) {
  OverheadStats s;
  if (!j.at("mean").is_null()) s.mean = j.at("mean").get<double>();
  s.samples = j.at("samples").get<std::size_t>();
  s.zero_reference = j.at("zero_reference").get<std::size_t>();
  return s;
}

json CountsToJson(const std::map<Verdict, std::size_t>& counts) {
  json j = json::object();
  for (const auto& [v, n] : counts) j[std::string(VerdictName(v))] = n;
  return j;
}

}  // namespace

const std::vector<Verdict>& AllVerdicts() {
  static const std::vector<Verdict> kAll = {
      Verdict::NoEffect,           Verdict::RevertFailure,
      Verdict::AbortFailure,       Verdict::OutOfGasFailure,
      Verdict::CorrectnessFailure, Verdict::IntegrityFailure,
      Verdict::LatentIntegrityFailure, Verdict::Skipped};
  return kAll;
}

std::string_view VerdictName(Verdict v) {
  switch (v) {
    case Verdict::NoEffect: return "NoEffect";
    case Verdict::RevertFailure: return "RevertFailure";
    case Verdict::AbortFailure: return "AbortFailure";
    case Verdict::OutOfGasFailure: return "OutOfGasFailure";
    case Verdict::CorrectnessFailure: return "CorrectnessFailure";
    case Verdict::IntegrityFailure: return "IntegrityFailure";
    case Verdict::LatentIntegrityFailure: return "LatentIntegrityFailure";
    case Verdict::Skipped: return "Skipped";
  }
  return "";
}

std::optional<Verdict> ParseVerdict(std::string_view name) {
  for (Verdict v : AllVerdicts()) {
    if (VerdictName(v) == name) return v;
  }
  return std::nullopt;
}

bool IsSevere(Verdict v) {
  return v == Verdict::CorrectnessFailure || v == Verdict::IntegrityFailure ||
         v == Verdict::LatentIntegrityFailure;
}

Verdict ClassifyPair(const TransactionTrace& reference,
                     const TransactionTrace& faulty,
                     const ClassifyOptions& options) {
  if (reference.status != TxStatus::Success) return Verdict::Skipped;
  switch (faulty.status) {
    case TxStatus::OutOfGas: return Verdict::OutOfGasFailure;
    case TxStatus::Aborted: return Verdict::AbortFailure;
    case TxStatus::Reverted: return Verdict::RevertFailure;
    case TxStatus::NotExecuted: return Verdict::Skipped;
    case TxStatus::Success: break;
  }
  bool return_differs = reference.return_value != faulty.return_value;
  bool state_differs = reference.write_set != faulty.write_set;
  if (options.compare_read_set && reference.read_set && faulty.read_set &&
      *reference.read_set != *faulty.read_set) {
    state_differs = true;
  }
  if (return_differs) {
    return state_differs ? Verdict::IntegrityFailure : Verdict::CorrectnessFailure;
  }
  return state_differs ? Verdict::LatentIntegrityFailure : Verdict::NoEffect;
}

Overhead ComputeOverhead(const TransactionTrace& reference,
                         const TransactionTrace& faulty) {
  return {PercentChange(reference.metrics.cpu_time, faulty.metrics.cpu_time),
          PercentChange(AsDouble(reference.metrics.peak_memory),
                        AsDouble(faulty.metrics.peak_memory)),
          PercentChange(reference.metrics.wall_time, faulty.metrics.wall_time)};
}

std::set<Verdict> MutantImpactProfile::ModesPresent() const {
  std::set<Verdict> modes;
  for (const auto& [v, n] : counts) {
    if (n > 0 && v != Verdict::NoEffect && v != Verdict::Skipped) modes.insert(v);
  }
  return modes;
}

MutantImpactProfile ProfileMutant(std::string_view mutant_id,
                                  std::string_view contract_id, FaultId fault,
                                  const TracePairs& pairs,
                                  const ClassifyOptions& options) {
  MutantImpactProfile p;
  p.mutant_id = std::string(mutant_id);
  p.contract_id = std::string(contract_id);
  p.fault = fault;
  p.counts = ZeroCounts();
  p.transactions_total = pairs.size();
  StatsBuilder cpu, mem, time;
  for (const auto& [ref, faulty] : pairs) {
    Verdict v = ClassifyPair(*ref, *faulty, options);
    ++p.counts[v];
    if (v == Verdict::Skipped) continue;
    cpu.Add(ref->metrics.cpu_time, faulty->metrics.cpu_time);
    mem.Add(AsDouble(ref->metrics.peak_memory), AsDouble(faulty->metrics.peak_memory));
    time.Add(ref->metrics.wall_time, faulty->metrics.wall_time);
  }
  p.cpu = cpu.Finish();
  p.mem = mem.Finish();
  p.time = time.Finish();
  return p;
}

MutantImpactProfile DeployFailedProfile(std::string_view mutant_id,
                                        std::string_view contract_id,
                                        FaultId fault,
                                        std::size_t transactions) {
  MutantImpactProfile p;
  p.mutant_id = std::string(mutant_id);
  p.contract_id = std::string(contract_id);
  p.fault = fault;
  p.deploy_failed = true;
  p.counts = ZeroCounts();
  p.transactions_total = transactions;
  p.counts[Verdict::Skipped] = transactions;
  return p;
}

std::size_t VerdictDistribution::Classified() const {
  std::size_t n = 0;
  for (const auto& [v, c] : counts) {
    if (v != Verdict::Skipped) n += c;
  }
  return n;
}

std::optional<double> VerdictDistribution::Share(Verdict v) const {
  std::size_t total = Classified();
  if (total == 0 || v == Verdict::Skipped) return std::nullopt;
  auto it = counts.find(v);
  return 100.0 * static_cast<double>(it == counts.end() ? 0 : it->second) /
         static_cast<double>(total);
}

CampaignSummary SummarizeCampaign(const std::vector<MutantImpactProfile>& profiles) {
  CampaignSummary s;
  s.overall.counts = ZeroCounts();
  for (const auto& p : profiles) {
    ++s.mutants;
    if (p.deploy_failed) {
      ++s.deploy_failed;
      continue;
    }
    auto& fault = s.per_fault[p.fault];
    if (fault.counts.empty()) fault.counts = ZeroCounts();
    for (const auto& [v, n] : p.counts) {
      s.overall.counts[v] += n;
      fault.counts[v] += n;
    }
  }
  return s;
}

std::string ProfileToJson(const MutantImpactProfile& p) {
  json modes = json::array();
  for (Verdict v : p.ModesPresent()) modes.push_back(VerdictName(v));
  json j = {{"schema_version", 1},
            {"mutant_id", p.mutant_id},
            {"contract_id", p.contract_id},
            {"fault", FaultName(p.fault)},
            {"deploy_failed", p.deploy_failed},
            {"transactions_total", p.transactions_total},
            {"counts", CountsToJson(p.counts)},
            {"modes_present", modes},
            {"overhead", {{"cpu_pct", StatsToJson(p.cpu)},
                          {"mem_pct", StatsToJson(p.mem)},
                          {"time_pct", StatsToJson(p.time)}}}};
  return j.dump(2) + "\n";
}

MutantImpactProfile ProfileFromJson(std::string_view text) {
  try {
    json j = json::parse(text);
    if (j.at("schema_version").get<int>() != 1) {
      throw SchemaError("unsupported profile schema_version");
    }
    MutantImpactProfile p;
    p.mutant_id = j.at("mutant_id").get<std::string>();
    p.contract_id = j.at("contract_id").get<std::string>();
    auto fault = ParseFaultId(j.at("fault").get<std::string>());
    if (!fault) throw SchemaError("unknown fault in profile " + p.mutant_id);
    p.fault = *fault;
    p.deploy_failed = j.at("deploy_failed").get<bool>();
    p.transactions_total = j.at("transactions_total").get<std::size_t>();
    p.counts = ZeroCounts();
    std::size_t sum = 0;
    for (const auto& [name, n] : j.at("counts").items()) {
      auto v = ParseVerdict(name);
      if (!v) throw SchemaError("unknown verdict " + name);
      p.counts[*v] = n.get<std::size_t>();
      sum += p.counts[*v];
    }
    if (sum != p.transactions_total) {
      throw SchemaError("verdict counts do not sum to transactions_total in " +
                        p.mutant_id);
    }
    const json& o = j.at("overhead");
    p.cpu = StatsFromJson(o.at("cpu_pct"));
    p.mem = StatsFromJson(o.at("mem_pct"));
    p.time = StatsFromJson(o.at("time_pct"));
    return p;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed profile: ") + e.what());
  }
}

std::string ImpactCsv(const std::vector<MutantImpactProfile>& profiles,
                      std::string_view config_hash) {
  std::string out = fmt::format("# config_hash: {}\n", config_hash);
  out += "mutant_id,contract_id,fault,deploy_failed,transactions";
  for (Verdict v : AllVerdicts()) out += "," + std::string(VerdictName(v));
  out += ",modes_present,cpu_pct_mean,mem_pct_mean,time_pct_mean\n";
  for (const auto& p : profiles) {
    out += fmt::format("{},{},{},{},{}", p.mutant_id, p.contract_id,
                       FaultName(p.fault), p.deploy_failed ? 1 : 0,
                       p.transactions_total);
    for (Verdict v : AllVerdicts()) out += fmt::format(",{}", p.counts.at(v));
    std::string modes;
    for (Verdict v : p.ModesPresent()) {
      if (!modes.empty()) modes += ";";
      modes += VerdictName(v);
    }
    out += fmt::format(",{},{},{},{}\n", modes, Number(p.cpu.mean),
                       Number(p.mem.mean), Number(p.time.mean));
  }
  return out;
}

std::string SummaryJson(const CampaignSummary& s, std::string_view config_hash) {
  auto distribution = [](const VerdictDistribution& d) {
    json shares = json::object();
    for (Verdict v : AllVerdicts()) {
      if (v == Verdict::Skipped) continue;
      auto share = d.Share(v);
      shares[std::string(VerdictName(v))] = share ? json(*share) : json();
    }
    return json{{"counts", CountsToJson(d.counts)},
                {"classified", d.Classified()},
                {"shares_pct", shares}};
  };
  json per_fault = json::object();
  for (const auto& [fault, d] : s.per_fault) {
    per_fault[std::string(FaultName(fault))] = distribution(d);
  }
  json j = {{"config_hash", config_hash},
            {"mutants", s.mutants},
            {"deploy_failed", s.deploy_failed},
            {"overall", distribution(s.overall)},
            {"per_fault", per_fault}};
  return j.dump(2) + "\n";
}

}  // namespace solfi
