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

#ifndef SOLFI_CLASSIFIER_H_
#define SOLFI_CLASSIFIER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solfi/fault_id.h"
#include "solfi/harness.h"

namespace solfi {

enum class Verdict {
  NoEffect,
  RevertFailure,
  AbortFailure,
  OutOfGasFailure,
  CorrectnessFailure,
  IntegrityFailure,
  LatentIntegrityFailure,
  Skipped,
};
inline constexpr std::size_t kVerdictCount = 8;
const std::vector<Verdict>& AllVerdicts();
std::string_view VerdictName(Verdict v);
std::optional<Verdict> ParseVerdict(std::string_view name);

// Successful-transaction divergences.
bool IsSevere(Verdict v);

struct ClassifyOptions {
  // Also compare read sets when both traces carry one.
  bool compare_read_set = false;
};

// Skipped when the reference transaction did not succeed or the faulty one
// was never executed.
Verdict ClassifyPair(const TransactionTrace& reference,
                     const TransactionTrace& faulty,
                     const ClassifyOptions& options = {});

// Percent change per resource dimension; absent when either side lacks the
// metric or the reference value is zero.
struct Overhead {
  std::optional<double> cpu_pct;
  std::optional<double> mem_pct;
  std::optional<double> time_pct;
  bool operator==(const Overhead&) const = default;
};

Overhead ComputeOverhead(const TransactionTrace& reference,
                         const TransactionTrace& faulty);

struct OverheadStats {
  std::optional<double> mean;
  std::size_t samples = 0;
  std::size_t zero_reference = 0;  // pairs dropped for a zero denominator
  bool operator==(const OverheadStats&) const = default;
};

struct MutantImpactProfile {
  std::string mutant_id;
  std::string contract_id;
  FaultId fault = FaultId::A_MISP;
  bool deploy_failed = false;
  std::map<Verdict, std::size_t> counts;  // every verdict present
  std::size_t transactions_total = 0;
  OverheadStats cpu;
  OverheadStats mem;
  OverheadStats time;

  std::set<Verdict> ModesPresent() const;
  bool operator==(const MutantImpactProfile&) const = default;
};

using TracePairs =
    std::vector<std::pair<const TransactionTrace*, const TransactionTrace*>>;

// Overhead means cover every pair that is not Skipped.
MutantImpactProfile ProfileMutant(std::string_view mutant_id,
                                  std::string_view contract_id, FaultId fault,
                                  const TracePairs& pairs,
                                  const ClassifyOptions& options = {});

// Profile of a mutant whose deployment failed: no transaction verdicts.
MutantImpactProfile DeployFailedProfile(std::string_view mutant_id,
                                        std::string_view contract_id,
                                        FaultId fault,
                                        std::size_t transactions);

struct VerdictDistribution {
  std::map<Verdict, std::size_t> counts;  // every verdict present
  // Transactions with a verdict other than Skipped.
  std::size_t Classified() const;
  // Share in percent of classified transactions; absent when none.
  std::optional<double> Share(Verdict v) const;
  bool operator==(const VerdictDistribution&) const = default;
};

struct CampaignSummary {
  std::size_t mutants = 0;
  std::size_t deploy_failed = 0;
  VerdictDistribution overall;
  std::map<FaultId, VerdictDistribution> per_fault;  // faults with profiles
};

CampaignSummary SummarizeCampaign(const std::vector<MutantImpactProfile>& profiles);

std::string ProfileToJson(const MutantImpactProfile& profile);
// Throws SchemaError.
MutantImpactProfile ProfileFromJson(std::string_view json);

// `# config_hash: <hash>` line, header, then one row per profile.
std::string ImpactCsv(const std::vector<MutantImpactProfile>& profiles,
                      std::string_view config_hash);
std::string SummaryJson(const CampaignSummary& summary,
                        std::string_view config_hash);

}  // namespace solfi

#endif  // SOLFI_CLASSIFIER_H_
