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

#ifndef SOLFI_HARNESS_H_
#define SOLFI_HARNESS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solfi/keccak.h"
#include "solfi/workload.h"

namespace solfi {

enum class TxStatus { Success, Reverted, Aborted, OutOfGas, NotExecuted };
std::string_view TxStatusName(TxStatus status);
std::optional<TxStatus> ParseTxStatus(std::string_view name);

// Storage slot -> value, both as canonical hex words ("0x" + lowercase
// digits, no leading zeros, "0x0" for zero). The slot "*" holds a digest of
// the whole post-state storage for executors that cannot report diffs.
using StorageMap = std::map<std::string, std::string>;

// Throws FormatError.
std::string CanonicalWord(std::string_view hex);

struct TxMetrics {
  std::optional<double> cpu_time;                // seconds
  std::optional<std::uint64_t> peak_memory;      // bytes
  std::optional<double> wall_time;               // seconds
  bool operator==(const TxMetrics&) const = default;
};

struct TransactionTrace {
  std::size_t seq = 0;
  TxStatus status = TxStatus::NotExecuted;
  Bytes return_value;
  StorageMap write_set;
  std::optional<StorageMap> read_set;
  std::uint64_t gas_used = 0;
  TxMetrics metrics;
  bool operator==(const TransactionTrace&) const = default;
};

// Status of a failed transaction from the executor's signals. Explicit
// out-of-gas wins, then explicit revert; otherwise a transaction that
// consumed the whole allowance is an abort.
TxStatus InferFailureStatus(bool explicit_out_of_gas, bool explicit_revert,
                            std::uint64_t gas_used, std::uint64_t gas_limit);

struct RunRecord {
  std::string run_id;
  std::string subject_id;  // contract_id for golden runs, else mutant_id
  std::string contract_id;
  std::string workload_ref;
  std::string executor;
  std::uint64_t gas_limit = 0;
  bool complete = true;
  bool deploy_failed = false;
  std::string note;  // deploy failure or executor fault reason
  std::string config_hash;
  std::vector<TransactionTrace> traces;
  bool operator==(const RunRecord&) const = default;
};

// Content digest identifying a workload: "<contract_id>@<16 hex chars>".
std::string WorkloadRef(const Workload& workload);

// What an executor deploys: the subject's source plus the workload's
// constructor arguments.
struct Artifact {
  std::string subject_id;
  std::string contract_id;
  std::filesystem::path source_path;
  std::string contract_name;
  std::vector<ParamSpec> constructor_params;
  std::vector<Value> constructor_args;
};

Artifact MakeArtifact(std::string_view subject_id,
                      const std::filesystem::path& source_path,
                      const Workload& workload);

struct DeployHandle {
  std::string address;
};

class Executor {
 public:
  virtual ~Executor() = default;
  virtual std::string Kind() const = 0;
  // Returns the executor to an empty chain state.
  virtual void Reset() = 0;
  // Throws DeployError when the contract cannot be created, ExecutorFault on
  // transport errors.
  virtual DeployHandle Deploy(const Artifact& artifact) = 0;
  // Throws ExecutorFault.
  virtual TransactionTrace Invoke(const DeployHandle& handle,
                                  const CallSpec& call,
                                  const FunctionSignature& function,
                                  std::uint64_t gas_limit) = 0;
};

inline constexpr std::uint64_t kDefaultGasLimit = 6'000'000;

// reset -> deploy -> invoke every call in order. A deploy failure yields a
// record whose traces are all NotExecuted; an executor fault or a trace that
// breaks the rollback invariant marks the record incomplete.
RunRecord Run(Executor& executor, const Artifact& artifact,
              const Workload& workload, std::uint64_t gas_limit,
              std::string_view run_id);

// Index-aligned (reference, faulty) pairs. Throws WorkloadMismatch.
std::vector<std::pair<const TransactionTrace*, const TransactionTrace*>>
PairRuns(const RunRecord& reference, const RunRecord& faulty);

inline constexpr int kRunSchemaVersion = 1;

// JSON Lines: a header object, then one trace per line.
std::string RunRecordToJsonl(const RunRecord& record);
// Throws TraceError.
RunRecord RunRecordFromJsonl(std::string_view text);
void WriteRunRecord(const RunRecord& record, const std::filesystem::path& path);
RunRecord ReadRunRecord(const std::filesystem::path& path);

}  // namespace solfi

#endif  // SOLFI_HARNESS_H_
