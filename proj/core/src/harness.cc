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

#include "solfi/harness.h"

#include <sstream>

#include <spdlog/spdlog.h>

#include "io_util.h"
#include "solfi/error.h"
#include "trace_json.h"

namespace solfi {

using nlohmann::json;

std::string_view TxStatusName(TxStatus status) {
  switch (status) {
    case TxStatus::Success: return "Success";
    case TxStatus::Reverted: return "Reverted";
    case TxStatus::Aborted: return "Aborted";
    case TxStatus::OutOfGas: return "OutOfGas";
    case TxStatus::NotExecuted: return "NotExecuted";
  }
  return "";
}

std::optional<TxStatus> ParseTxStatus(std::string_view name) {
  for (auto s : {TxStatus::Success, TxStatus::Reverted, TxStatus::Aborted,
                 TxStatus::OutOfGas, TxStatus::NotExecuted}) {
    if (TxStatusName(s) == name) return s;
  }
  return std::nullopt;
}

std::string CanonicalWord(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw FormatError("empty hex word");
  std::string out;
  for (char c : hex) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (!std::isxdigit(static_cast<unsigned char>(c))) {
      throw FormatError("bad hex word: " + std::string(hex));
    }
    if (out.empty() && lower == '0') continue;
    out += lower;
  }
  return "0x" + (out.empty() ? "0" : out);
}

TxStatus InferFailureStatus(bool explicit_out_of_gas, bool explicit_revert,
                            std::uint64_t gas_used, std::uint64_t gas_limit) {
  if (explicit_out_of_gas) return TxStatus::OutOfGas;
  if (explicit_revert) return TxStatus::Reverted;
  if (gas_used >= gas_limit) return TxStatus::Aborted;
  return TxStatus::Reverted;
}

json TraceToJson(const TransactionTrace& t) {
  json j;
  j["seq"] = t.seq;
  j["status"] = TxStatusName(t.status);
  j["return_value"] = "0x" + HexEncode(t.return_value);
  j["write_set"] = t.write_set;
  if (t.read_set) j["read_set"] = *t.read_set;
  j["gas_used"] = t.gas_used;
  json m = json::object();
  if (t.metrics.cpu_time) m["cpu_time"] = *t.metrics.cpu_time;
  if (t.metrics.peak_memory) m["peak_memory"] = *t.metrics.peak_memory;
  if (t.metrics.wall_time) m["wall_time"] = *t.metrics.wall_time;
  j["metrics"] = m;
  return j;
}

StorageMap StorageFromJson(const json& j) {
  StorageMap out;
  for (const auto& [slot, value] : j.items()) {
    out[slot == "*" ? slot : CanonicalWord(slot)] =
        CanonicalWord(value.get<std::string>());
  }
  return out;
}

TransactionTrace TraceFromJson(const json& j, TransactionTrace t) {
  if (!j.is_object()) throw FormatError("trace is not an object");
  if (j.contains("seq")) t.seq = j.at("seq").get<std::size_t>();
  if (j.contains("status")) {
    auto status = ParseTxStatus(j.at("status").get<std::string>());
    if (!status) throw FormatError("unknown status " + j.at("status").dump());
    t.status = *status;
  }
  if (j.contains("return_value")) {
    t.return_value = HexDecode(j.at("return_value").get<std::string>());
  }
  if (j.contains("write_set")) t.write_set = StorageFromJson(j.at("write_set"));
  if (j.contains("read_set")) t.read_set = StorageFromJson(j.at("read_set"));
  if (j.contains("gas_used")) t.gas_used = j.at("gas_used").get<std::uint64_t>();
  if (j.contains("metrics")) {
    const json& m = j.at("metrics");
    if (m.contains("cpu_time")) t.metrics.cpu_time = m.at("cpu_time").get<double>();
    if (m.contains("peak_memory")) {
      t.metrics.peak_memory = m.at("peak_memory").get<std::uint64_t>();
    }
    if (m.contains("wall_time")) t.metrics.wall_time = m.at("wall_time").get<double>();
  }
  return t;
}

std::string WorkloadRef(const Workload& workload) {
  return workload.contract_id + "@" +
         HexEncode(Keccak256(WorkloadToJson(workload))).substr(0, 16);
}

Artifact MakeArtifact(std::string_view subject_id,
                      const std::filesystem::path& source_path,
                      const Workload& workload) {
  return {std::string(subject_id), workload.contract_id, source_path,
          workload.contract_name, workload.constructor_params,
          workload.constructor_args};
}

RunRecord Run(Executor& executor, const Artifact& artifact,
              const Workload& workload, std::uint64_t gas_limit,
              std::string_view run_id) {
  RunRecord record;
  record.run_id = std::string(run_id);
  record.subject_id = artifact.subject_id;
  record.contract_id = artifact.contract_id;
  record.workload_ref = WorkloadRef(workload);
  record.executor = executor.Kind();
  record.gas_limit = gas_limit;
  auto fill_not_executed = [&] {
    for (std::size_t i = record.traces.size(); i < workload.calls.size(); ++i) {
      TransactionTrace t;
      t.seq = i;
      t.status = TxStatus::NotExecuted;
      record.traces.push_back(std::move(t));
    }
  };
  try {
    executor.Reset();
    DeployHandle handle;
    try {
      handle = executor.Deploy(artifact);
    } catch (const DeployError& e) {
      record.deploy_failed = true;
      record.note = e.what();
      fill_not_executed();
      return record;
    }
    for (const auto& call : workload.calls) {
      const FunctionSignature* function = workload.FindFunction(call.signature);
      if (function == nullptr) {
        throw WorkloadMismatch("call to unknown function " + call.signature);
      }
      TransactionTrace t = executor.Invoke(handle, call, *function, gas_limit);
      t.seq = call.seq;
      if (t.status != TxStatus::Success && !t.write_set.empty()) {
        throw TraceError("failed transaction " + std::to_string(call.seq) +
                         " reports state writes");
      }
      record.traces.push_back(std::move(t));
    }
  } catch (const ExecutorFault& e) {
    record.complete = false;
    record.note = e.what();
  } catch (const TraceError& e) {
    record.complete = false;
    record.note = e.what();
  }
  if (!record.complete) {
    spdlog::warn("run {} incomplete: {}", record.run_id, record.note);
    fill_not_executed();
  }
  return record;
}

std::vector<std::pair<const TransactionTrace*, const TransactionTrace*>>
PairRuns(const RunRecord& reference, const RunRecord& faulty) {
  if (reference.workload_ref != faulty.workload_ref) {
    throw WorkloadMismatch("runs use different workloads: " +
                           reference.workload_ref + " vs " + faulty.workload_ref);
  }
  if (reference.traces.size() != faulty.traces.size()) {
    throw WorkloadMismatch("runs have different lengths");
  }
  std::vector<std::pair<const TransactionTrace*, const TransactionTrace*>> pairs;
  for (std::size_t i = 0; i < reference.traces.size(); ++i) {
    if (reference.traces[i].seq != i || faulty.traces[i].seq != i) {
      throw WorkloadMismatch("trace " + std::to_string(i) + " is out of sequence");
    }
    pairs.emplace_back(&reference.traces[i], &faulty.traces[i]);
  }
  return pairs;
}

std::string RunRecordToJsonl(const RunRecord& r) {
  json header = {{"schema_version", kRunSchemaVersion},
                 {"run_id", r.run_id},
                 {"subject_id", r.subject_id},
                 {"contract_id", r.contract_id},
                 {"workload_ref", r.workload_ref},
                 {"executor", r.executor},
                 {"gas_limit", r.gas_limit},
                 {"complete", r.complete},
                 {"deploy_failed", r.deploy_failed},
                 {"note", r.note},
                 {"config_hash", r.config_hash},
                 {"transactions", r.traces.size()}};
  std::string out = header.dump() + "\n";
  for (const auto& t : r.traces) out += TraceToJson(t).dump() + "\n";
  return out;
}

RunRecord RunRecordFromJsonl(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  RunRecord r;
  std::size_t expected = 0;
  std::size_t line_no = 0;
  try {
    if (!std::getline(in, line)) throw TraceError("empty run file");
    ++line_no;
    json h = json::parse(line);
    if (h.at("schema_version").get<int>() != kRunSchemaVersion) {
      throw TraceError("unsupported run schema_version");
    }
    r.run_id = h.at("run_id").get<std::string>();
    r.subject_id = h.at("subject_id").get<std::string>();
    r.contract_id = h.at("contract_id").get<std::string>();
    r.workload_ref = h.at("workload_ref").get<std::string>();
    r.executor = h.at("executor").get<std::string>();
    r.gas_limit = h.at("gas_limit").get<std::uint64_t>();
    r.complete = h.at("complete").get<bool>();
    r.deploy_failed = h.at("deploy_failed").get<bool>();
    r.note = h.at("note").get<std::string>();
    r.config_hash = h.value("config_hash", "");
    expected = h.at("transactions").get<std::size_t>();
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      json j = json::parse(line);
      for (const char* key : {"seq", "status", "write_set", "gas_used"}) {
        if (!j.contains(key)) throw TraceError(std::string("trace missing ") + key);
      }
      r.traces.push_back(TraceFromJson(j));
    }
  } catch (const json::exception& e) {
    throw TraceError("line " + std::to_string(line_no) + ": " + e.what());
  } catch (const FormatError& e) {
    throw TraceError("line " + std::to_string(line_no) + ": " + e.what());
  }
  if (r.traces.size() != expected) {
    throw TraceError("header announces " + std::to_string(expected) +
                     " transactions, file has " + std::to_string(r.traces.size()));
  }
  for (std::size_t i = 0; i < r.traces.size(); ++i) {
    const auto& t = r.traces[i];
    if (t.seq != i) throw TraceError("trace seq out of order at " + std::to_string(i));
    if (t.status != TxStatus::Success && !t.write_set.empty()) {
      throw TraceError("failed trace " + std::to_string(i) + " carries writes");
    }
  }
  return r;
}

void WriteRunRecord(const RunRecord& record, const std::filesystem::path& path) {
  WriteFile(path, RunRecordToJsonl(record));
}

RunRecord ReadRunRecord(const std::filesystem::path& path) {
  return RunRecordFromJsonl(ReadFile(path));
}

}  // namespace solfi
