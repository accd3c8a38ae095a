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

#include "solfi/rpc_executor.h"

#include <unistd.h>

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "io_util.h"
#include "json.hpp"
#include "solfi/abi.h"
#include "solfi/error.h"

namespace solfi {
namespace {

using nlohmann::json;

// A JSON-RPC error object returned by the node.
class RpcCallError : public ExecutorFault {
 public:
  using ExecutorFault::ExecutorFault;
};

std::string Quantity(std::uint64_t n) {
  std::ostringstream out;
  out << "0x" << std::hex << n;
  return out.str();
}

std::uint64_t ParseQuantity(const json& j) {
  return std::stoull(j.get<std::string>(), nullptr, 16);
}

std::string Lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct ProcSample {
  double cpu_seconds = 0;
  std::uint64_t peak_bytes = 0;
};

std::optional<ProcSample> SampleProcess(int pid) {
  std::ifstream stat("/proc/" + std::to_string(pid) + "/stat");
  std::string content;
  if (!std::getline(stat, content)) return std::nullopt;
  // Fields after the parenthesised command name; utime and stime are the
  // 12th and 13th of them.
  std::istringstream fields(content.substr(content.rfind(')') + 2));
  std::string field;
  double ticks = 0;
  for (int i = 1; i <= 13 && fields >> field; ++i) {
    if (i >= 12) ticks += std::stod(field);
  }
  ProcSample sample;
  sample.cpu_seconds = ticks / static_cast<double>(sysconf(_SC_CLK_TCK));
  std::ifstream status("/proc/" + std::to_string(pid) + "/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.starts_with("VmHWM:")) {
      sample.peak_bytes = std::stoull(line.substr(6)) * 1024;
    }
  }
  return sample;
}

}  // namespace

std::filesystem::path FindBytecode(const Artifact& artifact) {
  auto by_stem = std::filesystem::path(artifact.source_path).replace_extension(".bin");
  auto by_name = artifact.source_path.parent_path() / (artifact.contract_name + ".bin");
  for (const auto& candidate : {by_stem, by_name}) {
    if (std::filesystem::exists(candidate)) return candidate;
  }
  throw DeployError("no bytecode for " + artifact.subject_id + " (looked for " +
                    by_stem.string() + " and " + by_name.string() + ")");
}

class RpcExecutor::Impl {
 public:
  explicit Impl(RpcConfig config) : config_(std::move(config)) {
    std::string base = config_.endpoint;
    auto scheme = base.find("://");
    auto slash = base.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    if (slash != std::string::npos) {
      path_ = base.substr(slash);
      base = base.substr(0, slash);
    }
    client_ = std::make_unique<httplib::Client>(base);
    client_->set_connection_timeout(config_.http_timeout_s);
    client_->set_read_timeout(config_.http_timeout_s);
  }

  json Call(const std::string& method, json params) {
    json request = {{"jsonrpc", "2.0"},
                    {"id", ++next_id_},
                    {"method", method},
                    {"params", std::move(params)}};
    auto response = client_->Post(path_, request.dump(), "application/json");
    if (!response) {
      throw ExecutorFault("rpc " + method + " to " + config_.endpoint + " failed: " +
                          httplib::to_string(response.error()));
    }
    if (response->status != 200) {
      throw ExecutorFault("rpc " + method + " returned HTTP " +
                          std::to_string(response->status));
    }
    json body;
    try {
      body = json::parse(response->body);
    } catch (const json::parse_error& e) {
      throw ExecutorFault("rpc " + method + " returned invalid JSON");
    }
    if (body.contains("error") && !body["error"].is_null()) {
      throw RpcCallError(body["error"].value("message", body["error"].dump()));
    }
    return body.value("result", json());
  }

  json WaitReceipt(const std::string& hash) {
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(config_.receipt_timeout_ms);
    while (true) {
      json receipt = Call("eth_getTransactionReceipt", {hash});
      if (!receipt.is_null()) return receipt;
      if (std::chrono::steady_clock::now() > deadline) {
        throw ExecutorFault("no receipt for " + hash);
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(config_.receipt_poll_ms));
    }
  }

  void Reset() {
    if (!snapshot_.empty()) Call("evm_revert", {snapshot_});
    snapshot_ = Call("evm_snapshot", json::array()).get<std::string>();
  }

  DeployHandle Deploy(const Artifact& artifact) {
    std::string hex = ReadFile(FindBytecode(artifact));
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) {
      hex.pop_back();
    }
    Bytes code;
    try {
      code = HexDecode(hex);
    } catch (const FormatError& e) {
      throw DeployError("bytecode for " + artifact.subject_id + ": " + e.what());
    }
    std::vector<SolType> types;
    for (const auto& p : artifact.constructor_params) types.push_back(p.type);
    Bytes args = AbiEncode(types, artifact.constructor_args);
    code.insert(code.end(), args.begin(), args.end());
    json tx = {{"from", config_.sender},
               {"data", "0x" + HexEncode(code)},
               {"gas", Quantity(kDefaultGasLimit)}};
    json receipt;
    try {
      receipt = WaitReceipt(Call("eth_sendTransaction", {tx}).get<std::string>());
    } catch (const RpcCallError& e) {
      throw DeployError(std::string("deployment rejected: ") + e.what());
    }
    if (receipt.value("status", "0x1") != "0x1" ||
        receipt.value("contractAddress", json()).is_null()) {
      throw DeployError("deployment of " + artifact.subject_id + " failed");
    }
    return {Lower(receipt["contractAddress"].get<std::string>())};
  }

  TransactionTrace Invoke(const DeployHandle& handle, const CallSpec& call,
                          const FunctionSignature& function,
                          std::uint64_t gas_limit) {
    std::vector<SolType> types;
    for (const auto& p : function.params) types.push_back(p.type);
    json tx = {{"from", config_.sender},
               {"to", handle.address},
               {"data", "0x" + HexEncode(AbiEncodeCall(call.signature, types, call.args))},
               {"gas", Quantity(gas_limit)},
               {"value", Quantity(call.value_wei)}};

    TransactionTrace trace;
    trace.seq = call.seq;
    std::string failure;
    try {
      trace.return_value = HexDecode(Call("eth_call", {tx, "latest"}).get<std::string>());
    } catch (const RpcCallError& e) {
      failure = Lower(e.what());
    }

    auto before = config_.node_pid ? SampleProcess(*config_.node_pid) : std::nullopt;
    auto start = std::chrono::steady_clock::now();
    json receipt;
    try {
      receipt = WaitReceipt(Call("eth_sendTransaction", {tx}).get<std::string>());
    } catch (const RpcCallError& e) {
      failure = Lower(e.what());
    }
    trace.metrics.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (before) {
      if (auto after = SampleProcess(*config_.node_pid)) {
        trace.metrics.cpu_time = after->cpu_seconds - before->cpu_seconds;
        trace.metrics.peak_memory = after->peak_bytes;
      }
    }

    if (!receipt.is_null()) trace.gas_used = ParseQuantity(receipt.at("gasUsed"));
    bool success = !receipt.is_null() && receipt.value("status", "0x1") == "0x1";
    if (!success) {
      trace.status = InferFailureStatus(
          failure.find("out of gas") != std::string::npos,
          failure.find("revert") != std::string::npos, trace.gas_used, gas_limit);
      trace.return_value.clear();
      return trace;
    }
    trace.status = TxStatus::Success;
    trace.write_set = WriteSet(handle.address, receipt.at("transactionHash"));
    return trace;
  }

 private:
  StorageMap WriteSet(const std::string& address, const json& hash) {
    try {
      json diff = Call("debug_traceTransaction",
                       {hash, {{"tracer", "prestateTracer"},
                               {"tracerConfig", {{"diffMode", true}}}}});
      StorageMap out;
      auto storage_of = [&](const char* side) {
        json s = json::object();
        if (!diff.contains(side)) return s;
        for (const auto& [addr, account] : diff[side].items()) {
          if (Lower(addr) == address && account.contains("storage")) {
            s = account["storage"];
          }
        }
        return s;
      };
      json pre = storage_of("pre");
      json post = storage_of("post");
      for (const auto& [slot, value] : pre.items()) {
        if (!post.contains(slot)) out[CanonicalWord(slot)] = "0x0";
      }
      for (const auto& [slot, value] : post.items()) {
        out[CanonicalWord(slot)] = CanonicalWord(value.get<std::string>());
      }
      return out;
    } catch (const RpcCallError& e) {
      if (!warned_) {
        spdlog::warn("debug_traceTransaction unavailable ({}); recording storage roots",
                     e.what());
        warned_ = true;
      }
    }
    json proof = Call("eth_getProof", {address, json::array(), "latest"});
    return {{"*", CanonicalWord(proof.at("storageHash").get<std::string>())}};
  }

  RpcConfig config_;
  std::string path_ = "/";
  std::unique_ptr<httplib::Client> client_;
  std::string snapshot_;
  int next_id_ = 0;
  bool warned_ = false;
};

RpcExecutor::RpcExecutor(RpcConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}
RpcExecutor::~RpcExecutor() = default;

void RpcExecutor::Reset() { impl_->Reset(); }

DeployHandle RpcExecutor::Deploy(const Artifact& artifact) {
  return impl_->Deploy(artifact);
}

TransactionTrace RpcExecutor::Invoke(const DeployHandle& handle,
                                     const CallSpec& call,
                                     const FunctionSignature& function,
                                     std::uint64_t gas_limit) {
  try {
    return impl_->Invoke(handle, call, function, gas_limit);
  } catch (const json::exception& e) {
    throw ExecutorFault(std::string("malformed node response: ") + e.what());
  } catch (const FormatError& e) {
    throw ExecutorFault(std::string("malformed node response: ") + e.what());
  }
}

}  // namespace solfi
