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

#ifndef SOLFI_RPC_EXECUTOR_H_
#define SOLFI_RPC_EXECUTOR_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "solfi/harness.h"

namespace solfi {

struct RpcConfig {
  std::string endpoint = "http://127.0.0.1:8545";
  std::string sender = std::string(kDefaultSender);
  // When set, CPU time and peak memory are sampled from /proc/<pid>.
  std::optional<int> node_pid;
  int receipt_poll_ms = 20;
  int receipt_timeout_ms = 30000;
  int http_timeout_s = 30;
};

// Executor for an Ethereum-compatible node over JSON-RPC.
//
// Deployment bytecode is read as hex from `<source stem>.bin` next to the
// source, or from `<ContractName>.bin` in the same directory. Resets use
// evm_snapshot/evm_revert. The write set comes from debug_traceTransaction
// with the prestate tracer in diff mode; when the node lacks it, the write
// set is the single entry "*" -> storage root from eth_getProof.
class RpcExecutor : public Executor {
 public:
  explicit RpcExecutor(RpcConfig config);
  ~RpcExecutor() override;

  std::string Kind() const override { return "rpc"; }
  void Reset() override;
  DeployHandle Deploy(const Artifact& artifact) override;
  TransactionTrace Invoke(const DeployHandle& handle, const CallSpec& call,
                          const FunctionSignature& function,
                          std::uint64_t gas_limit) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// Bytecode path lookup used by Deploy. Throws DeployError when absent.
std::filesystem::path FindBytecode(const Artifact& artifact);

}  // namespace solfi

#endif  // SOLFI_RPC_EXECUTOR_H_
