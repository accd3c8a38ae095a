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

#ifndef SOLFI_MOCK_EXECUTOR_H_
#define SOLFI_MOCK_EXECUTOR_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solfi/harness.h"

namespace solfi {

// Deterministic executor replaying a JSON script:
//
//   {"schema_version": 1,
//    "default": {trace fields},
//    "subjects": {"<subject_id>": {
//        "deploy_fails": "reason",
//        "executor_fault_at": <seq>,
//        "default": {trace fields},
//        "functions": {"<signature>": {trace fields}},
//        "transactions": {"<seq>" | "<first>-<last>": {trace fields}}}}}
//
// Trace fields are those of a persisted trace (status, return_value,
// write_set, read_set, gas_used, metrics). The most specific entry wins:
// seq, then range, then function, then subject default, then script
// default. Anything unscripted is a Success with no writes.
class MockExecutor : public Executor {
 public:
  // Throws ScriptError.
  static MockExecutor FromJson(std::string_view text);
  static MockExecutor FromFile(const std::filesystem::path& path);
  MockExecutor() = default;

  std::string Kind() const override { return "mock"; }
  void Reset() override;
  DeployHandle Deploy(const Artifact& artifact) override;
  TransactionTrace Invoke(const DeployHandle& handle, const CallSpec& call,
                          const FunctionSignature& function,
                          std::uint64_t gas_limit) override;

 private:
  struct Range {
    std::size_t first;
    std::size_t last;
    TransactionTrace trace;
  };
  struct Subject {
    std::optional<std::string> deploy_fails;
    std::optional<std::size_t> executor_fault_at;
    std::optional<TransactionTrace> fallback;
    std::map<std::string, TransactionTrace, std::less<>> functions;
    std::map<std::size_t, TransactionTrace> transactions;
    std::vector<Range> ranges;
  };

  TransactionTrace base_;
  std::map<std::string, Subject, std::less<>> subjects_;
};

}  // namespace solfi

#endif  // SOLFI_MOCK_EXECUTOR_H_
