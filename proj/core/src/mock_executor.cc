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

#include "solfi/mock_executor.h"

#include <algorithm>
#include <charconv>

#include "io_util.h"
#include "solfi/error.h"
#include "trace_json.h"

namespace solfi {
namespace {

using nlohmann::json;

std::size_t ParseIndex(std::string_view text) {
  std::size_t n = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ScriptError("bad transaction key: " + std::string(text));
  }
  return n;
}

TransactionTrace Scripted(const json& j, const TransactionTrace& base) {
  if (j.contains("seq")) throw ScriptError("scripted trace must not set seq");
  TransactionTrace t = TraceFromJson(j, base);
  if (t.status == TxStatus::NotExecuted) {
    throw ScriptError("scripted trace cannot be NotExecuted");
  }
  if (t.status != TxStatus::Success && !t.write_set.empty()) {
    throw ScriptError("failed scripted trace carries writes");
  }
  return t;
}

}  // namespace

MockExecutor MockExecutor::FromJson(std::string_view text) {
  MockExecutor mock;
  mock.base_.status = TxStatus::Success;
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ScriptError("script is not an object");
    if (j.value("schema_version", 1) != 1) {
      throw ScriptError("unsupported script schema_version");
    }
    if (j.contains("default")) mock.base_ = Scripted(j.at("default"), mock.base_);
    if (!j.contains("subjects")) return mock;
    for (const auto& [id, s] : j.at("subjects").items()) {
      Subject subject;
      if (s.contains("deploy_fails")) {
        subject.deploy_fails = s.at("deploy_fails").get<std::string>();
      }
      if (s.contains("executor_fault_at")) {
        subject.executor_fault_at = s.at("executor_fault_at").get<std::size_t>();
      }
      TransactionTrace base = mock.base_;
      if (s.contains("default")) {
        base = Scripted(s.at("default"), mock.base_);
        subject.fallback = base;
      }
      if (s.contains("functions")) {
        for (const auto& [sig, f] : s.at("functions").items()) {
          subject.functions[sig] = Scripted(f, base);
        }
      }
      if (s.contains("transactions")) {
        for (const auto& [key, tx] : s.at("transactions").items()) {
          auto dash = key.find('-');
          if (dash == std::string::npos) {
            subject.transactions[ParseIndex(key)] = Scripted(tx, base);
          } else {
            Range r{ParseIndex(std::string_view(key).substr(0, dash)),
                    ParseIndex(std::string_view(key).substr(dash + 1)),
                    Scripted(tx, base)};
            if (r.first > r.last) throw ScriptError("empty range " + key);
            subject.ranges.push_back(std::move(r));
          }
        }
      }
      mock.subjects_[id] = std::move(subject);
    }
  } catch (const json::exception& e) {
    throw ScriptError(std::string("malformed script: ") + e.what());
  } catch (const FormatError& e) {
    throw ScriptError(std::string("malformed script: ") + e.what());
  }
  return mock;
}

MockExecutor MockExecutor::FromFile(const std::filesystem::path& path) {
  return FromJson(ReadFile(path));
}

void MockExecutor::Reset() {}

DeployHandle MockExecutor::Deploy(const Artifact& artifact) {
  auto it = subjects_.find(artifact.subject_id);
  if (it != subjects_.end() && it->second.deploy_fails) {
    throw DeployError(*it->second.deploy_fails);
  }
  return {artifact.subject_id};
}

TransactionTrace MockExecutor::Invoke(const DeployHandle& handle,
                                      const CallSpec& call,
                                      const FunctionSignature& function,
                                      std::uint64_t /*gas_limit*/) {
  TransactionTrace t = base_;
  auto it = subjects_.find(handle.address);
  if (it != subjects_.end()) {
    const Subject& s = it->second;
    if (s.executor_fault_at && *s.executor_fault_at == call.seq) {
      throw ExecutorFault("scripted executor fault at " + std::to_string(call.seq));
    }
    auto range = std::find_if(s.ranges.begin(), s.ranges.end(), [&](const Range& r) {
      return r.first <= call.seq && call.seq <= r.last;
    });
    if (auto tx = s.transactions.find(call.seq); tx != s.transactions.end()) {
      t = tx->second;
    } else if (range != s.ranges.end()) {
      t = range->trace;
    } else if (auto f = s.functions.find(function.Canonical()); f != s.functions.end()) {
      t = f->second;
    } else if (s.fallback) {
      t = *s.fallback;
    }
  }
  t.seq = call.seq;
  return t;
}

}  // namespace solfi
