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

#include <gtest/gtest.h>

#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "solfi/abi.h"
#include "solfi/error.h"
#include "solfi/mock_executor.h"
#include "solfi/rpc_executor.h"
#include "test_util.h"

namespace solfi {
namespace {

using nlohmann::json;
using testing::CorpusDir;
using testing::ReadText;
using testing::TempDir;
using testing::WriteText;

Value V(auto v) { return Value{std::move(v)}; }

std::string Hex(const Bytes& b) { return HexEncode(b); }

TEST(AbiTest, StaticArguments) {
  Bytes addr = HexDecode("00000000000000000000000000000000000000ff");
  Bytes out = AbiEncodeCall("transfer(address,uint256)",
                            {SolType::Address(), SolType::Int(256, false)},
                            {V(addr), V(BigInt(1))});
  EXPECT_EQ(Hex(out),
            "a9059cbb"
            "00000000000000000000000000000000000000000000000000000000000000ff"
            "0000000000000000000000000000000000000000000000000000000000000001");
}

TEST(AbiTest, NegativeAndBool) {
  Bytes out = AbiEncode({SolType::Int(8, true), SolType::Bool()},
                        {V(BigInt(-1)), V(true)});
  EXPECT_EQ(Hex(out),
            "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff"
            "0000000000000000000000000000000000000000000000000000000000000001");
}

// Worked example from the contract ABI specification.
TEST(AbiTest, DynamicArguments) {
  Bytes out = AbiEncodeCall(
      "f(uint256,uint32[],bytes10,bytes)",
      {SolType::Int(256, false), SolType::Array(SolType::Int(32, false)),
       SolType::FixedBytes(10), SolType::DynamicBytes()},
      {V(BigInt(0x123)), V(std::vector<Value>{V(BigInt(0x456)), V(BigInt(0x789))}),
       V(Bytes{'1', '2', '3', '4', '5', '6', '7', '8', '9', '0'}),
       V(Bytes{'H', 'e', 'l', 'l', 'o', ',', ' ', 'w', 'o', 'r', 'l', 'd', '!'})});
  EXPECT_EQ(Hex(out),
            "8be65246"
            "0000000000000000000000000000000000000000000000000000000000000123"
            "0000000000000000000000000000000000000000000000000000000000000080"
            "3132333435363738393000000000000000000000000000000000000000000000"
            "00000000000000000000000000000000000000000000000000000000000000e0"
            "0000000000000000000000000000000000000000000000000000000000000002"
            "0000000000000000000000000000000000000000000000000000000000000456"
            "0000000000000000000000000000000000000000000000000000000000000789"
            "000000000000000000000000000000000000000000000000000000000000000d"
            "48656c6c6f2c20776f726c642100000000000000000000000000000000000000");
}

TEST(AbiTest, StaticArrayIsInline) {
  Bytes out = AbiEncode({SolType::Array(SolType::Bool(), 2), SolType::String()},
                        {V(std::vector<Value>{V(true), V(false)}), V(std::string("ab"))});
  EXPECT_EQ(Hex(out),
            "0000000000000000000000000000000000000000000000000000000000000001"
            "0000000000000000000000000000000000000000000000000000000000000000"
            "0000000000000000000000000000000000000000000000000000000000000060"
            "0000000000000000000000000000000000000000000000000000000000000002"
            "6162000000000000000000000000000000000000000000000000000000000000");
}

TEST(AbiTest, RejectsIllTypedValues) {
  EXPECT_THROW(AbiEncode({SolType::Int(8, false)}, {V(BigInt(256))}), UnsupportedType);
  EXPECT_THROW(AbiEncode({SolType::Bool()}, {}), UnsupportedType);
}

TEST(TraceTest, CanonicalWord) {
  EXPECT_EQ(CanonicalWord("0x000A"), "0xa");
  EXPECT_EQ(CanonicalWord("0000"), "0x0");
  EXPECT_THROW(CanonicalWord("0xg1"), FormatError);
}

TEST(TraceTest, FailureInference) {
  EXPECT_EQ(InferFailureStatus(true, true, 5, 10), TxStatus::OutOfGas);
  EXPECT_EQ(InferFailureStatus(false, true, 10, 10), TxStatus::Reverted);
  EXPECT_EQ(InferFailureStatus(false, false, 10, 10), TxStatus::Aborted);
  EXPECT_EQ(InferFailureStatus(false, false, 9, 10), TxStatus::Reverted);
}

Workload SmallWorkload(const char* file, std::size_t cap) {
  auto unit = Parse(ReadText(CorpusDir() / file));
  WorkloadOptions options;
  options.cap_per_function = cap;
  return GenerateWorkload(*unit, std::filesystem::path(file).stem().string(), options);
}

RunRecord MockRun(const std::string& script, const Workload& w,
                  const std::string& subject) {
  MockExecutor mock = MockExecutor::FromJson(script);
  return solfi::Run(mock, MakeArtifact(subject, "unused.sol", w), w, kDefaultGasLimit,
             subject);
}

TEST(MockExecutorTest, EmptyScriptIsAllSuccess) {
  Workload w = SmallWorkload("vault.sol", 4);
  RunRecord r = MockRun("{}", w, "vault");
  ASSERT_EQ(r.traces.size(), w.calls.size());
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.executor, "mock");
  for (std::size_t i = 0; i < r.traces.size(); ++i) {
    EXPECT_EQ(r.traces[i].seq, i);
    EXPECT_EQ(r.traces[i].status, TxStatus::Success);
    EXPECT_TRUE(r.traces[i].write_set.empty());
  }
}

TEST(MockExecutorTest, ScriptPrecedence) {
  Workload w = SmallWorkload("vault.sol", 4);  // lock x4, drain x1, sum x4
  const char* script = R"js({
    "default": {"gas_used": 7},
    "subjects": {"m": {
      "default": {"return_value": "0x01"},
      "functions": {"sum(uint256)": {"status": "Reverted"}},
      "transactions": {"3": {"status": "OutOfGas"},
                       "0-1": {"write_set": {"0x00": "0x0A"}},
                       "6": {"status": "Success", "return_value": "0x02"}}}}})js";
  RunRecord r = MockRun(script, w, "m");
  ASSERT_EQ(r.traces.size(), 9u);
  EXPECT_EQ(r.traces[0].write_set, (StorageMap{{"0x0", "0xa"}}));
  EXPECT_EQ(r.traces[0].return_value, Bytes{1});
  EXPECT_EQ(r.traces[0].gas_used, 7u);
  EXPECT_EQ(r.traces[2].status, TxStatus::Success);
  EXPECT_EQ(r.traces[3].status, TxStatus::OutOfGas);
  EXPECT_EQ(r.traces[4].status, TxStatus::Success);  // drain: subject default
  EXPECT_EQ(r.traces[5].status, TxStatus::Reverted);
  EXPECT_EQ(r.traces[6].return_value, Bytes{2});
  EXPECT_EQ(r.traces[7].status, TxStatus::Reverted);
  RunRecord other = MockRun(script, w, "unscripted");
  EXPECT_EQ(other.traces[3].status, TxStatus::Success);
  EXPECT_EQ(other.traces[3].gas_used, 7u);
}

TEST(MockExecutorTest, ReplayIsDeterministic) {
  Workload w = SmallWorkload("wallet.sol", 5);
  const char* script = R"js({"subjects": {"x": {"transactions": {"2": {"status": "Aborted"}}}}})js";
  EXPECT_EQ(MockRun(script, w, "x"), MockRun(script, w, "x"));
}

TEST(MockExecutorTest, RevertedTraceHasNoWrites) {
  Workload w = SmallWorkload("wallet.sol", 5);
  RunRecord r = MockRun(
      R"js({"subjects": {"x": {"transactions": {"3": {"status": "Reverted"}}}}})js", w, "x");
  EXPECT_EQ(r.traces[3].status, TxStatus::Reverted);
  EXPECT_TRUE(r.traces[3].write_set.empty());
}

TEST(MockExecutorTest, MalformedScripts) {
  EXPECT_THROW(MockExecutor::FromJson("[1"), ScriptError);
  EXPECT_THROW(MockExecutor::FromJson(R"js({"default": {"status": "Exploded"}})js"), ScriptError);
  EXPECT_THROW(MockExecutor::FromJson(
                   R"js({"default": {"status": "Reverted", "write_set": {"0x1": "0x1"}}})js"),
               ScriptError);
  EXPECT_THROW(MockExecutor::FromJson(R"js({"subjects": {"a": {"transactions": {"x": {}}}}})js"),
               ScriptError);
  EXPECT_THROW(MockExecutor::FromJson(R"js({"subjects": {"a": {"transactions": {"5-2": {}}}}})js"),
               ScriptError);
}

TEST(RunTest, DeployFailureMarksEveryTraceNotExecuted) {
  Workload w = SmallWorkload("vault.sol", 2);
  RunRecord r = MockRun(R"js({"subjects": {"d": {"deploy_fails": "constructor reverted"}}})js",
                        w, "d");
  EXPECT_TRUE(r.deploy_failed);
  EXPECT_TRUE(r.complete);
  EXPECT_EQ(r.note, "constructor reverted");
  ASSERT_EQ(r.traces.size(), w.calls.size());
  for (const auto& t : r.traces) EXPECT_EQ(t.status, TxStatus::NotExecuted);
}

TEST(RunTest, ExecutorFaultMarksRunIncomplete) {
  Workload w = SmallWorkload("vault.sol", 2);
  RunRecord r = MockRun(R"js({"subjects": {"f": {"executor_fault_at": 2}}})js", w, "f");
  EXPECT_FALSE(r.complete);
  ASSERT_EQ(r.traces.size(), w.calls.size());
  EXPECT_EQ(r.traces[1].status, TxStatus::Success);
  EXPECT_EQ(r.traces[2].status, TxStatus::NotExecuted);
}

class WritingFailures : public Executor {
 public:
  std::string Kind() const override { return "bad"; }
  void Reset() override {}
  DeployHandle Deploy(const Artifact&) override { return {}; }
  TransactionTrace Invoke(const DeployHandle&, const CallSpec& call,
                          const FunctionSignature&, std::uint64_t) override {
    TransactionTrace t;
    t.seq = call.seq;
    t.status = TxStatus::Reverted;
    t.write_set = {{"0x1", "0x1"}};
    return t;
  }
};

TEST(RunTest, RollbackViolationRejected) {
  Workload w = SmallWorkload("vault.sol", 1);
  WritingFailures bad;
  RunRecord r = solfi::Run(bad, MakeArtifact("v", "v.sol", w), w, 100, "v");
  EXPECT_FALSE(r.complete);
  for (const auto& t : r.traces) EXPECT_TRUE(t.write_set.empty());
}

TEST(PairRunsTest, AlignsAndRejectsMismatch) {
  Workload w = SmallWorkload("vault.sol", 3);
  RunRecord a = MockRun("{}", w, "a");
  RunRecord b = MockRun("{}", w, "b");
  auto pairs = PairRuns(a, b);
  ASSERT_EQ(pairs.size(), w.calls.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    EXPECT_EQ(pairs[k].first->seq, k);
    EXPECT_EQ(pairs[k].second->seq, k);
  }
  Workload other = SmallWorkload("vault.sol", 4);
  EXPECT_THROW(PairRuns(a, MockRun("{}", other, "c")), WorkloadMismatch);
  RunRecord shorter = b;
  shorter.traces.pop_back();
  EXPECT_THROW(PairRuns(a, shorter), WorkloadMismatch);
}

// The storage-pointer scenario: the storage-qualified local aliases slot 0,
// so the faulty run writes state the golden run never touches.
TEST(RunTest, StoragePointerScenario) {
  auto unit = Parse(ReadText(CorpusDir() / "pay_supplier.sol"));
  Workload w = GenerateWorkload(*unit, "pay_supplier", {0, 3, std::string(kDefaultSender)});
  ASSERT_EQ(w.functions.at(0).Canonical(), "TransferMoney(bytes32)");
  const char* script = R"js({"subjects": {
    "pay_supplier": {"functions": {"TransferMoney(bytes32)": {"status": "Reverted"}}},
    "pay_supplier__A_MISP__0": {"functions": {"TransferMoney(bytes32)": {
        "status": "Reverted"}},
      "transactions": {"0-2": {"status": "Success",
                               "write_set": {"0x0": "0x1", "0x1": "0x1"}}}}}})js";
  MockExecutor mock = MockExecutor::FromJson(script);
  RunRecord golden = solfi::Run(mock, MakeArtifact("pay_supplier", "p.sol", w), w, 100, "g");
  RunRecord faulty =
      solfi::Run(mock, MakeArtifact("pay_supplier__A_MISP__0", "m.sol", w), w, 100, "m");
  auto pairs = PairRuns(golden, faulty);
  EXPECT_NE(pairs[0].first->write_set, pairs[0].second->write_set);
}

TEST(RunRecordJsonlTest, RoundTrip) {
  Workload w = SmallWorkload("vault.sol", 3);
  RunRecord r = MockRun(R"js({"subjects": {"x": {"transactions": {
      "0": {"write_set": {"0x1": "0x2"}, "read_set": {"0x1": "0x0"},
            "metrics": {"cpu_time": 0.5, "peak_memory": 1024, "wall_time": 0.25}},
      "1": {"status": "Aborted", "gas_used": 100}}}}})js",
                        w, "x");
  std::string text = RunRecordToJsonl(r);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'),
            static_cast<long>(w.calls.size() + 1));
  EXPECT_EQ(RunRecordFromJsonl(text), r);
  TempDir dir;
  WriteRunRecord(r, dir.path() / "runs" / "x.jsonl");
  EXPECT_EQ(ReadRunRecord(dir.path() / "runs" / "x.jsonl"), r);
}

TEST(RunRecordJsonlTest, RejectsMalformed) {
  Workload w = SmallWorkload("vault.sol", 2);
  std::string text = RunRecordToJsonl(MockRun("{}", w, "x"));
  EXPECT_THROW(RunRecordFromJsonl(""), TraceError);
  EXPECT_THROW(RunRecordFromJsonl(text.substr(0, text.rfind('{'))), TraceError);
  std::string bad_status = text;
  bad_status.replace(bad_status.rfind("Success"), 7, "Reverted");
  std::string writes = bad_status;
  writes.replace(writes.rfind("\"write_set\":{}"), 14, "\"write_set\":{\"0x1\":\"0x1\"}");
  EXPECT_NO_THROW(RunRecordFromJsonl(bad_status));
  EXPECT_THROW(RunRecordFromJsonl(writes), TraceError);
}

// Minimal JSON-RPC node: one contract whose functions are keyed by selector.
class FakeNode {
 public:
  explicit FakeNode(bool debug_api) : debug_api_(debug_api) {
    server_.Post("/", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard<std::mutex> lock(mu_);
      json request = json::parse(req.body);
      methods_.push_back(request["method"].get<std::string>());
      json response = {{"jsonrpc", "2.0"}, {"id", request["id"]}};
      try {
        response["result"] = Handle(request["method"], request["params"]);
      } catch (const std::string& message) {
        response["error"] = {{"code", -32000}, {"message", message}};
      }
      res.set_content(response.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeNode() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::vector<std::string> methods() {
    std::lock_guard<std::mutex> lock(mu_);
    return methods_;
  }
  json last_send;
  bool fail_deploy = false;

 private:
  static std::string Selector(const std::string& data) { return data.substr(2, 8); }

  json Handle(const std::string& method, const json& params) {
    if (method == "evm_snapshot") {
      snapshot_ = storage_;
      return "0x1";
    }
    if (method == "evm_revert") {
      storage_ = snapshot_;
      return true;
    }
    if (method == "eth_getTransactionReceipt") return receipts_.at(params[0]);
    if (method == "eth_call") {
      std::string sel = Selector(params[0]["data"]);
      if (sel == FunctionSelector("boom()")) throw std::string("execution reverted");
      if (sel == FunctionSelector("starve()")) throw std::string("out of gas");
      if (sel == FunctionSelector("burn()")) throw std::string("invalid opcode");
      return "0x" + std::string(62, '0') + "2a";
    }
    if (method == "eth_sendTransaction") {
      last_send = params[0];
      std::string hash = "0x" + std::to_string(receipts_.size() + 1);
      json receipt = {{"transactionHash", hash}, {"status", "0x1"}, {"gasUsed", "0x5208"}};
      if (!params[0].contains("to")) {
        receipt["contractAddress"] = kAddress;
        if (fail_deploy) receipt["status"] = "0x0";
      } else {
        std::string data = params[0]["data"];
        std::string sel = Selector(data);
        if (sel == FunctionSelector("set(uint256)")) {
          pre_ = storage_;
          storage_["0x0"] = "0x" + data.substr(10);
        } else if (sel == FunctionSelector("boom()") ||
                   sel == FunctionSelector("starve()")) {
          receipt["status"] = "0x0";
        } else if (sel == FunctionSelector("burn()")) {
          receipt["status"] = "0x0";
          receipt["gasUsed"] = params[0]["gas"];
        }
      }
      receipts_[hash] = receipt;
      return hash;
    }
    if (method == "debug_traceTransaction") {
      if (!debug_api_) throw std::string("method not found");
      return {{"pre", {{kAddress, {{"storage", pre_}}}}},
              {"post", {{kAddress, {{"storage", storage_}}}}}};
    }
    if (method == "eth_getProof") {
      return {{"storageHash", "0x" + HexEncode(Keccak256(json(storage_).dump()))}};
    }
    throw std::string("unknown method " + method);
  }

  static constexpr const char* kAddress = "0x00000000000000000000000000000000000000c0";
  bool debug_api_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  std::vector<std::string> methods_;
  json storage_ = json::object();
  json snapshot_ = json::object();
  json pre_ = json::object();
  std::map<std::string, json> receipts_;
};

struct RpcFixture {
  Workload workload;
  Artifact artifact;
  TempDir dir;

  RpcFixture() {
    auto unit = Parse(
        "contract Node { function Node(uint a) public {} function set(uint v) public {}\n"
        "  function boom() public {} function starve() public {}\n"
        "  function burn() public {} }");
    workload = GenerateWorkload(*unit, "node", {0, 1, std::string(kDefaultSender)});
    WriteText(dir.path() / "node.sol", "");
    WriteText(dir.path() / "node.bin", "0x6001\n");
    artifact = MakeArtifact("node", dir.path() / "node.sol", workload);
  }
};

TEST(RpcExecutorTest, RunAgainstFakeNode) {
  FakeNode node(true);
  RpcFixture fx;
  RpcConfig config;
  config.endpoint = node.endpoint();
  config.node_pid = static_cast<int>(getpid());
  RpcExecutor rpc(config);
  RunRecord r = solfi::Run(rpc, fx.artifact, fx.workload, 50000, "node");
  ASSERT_TRUE(r.complete) << r.note;
  ASSERT_EQ(r.traces.size(), 4u);
  EXPECT_EQ(r.traces[0].status, TxStatus::Success);
  EXPECT_EQ(r.traces[0].return_value, HexDecode(std::string(62, '0') + "2a"));
  EXPECT_EQ(r.traces[0].write_set, (StorageMap{{"0x0", "0x0"}}));
  EXPECT_TRUE(r.traces[0].metrics.wall_time.has_value());
  EXPECT_TRUE(r.traces[0].metrics.cpu_time.has_value());
  EXPECT_TRUE(r.traces[0].metrics.peak_memory.has_value());
  EXPECT_EQ(r.traces[1].status, TxStatus::Reverted);
  EXPECT_EQ(r.traces[1].gas_used, 21000u);
  EXPECT_EQ(r.traces[2].status, TxStatus::OutOfGas);
  EXPECT_EQ(r.traces[3].status, TxStatus::Aborted);
  EXPECT_EQ(r.traces[3].gas_used, 50000u);
  EXPECT_EQ(node.last_send["gas"], "0xc350");
  auto methods = node.methods();
  EXPECT_EQ(methods.at(0), "evm_snapshot");
}

TEST(RpcExecutorTest, CallDataIsAbiEncoded) {
  FakeNode node(true);
  RpcFixture fx;
  RpcConfig config;
  config.endpoint = node.endpoint();
  RpcExecutor rpc(config);
  rpc.Reset();
  DeployHandle h = rpc.Deploy(fx.artifact);
  EXPECT_EQ(h.address, "0x00000000000000000000000000000000000000c0");
  CallSpec call;
  call.signature = "set(uint256)";
  call.args = {V(BigInt(5))};
  TransactionTrace t = rpc.Invoke(h, call, fx.workload.functions.at(0), 1000);
  EXPECT_EQ(node.last_send["data"],
            "0x" + FunctionSelector("set(uint256)") + std::string(63, '0') + "5");
  EXPECT_EQ(t.write_set, (StorageMap{{"0x0", "0x5"}}));
}

TEST(RpcExecutorTest, StorageRootFallback) {
  FakeNode node(false);
  RpcFixture fx;
  RpcConfig config;
  config.endpoint = node.endpoint();
  RpcExecutor rpc(config);
  RunRecord r = solfi::Run(rpc, fx.artifact, fx.workload, 50000, "node");
  ASSERT_TRUE(r.complete) << r.note;
  ASSERT_EQ(r.traces[0].write_set.size(), 1u);
  EXPECT_EQ(r.traces[0].write_set.begin()->first, "*");
  EXPECT_TRUE(r.traces[1].write_set.empty());
}

TEST(RpcExecutorTest, DeployFailures) {
  FakeNode node(true);
  node.fail_deploy = true;
  RpcFixture fx;
  RpcConfig config;
  config.endpoint = node.endpoint();
  RpcExecutor rpc(config);
  RunRecord r = solfi::Run(rpc, fx.artifact, fx.workload, 50000, "node");
  EXPECT_TRUE(r.deploy_failed);
  Artifact missing = fx.artifact;
  missing.source_path = fx.dir.path() / "other.sol";
  missing.contract_name = "Other";
  EXPECT_THROW(FindBytecode(missing), DeployError);
}

TEST(RpcExecutorTest, UnreachableNodeIsExecutorFault) {
  RpcFixture fx;
  RpcConfig config;
  config.endpoint = "http://127.0.0.1:1";
  config.http_timeout_s = 2;
  RpcExecutor rpc(config);
  RunRecord r = solfi::Run(rpc, fx.artifact, fx.workload, 50000, "node");
  EXPECT_FALSE(r.complete);
  EXPECT_NE(r.note.find("failed"), std::string::npos);
}

}  // namespace
}  // namespace solfi
