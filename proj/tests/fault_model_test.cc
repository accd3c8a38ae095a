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

#include "solfi/fault_model.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "solfi/error.h"
#include "test_util.h"

namespace solfi {

void PrintTo(FaultId id, std::ostream* os) { *os << FaultName(id); }

namespace {

using testing::CorpusFiles;
using testing::ReadText;

// Defect classification table, transcribed by hand.
struct TableRow {
  const char* id;
  const char* cls;
  const char* nature;
};
constexpr TableRow kDefectTable[] = {
    {"A_MISP", "Assignment", "Missing"},
    {"A_MILV", "Assignment", "Missing"},
    {"A_MISV", "Assignment", "Missing"},
    {"A_MC", "Assignment", "Missing"},
    {"A_MCV", "Assignment", "Missing"},
    {"A_WVAE", "Assignment", "Wrong"},
    {"A_WIS", "Assignment", "Wrong"},
    {"A_WIT", "Assignment", "Wrong"},
    {"A_WVATMD", "Assignment", "Wrong"},
    {"A_WVAA", "Assignment", "Wrong"},
    {"A_WCN", "Assignment", "Wrong"},
    {"A_WVT", "Assignment", "Wrong"},
    {"A_WDISV", "Assignment", "Wrong"},
    {"A_WVN", "Assignment", "Wrong"},
    {"CH_MRTS", "Checking", "Missing"},
    {"CH_MRIV", "Checking", "Missing"},
    {"CH_MROTS", "Checking", "Missing"},
    {"CH_MROIV", "Checking", "Missing"},
    {"CH_MRATS", "Checking", "Missing"},
    {"CH_MRAIV", "Checking", "Missing"},
    {"CH_MCHGL", "Checking", "Missing"},
    {"CH_MCHAO", "Checking", "Missing"},
    {"CH_MCHSF", "Checking", "Missing"},
    {"CH_WRA", "Checking", "Wrong"},
    {"I_MVMSV", "Interface", "Missing"},
    {"I_MFVM", "Interface", "Missing"},
    {"I_WVPF", "Interface", "Wrong"},
    {"AL_MITSS", "Algorithm", "Missing"},
    {"AL_MIIVS", "Algorithm", "Missing"},
    {"AL_WRAR", "Algorithm", "Wrong"},
    {"AL_WEH", "Algorithm", "Wrong"},
    {"AL_ECSWS", "Algorithm", "Extraneous"},
    {"F_MWF", "Function", "Missing"},
    {"F_MINHERITANCE", "Function", "Missing"},
    {"F_WIO", "Function", "Wrong"},
    {"F_EINHERITANCE", "Function", "Extraneous"},
};

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<InjectionSite> SitesFor(FaultId id, const AstNode& unit) {
  return MatchSites(OperatorFor(id), unit);
}

TEST(RegistryTest, MatchesDefectTable) {
  const auto& registry = Registry();
  ASSERT_EQ(registry.size(), 36u);
  ASSERT_EQ(std::size(kDefectTable), 36u);
  for (std::size_t i = 0; i < registry.size(); ++i) {
    EXPECT_EQ(FaultName(registry[i].id), kDefectTable[i].id);
    EXPECT_EQ(DefectClassName(ClassOf(registry[i].id)), kDefectTable[i].cls);
    EXPECT_EQ(DefectNatureName(NatureOf(registry[i].id)),
              kDefectTable[i].nature);
    EXPECT_EQ(&OperatorFor(registry[i].id), &registry[i]);
  }
  EXPECT_EQ(registry[0].id, FaultId::A_MISP);
}

TEST(RegistryTest, NamesRoundTripAndAlias) {
  for (FaultId id : AllFaults()) EXPECT_EQ(ParseFaultId(FaultName(id)), id);
  EXPECT_EQ(ParseFaultId("A_MIT"), FaultId::A_WIT);
  EXPECT_FALSE(ParseFaultId("A_REENTRANCY").has_value());
}

TEST(MatchSitesTest, UninitializedStoragePointerSite) {
  auto unit = Parse(ReadText(testing::CorpusDir() / "pay_supplier.sol"));
  auto sites = SitesFor(FaultId::A_MISP, *unit);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].span.line, 8u);
  EXPECT_EQ(sites[0].ordinal, 0u);
  EXPECT_EQ(sites[0].fault, FaultId::A_MISP);
}

TEST(MatchSitesTest, NoPragmaNoCompilerVersionSite) {
  auto unit = Parse("contract C { uint x; }");
  EXPECT_TRUE(SitesFor(FaultId::A_MCV, *unit).empty());
}

TEST(MatchSitesTest, TwoSenderRequires) {
  auto unit = Parse(
      "contract C {\n"
      "    address owner;\n"
      "    function a() public { require(msg.sender == owner); }\n"
      "    function b(uint v) public { require(v > 1); }\n"
      "    function c() public { require(msg.sender == owner); }\n"
      "}\n");
  auto sites = SitesFor(FaultId::CH_MRTS, *unit);
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_EQ(sites[0].ordinal, 0u);
  EXPECT_EQ(sites[1].ordinal, 1u);
  EXPECT_LT(sites[0].span.offset, sites[1].span.offset);
}

TEST(MatchSitesTest, SenderTakesPrecedenceOverInputVariable) {
  auto unit = Parse(
      "contract C {\n"
      "    function f(address who) public {\n"
      "        require(msg.sender == who);\n"
      "        require(who != address(0));\n"
      "        if (msg.sender == who) { who = address(0); }\n"
      "        if (who == address(0)) { revert(); }\n"
      "    }\n"
      "}\n");
  auto sender = SitesFor(FaultId::CH_MRTS, *unit);
  auto input = SitesFor(FaultId::CH_MRIV, *unit);
  ASSERT_EQ(sender.size(), 1u);
  ASSERT_EQ(input.size(), 1u);
  EXPECT_NE(sender[0].anchor, input[0].anchor);
  auto if_sender = SitesFor(FaultId::AL_MITSS, *unit);
  auto if_input = SitesFor(FaultId::AL_MIIVS, *unit);
  ASSERT_EQ(if_sender.size(), 1u);
  ASSERT_EQ(if_input.size(), 1u);
  EXPECT_NE(if_sender[0].anchor, if_input[0].anchor);
}

TEST(MatchSitesTest, LoopFreeContractHasNoContinueSite) {
  auto unit = Parse(ReadText(testing::CorpusDir() / "pay_supplier.sol"));
  EXPECT_TRUE(SitesFor(FaultId::AL_ECSWS, *unit).empty());
}

TEST(ApplyTest, StoragePointerEdit) {
  auto unit = Parse(ReadText(testing::CorpusDir() / "pay_supplier.sol"));
  const auto& op = OperatorFor(FaultId::A_MISP);
  auto mutant = Apply(op, *unit, MatchSites(op, *unit).at(0));
  auto lines = Lines(Emit(*mutant));
  EXPECT_EQ(lines.at(7), "        Person storage newTransfer;");
  EXPECT_EQ(Lines(Emit(*unit)).at(7), "        Person memory newTransfer;");
}

TEST(ApplyTest, PragmaRemoved) {
  auto unit = Parse("pragma solidity ^0.4.24;\ncontract C { uint x; }");
  const auto& op = OperatorFor(FaultId::A_MCV);
  auto mutant = Apply(op, *unit, MatchSites(op, *unit).at(0));
  ASSERT_EQ(mutant->children.size(), 1u);
  EXPECT_EQ(mutant->child(0)->kind, NodeKind::ContractDefinition);
}

TEST(ApplyTest, TxOriginAuthorization) {
  auto unit = Parse(
      "contract C { address owner; function f() public { "
      "require(msg.sender == owner); } }");
  const auto& op = OperatorFor(FaultId::CH_WRA);
  auto mutant = Apply(op, *unit, MatchSites(op, *unit).at(0));
  std::string text = Emit(*mutant);
  EXPECT_NE(text.find("require(tx.origin == owner);"), std::string::npos);
  EXPECT_EQ(text.find("msg.sender"), std::string::npos);
}

TEST(ApplyTest, OrSubexpressionOnSenderDropped) {
  auto unit = Parse(
      "contract C { address owner; function f(address who) public { "
      "require(msg.sender == owner || who == owner); } }");
  const auto& sender = OperatorFor(FaultId::CH_MROTS);
  const auto& input = OperatorFor(FaultId::CH_MROIV);
  EXPECT_NE(Emit(*Apply(sender, *unit, MatchSites(sender, *unit).at(0)))
                .find("require(who == owner);"),
            std::string::npos);
  EXPECT_NE(Emit(*Apply(input, *unit, MatchSites(input, *unit).at(0)))
                .find("require(msg.sender == owner);"),
            std::string::npos);
}

TEST(ApplyTest, RequireAssertSwap) {
  auto unit = Parse(
      "contract C { function f(uint a) public { require(a > 1, \"m\"); "
      "assert(a < 9); } }");
  const auto& op = OperatorFor(FaultId::AL_WRAR);
  auto sites = MatchSites(op, *unit);
  ASSERT_EQ(sites.size(), 2u);
  EXPECT_NE(Emit(*Apply(op, *unit, sites[0])).find("        assert(a > 1);"),
            std::string::npos);
  EXPECT_NE(Emit(*Apply(op, *unit, sites[1])).find("        require(a < 9);"),
            std::string::npos);
}

TEST(ApplyTest, ConstructorKeywordBecomesFunction) {
  auto unit = Parse("contract C { constructor() public payable {} }");
  const auto& op = OperatorFor(FaultId::A_WCN);
  auto mutant = Apply(op, *unit, MatchSites(op, *unit).at(0));
  EXPECT_EQ(Emit(*mutant),
            "contract C {\n    function C_() public payable {}\n}\n");
}

TEST(ApplyTest, MissingWithdrawRequiresUniqueExit) {
  auto two_exits = Parse(
      "contract C {\n"
      "    function() public payable {}\n"
      "    function a() public { msg.sender.transfer(1); }\n"
      "    function b() public { msg.sender.send(1); }\n"
      "}\n");
  EXPECT_TRUE(SitesFor(FaultId::F_MWF, *two_exits).empty());
  auto no_payable = Parse(
      "contract C { function a() public { msg.sender.transfer(1); } }");
  EXPECT_TRUE(SitesFor(FaultId::F_MWF, *no_payable).empty());
}

TEST(ApplyTest, StaleSiteRejected) {
  auto unit = Parse(ReadText(testing::CorpusDir() / "wallet.sol"));
  const auto& op = OperatorFor(FaultId::CH_MRTS);
  auto site = MatchSites(op, *unit).at(0);
  auto mutant = Apply(op, *unit, site);
  EXPECT_THROW(ApplyInPlace(op, *mutant, site), SiteMismatch);
  InjectionSite wrong = site;
  wrong.fault = FaultId::CH_WRA;
  EXPECT_THROW(Apply(op, *unit, wrong), SiteMismatch);
}

TEST(ApplyTest, DoubleInjectionRejected) {
  auto unit = Parse(ReadText(testing::CorpusDir() / "wallet.sol"));
  const auto& op = OperatorFor(FaultId::CH_WRA);
  auto site = MatchSites(op, *unit).at(0);
  auto mutant = Apply(op, *unit, site);
  EXPECT_THROW(ApplyInPlace(op, *mutant, site), SiteMismatch);
}

// Nearest ancestor-or-self that is a statement, a member or a top-level item.
std::size_t ScopeIndex(const ConstHit& hit) {
  std::vector<const AstNode*> chain = hit.ancestors;
  chain.push_back(hit.node);
  for (std::size_t i = chain.size(); i-- > 1;) {
    NodeKind parent = chain[i - 1]->kind;
    if (parent == NodeKind::Block || parent == NodeKind::ContractDefinition ||
        parent == NodeKind::SourceUnit) {
      return i;
    }
  }
  return 0;
}

class CorpusOperatorTest : public ::testing::TestWithParam<FaultId> {};

TEST_P(CorpusOperatorTest, CoherentLocalAndGuarded) {
  const auto& op = OperatorFor(GetParam());
  for (const auto& path : CorpusFiles()) {
    std::string source = ReadText(path);
    auto unit = Parse(source);
    auto original_lines = Lines(source);
    for (const auto& site : MatchSites(op, *unit)) {
      SCOPED_TRACE(path.filename().string() + " #" +
                   std::to_string(site.ordinal));
      AstNode::Ptr mutant;
      ASSERT_NO_THROW(mutant = Apply(op, *unit, site));
      std::string text = Emit(*mutant);
      EXPECT_NE(text, source);
      EXPECT_EQ(Emit(*Parse(text)), text);

      // Idempotence guard.
      for (const auto& again : MatchSites(op, *mutant)) {
        EXPECT_NE(again.anchor, site.anchor);
      }

      // Locality: the changed window of the original lies inside the
      // enclosing statement or declaration (one separator line of slack).
      auto mutant_lines = Lines(text);
      std::size_t prefix = 0;
      while (prefix < original_lines.size() && prefix < mutant_lines.size() &&
             original_lines[prefix] == mutant_lines[prefix]) {
        ++prefix;
      }
      std::size_t suffix = 0;
      while (suffix < original_lines.size() - prefix &&
             suffix < mutant_lines.size() - prefix &&
             original_lines[original_lines.size() - 1 - suffix] ==
                 mutant_lines[mutant_lines.size() - 1 - suffix]) {
        ++suffix;
      }
      ConstHit hit = FindById(static_cast<const AstNode&>(*unit), site.anchor);
      ASSERT_NE(hit.node, nullptr);
      std::vector<const AstNode*> chain = hit.ancestors;
      chain.push_back(hit.node);
      const AstNode* scope = chain[ScopeIndex(hit)];
      std::size_t first = scope->span.line;
      std::size_t last = LineOf({scope->span.end() - 1, 1, 0}, source);
      // 1-based inclusive window of changed original lines.
      std::size_t changed_begin = prefix + 1;
      std::size_t changed_end = original_lines.size() - suffix;
      EXPECT_GE(changed_begin + 1, first);
      EXPECT_LE(changed_end, last + 1);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllOperators, CorpusOperatorTest, ::testing::ValuesIn(AllFaults()),
    [](const ::testing::TestParamInfo<FaultId>& info) {
      return std::string(FaultName(info.param));
    });

TEST(CoverageTest, EveryOperatorHasACorpusSite) {
  std::vector<AstNode::Ptr> units;
  for (const auto& path : CorpusFiles()) units.push_back(Parse(ReadText(path)));
  for (FaultId id : AllFaults()) {
    std::size_t total = 0;
    for (const auto& unit : units) total += SitesFor(id, *unit).size();
    EXPECT_GE(total, 1u) << FaultName(id);
  }
}

}  // namespace
}  // namespace solfi
