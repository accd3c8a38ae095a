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

#ifndef SOLFI_TESTS_SUB_CONTRACT_GEN_H_
#define SOLFI_TESTS_SUB_CONTRACT_GEN_H_

#include <random>

#include "solfi/ast.h"

namespace solfi::testing {

// Derives a random sub-contract from a parsed unit: each contract member and
// each statement inside a block is independently dropped with probability
// `drop`. The result stays inside the supported grammar.
inline AstNode::Ptr RandomSubContract(const AstNode& unit, std::mt19937& rng,
                                      double drop = 0.3) {
  auto copy = unit.Clone();
  std::bernoulli_distribution coin(drop);
  auto prune = [&](auto&& self, AstNode& node) -> void {
    const bool droppable_children =
        node.kind == NodeKind::Block ||
        node.kind == NodeKind::ContractDefinition ||
        node.kind == NodeKind::SourceUnit;
    if (droppable_children) {
      std::vector<AstNode::Ptr> kept;
      for (auto& child : node.children) {
        if (coin(rng)) continue;
        kept.push_back(std::move(child));
      }
      node.children = std::move(kept);
    }
    for (auto& child : node.children) self(self, *child);
  };
  prune(prune, *copy);
  return copy;
}

}  // namespace solfi::testing

#endif  // SOLFI_TESTS_SUB_CONTRACT_GEN_H_
