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

#ifndef SOLFI_FAULT_MODEL_H_
#define SOLFI_FAULT_MODEL_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "solfi/ast.h"
#include "solfi/fault_id.h"

namespace solfi {

// A matched location. `anchor` is the id of the node the condition held on;
// `span` is that node's span in the unit that was matched.
struct InjectionSite {
  FaultId fault;
  SourceSpan span;
  std::size_t ordinal = 0;
  NodeId anchor = 0;

  bool operator==(const InjectionSite&) const = default;
};

// A (condition, transform) pair. The condition sees a node together with its
// ancestor chain; the transform edits the tree in place at a matched hit.
struct FaultOperator {
  FaultId id;
  std::string description;
  std::function<bool(const ConstHit&)> condition;
  std::function<void(const Hit&)> transform;
};

// All 36 operators in defect-table order.
const std::vector<FaultOperator>& Registry();
const FaultOperator& OperatorFor(FaultId id);

std::vector<InjectionSite> MatchSites(const FaultOperator& op,
                                      const AstNode& unit);

// Returns a mutated copy of `unit`. Throws SiteMismatch when the site's anchor
// is gone, already carries this fault, or no longer satisfies the condition.
AstNode::Ptr Apply(const FaultOperator& op, const AstNode& unit,
                   const InjectionSite& site);
void ApplyInPlace(const FaultOperator& op, AstNode& unit,
                  const InjectionSite& site);

}  // namespace solfi

#endif  // SOLFI_FAULT_MODEL_H_
