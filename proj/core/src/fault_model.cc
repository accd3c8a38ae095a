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

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "solfi/error.h"
#include "solidity_types.h"

namespace solfi {
namespace {

using NameSet = std::set<std::string, std::less<>>;

// ---------------------------------------------------------------------------
// Tree queries

bool AnyNode(const AstNode& root,
             const std::function<bool(const AstNode&)>& pred) {
  if (pred(root)) return true;
  for (const auto& child : root.children) {
    if (AnyNode(*child, pred)) return true;
  }
  return false;
}

template <typename Fn>
void ForEachNode(AstNode& root, const Fn& fn) {
  fn(root);
  for (auto& child : root.children) ForEachNode(*child, fn);
}

bool IsIdentifier(const AstNode& n, std::string_view name) {
  return n.kind == NodeKind::Identifier && n.Attr(attr::kName) == name;
}

bool IsMember(const AstNode& n, std::string_view base,
              std::string_view member) {
  return n.kind == NodeKind::MemberAccess &&
         n.Attr(attr::kMemberName) == member && !n.children.empty() &&
         IsIdentifier(*n.child(0), base);
}

bool IsMsgSender(const AstNode& n) { return IsMember(n, "msg", "sender"); }

bool ReferencesSender(const AstNode& expr) { return AnyNode(expr, IsMsgSender); }

bool ReferencesAny(const AstNode& expr, const NameSet& names) {
  if (names.empty()) return false;
  return AnyNode(expr, [&](const AstNode& n) {
    return n.kind == NodeKind::Identifier && names.count(n.Attr(attr::kName));
  });
}

NameSet IdentifierNames(const AstNode& root) {
  static const NameSet kGlobals = {"msg", "tx", "block", "this", "now"};
  NameSet names;
  AnyNode(root, [&](const AstNode& n) {
    if (n.kind == NodeKind::Identifier && !kGlobals.count(n.Attr(attr::kName))) {
      names.insert(n.Attr(attr::kName));
    }
    return false;
  });
  return names;
}

// The call inside `stmt` when it is `name(...);`.
const AstNode* BuiltinCallStatement(const AstNode& stmt,
                                    std::initializer_list<std::string_view> names) {
  if (stmt.kind != NodeKind::ExpressionStatement || stmt.children.empty()) {
    return nullptr;
  }
  const AstNode& call = *stmt.child(0);
  if (call.kind != NodeKind::FunctionCall || call.children.empty()) {
    return nullptr;
  }
  for (auto name : names) {
    if (IsIdentifier(*call.child(0), name)) return &call;
  }
  return nullptr;
}

const AstNode* RequireCondition(const AstNode& stmt) {
  const AstNode* call = BuiltinCallStatement(stmt, {"require"});
  if (call == nullptr || call->children.size() < 2) return nullptr;
  return call->child(1);
}

bool IsAbortStatement(const AstNode& stmt) {
  if (stmt.kind == NodeKind::ThrowStatement) return true;
  if (BuiltinCallStatement(stmt, {"revert"}) != nullptr) return true;
  return stmt.kind == NodeKind::Block && stmt.children.size() == 1 &&
         IsAbortStatement(*stmt.child(0));
}

bool IsGuardIf(const AstNode& stmt) {
  return stmt.kind == NodeKind::IfStatement && stmt.children.size() == 2 &&
         IsAbortStatement(*stmt.child(1));
}

// Condition of a `require(c)` statement or an `if (c) revert();` guard.
const AstNode* CheckCondition(const AstNode& stmt) {
  if (const AstNode* cond = RequireCondition(stmt)) return cond;
  if (IsGuardIf(stmt)) return stmt.child(0);
  return nullptr;
}

bool IsSelfdestructStatement(const AstNode& stmt) {
  return BuiltinCallStatement(stmt, {"selfdestruct", "suicide"}) != nullptr;
}

// x.send(v), x.call(...), x.call.value(v)(...), x.call.gas(g)(...)
bool IsLowLevelCall(const AstNode& expr) {
  if (expr.kind != NodeKind::FunctionCall || expr.children.empty()) {
    return false;
  }
  const AstNode& callee = *expr.child(0);
  if (callee.kind == NodeKind::MemberAccess) {
    const auto& member = callee.Attr(attr::kMemberName);
    return member == "send" || member == "call";
  }
  if (callee.kind == NodeKind::FunctionCall && !callee.children.empty()) {
    const AstNode& inner = *callee.child(0);
    return inner.kind == NodeKind::MemberAccess &&
           (inner.Attr(attr::kMemberName) == "value" ||
            inner.Attr(attr::kMemberName) == "gas") &&
           !inner.children.empty() &&
           inner.child(0)->kind == NodeKind::MemberAccess &&
           inner.child(0)->Attr(attr::kMemberName) == "call";
  }
  return false;
}

bool ParentIs(const ConstHit& hit, NodeKind kind) {
  return hit.parent() != nullptr && hit.parent()->kind == kind;
}

const AstNode* Nearest(const ConstHit& hit,
                       std::initializer_list<NodeKind> kinds) {
  for (auto it = hit.ancestors.rbegin(); it != hit.ancestors.rend(); ++it) {
    for (NodeKind kind : kinds) {
      if ((*it)->kind == kind) return *it;
    }
  }
  return nullptr;
}

const AstNode* EnclosingContract(const ConstHit& hit) {
  return Nearest(hit, {NodeKind::ContractDefinition});
}

const AstNode* EnclosingFunction(const ConstHit& hit) {
  return Nearest(hit,
                 {NodeKind::FunctionDefinition, NodeKind::ConstructorDefinition});
}

const AstNode* Root(const ConstHit& hit) {
  return hit.ancestors.empty() ? hit.node : hit.ancestors.front();
}

NameSet ParameterNames(const ConstHit& hit) {
  NameSet names;
  const AstNode* fn = EnclosingFunction(hit);
  if (fn == nullptr || fn->children.empty()) return names;
  for (const auto& param : fn->child(0)->children) {
    if (!param->Attr(attr::kName).empty()) names.insert(param->Attr(attr::kName));
  }
  return names;
}

// True when the hit node lies inside the condition of an enclosing require.
bool InsideRequireCondition(const ConstHit& hit) {
  for (std::size_t i = hit.ancestors.size(); i-- > 0;) {
    const AstNode* cond = RequireCondition(*hit.ancestors[i]);
    if (cond == nullptr) continue;
    if (cond == hit.node) return true;
    for (std::size_t j = i + 1; j < hit.ancestors.size(); ++j) {
      if (hit.ancestors[j] == cond) return true;
    }
    return false;
  }
  return false;
}

bool IsLegacyConstructor(const AstNode& fn, const AstNode* contract) {
  return fn.kind == NodeKind::FunctionDefinition && contract != nullptr &&
         !fn.Attr(attr::kName).empty() &&
         fn.Attr(attr::kName) == contract->Attr(attr::kName);
}

std::vector<const AstNode*> Bases(const AstNode& contract) {
  std::vector<const AstNode*> bases;
  for (const auto& child : contract.children) {
    if (child->kind == NodeKind::InheritanceSpecifier) bases.push_back(child.get());
  }
  return bases;
}

const AstNode* ContractNamed(const AstNode& unit, std::string_view name) {
  for (const auto& child : unit.children) {
    if (child->kind == NodeKind::ContractDefinition &&
        child->Attr(attr::kName) == name) {
      return child.get();
    }
  }
  return nullptr;
}

// Transitive base names of `contract` resolvable inside `unit`.
NameSet Ancestors(const AstNode& unit, const AstNode& contract) {
  NameSet seen;
  std::vector<const AstNode*> todo = {&contract};
  while (!todo.empty()) {
    const AstNode* current = todo.back();
    todo.pop_back();
    for (const AstNode* base : Bases(*current)) {
      const auto& name = base->Attr(attr::kName);
      if (!seen.insert(name).second) continue;
      if (const AstNode* def = ContractNamed(unit, name)) todo.push_back(def);
    }
  }
  return seen;
}

bool DeclaresStateVariable(const AstNode& contract, std::string_view name) {
  return std::any_of(contract.children.begin(), contract.children.end(),
                     [&](const auto& c) {
                       return c->kind == NodeKind::StateVariableDeclaration &&
                              c->Attr(attr::kName) == name;
                     });
}

// First non-constant state variable of the base named by `spec` that the
// derived contract does not already declare.
const AstNode* ShadowCandidate(const ConstHit& hit) {
  const AstNode* derived = hit.parent();
  const AstNode* base = ContractNamed(*Root(hit), hit.node->Attr(attr::kName));
  if (derived == nullptr || base == nullptr) return nullptr;
  for (const auto& member : base->children) {
    if (member->kind == NodeKind::StateVariableDeclaration &&
        !member->Flag(attr::kIsConstant) &&
        !DeclaresStateVariable(*derived, member->Attr(attr::kName))) {
      return member.get();
    }
  }
  return nullptr;
}

const AstNode* ExtraBaseCandidate(const ConstHit& hit) {
  const AstNode& unit = *Root(hit);
  const AstNode& contract = *hit.node;
  NameSet excluded = Ancestors(unit, contract);
  for (const AstNode* base : Bases(contract)) {
    if (const AstNode* def = ContractNamed(unit, base->Attr(attr::kName))) {
      auto upper = Ancestors(unit, *def);
      excluded.insert(upper.begin(), upper.end());
    }
  }
  for (const auto& candidate : unit.children) {
    if (candidate.get() == &contract) break;
    if (candidate->kind != NodeKind::ContractDefinition) continue;
    const auto& name = candidate->Attr(attr::kName);
    if (excluded.count(name)) continue;
    if (Ancestors(unit, *candidate).count(contract.Attr(attr::kName))) continue;
    return candidate.get();
  }
  return nullptr;
}

// Type of a named variable visible from `hit`: function parameters and
// locals, then state variables of the contract and its bases.
const AstNode* ResolveVariableType(const ConstHit& hit, std::string_view name) {
  if (const AstNode* fn = EnclosingFunction(hit)) {
    const AstNode* found = nullptr;
    AnyNode(*fn, [&](const AstNode& n) {
      if ((n.kind == NodeKind::Parameter ||
           n.kind == NodeKind::VariableDeclarationStatement) &&
          n.Attr(attr::kName) == name) {
        found = n.child(0);
        return true;
      }
      return false;
    });
    if (found != nullptr) return found;
  }
  const AstNode* contract = EnclosingContract(hit);
  if (contract == nullptr) return nullptr;
  std::vector<const AstNode*> scope = {contract};
  for (const auto& base : Ancestors(*Root(hit), *contract)) {
    if (const AstNode* def = ContractNamed(*Root(hit), base)) scope.push_back(def);
  }
  for (const AstNode* c : scope) {
    for (const auto& member : c->children) {
      if (member->kind == NodeKind::StateVariableDeclaration &&
          member->Attr(attr::kName) == name) {
        return member->child(0);
      }
    }
  }
  return nullptr;
}

bool IsAddressThis(const AstNode& expr) {
  return expr.kind == NodeKind::FunctionCall && expr.children.size() == 2 &&
         expr.child(0)->kind == NodeKind::ElementaryTypeName &&
         expr.child(0)->Attr(attr::kName) == "address" &&
         IsIdentifier(*expr.child(1), "this");
}

bool IsEtherExit(const AstNode& fn) {
  if (fn.children.size() < 3) return false;
  return AnyNode(*fn.child(2), [](const AstNode& n) {
    if (n.kind != NodeKind::FunctionCall || n.children.empty()) return false;
    const AstNode& callee = *n.child(0);
    if (callee.kind == NodeKind::MemberAccess &&
        (callee.Attr(attr::kMemberName) == "transfer" ||
         callee.Attr(attr::kMemberName) == "send")) {
      return n.children.size() == 2 && !IsIdentifier(*callee.child(0), "this");
    }
    return IsLowLevelCall(n) && callee.kind == NodeKind::FunctionCall &&
           callee.child(0)->Attr(attr::kMemberName) == "value";
  });
}

bool IsPayable(const AstNode& n) {
  return (n.kind == NodeKind::FunctionDefinition ||
          n.kind == NodeKind::ConstructorDefinition) &&
         n.Attr(attr::kStateMutability) == "payable";
}

bool IsDeclaration(const AstNode& n) {
  return n.kind == NodeKind::StateVariableDeclaration ||
         n.kind == NodeKind::VariableDeclarationStatement;
}

const AstNode* DeclaredElementaryType(const AstNode& n) {
  if (!IsDeclaration(n) || n.children.empty()) return nullptr;
  const AstNode* type = n.child(0);
  return type->kind == NodeKind::ElementaryTypeName ? type : nullptr;
}

bool InAssignedValue(const ConstHit& hit) {
  const AstNode* below = hit.node;
  for (auto it = hit.ancestors.rbegin(); it != hit.ancestors.rend(); ++it) {
    const AstNode* a = *it;
    if ((a->kind == NodeKind::Assignment || IsDeclaration(*a)) &&
        a->children.size() == 2 && a->child(1) == below) {
      return true;
    }
    below = a;
  }
  return false;
}

bool IsArithmetic(const AstNode& n) {
  static const NameSet kBinary = {"+", "-", "*", "/", "%", "**"};
  static const NameSet kCompound = {"+=", "-=", "*=", "/=", "%="};
  const auto& op = n.Attr(attr::kOperator);
  switch (n.kind) {
    case NodeKind::BinaryOp: return kBinary.count(op) > 0;
    case NodeKind::Assignment: return kCompound.count(op) > 0;
    case NodeKind::UnaryOp: return op == "++" || op == "--";
    default: return false;
  }
}

bool HasComparison(const AstNode& expr) {
  return AnyNode(expr, [](const AstNode& n) {
    const auto& op = n.Attr(attr::kOperator);
    return n.kind == NodeKind::BinaryOp &&
           (op == "<" || op == ">" || op == "<=" || op == ">=");
  });
}

// Operand index of a ||/&& node whose removal is requested, or -1.
int DroppedOperand(const ConstHit& hit, std::string_view op, bool on_sender) {
  const AstNode& n = *hit.node;
  if (n.kind != NodeKind::BinaryOp || n.Attr(attr::kOperator) != op ||
      !InsideRequireCondition(hit)) {
    return -1;
  }
  NameSet params = ParameterNames(hit);
  auto selects = [&](const AstNode& operand) {
    if (on_sender) return ReferencesSender(operand);
    return !ReferencesSender(operand) && ReferencesAny(operand, params);
  };
  bool left = selects(*n.child(0));
  bool right = selects(*n.child(1));
  if (left == right) return -1;
  return left ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Tree edits

void FreshIds(AstNode& node) {
  ForEachNode(node, [](AstNode& n) {
    n.id = AstNode::NextSyntheticId();
    n.marks.clear();
  });
}

void Remove(const Hit& hit) {
  AstNode* parent = hit.parent();
  parent->children.erase(parent->children.begin() +
                         static_cast<std::ptrdiff_t>(parent->IndexOf(hit.node)));
}

void Replace(const Hit& hit, AstNode::Ptr replacement) {
  AstNode* parent = hit.parent();
  parent->children[parent->IndexOf(hit.node)] = std::move(replacement);
}

AstNode::Ptr Detach(AstNode& parent, std::size_t index) {
  return std::move(parent.children.at(index));
}

AstNode::Ptr Identifier(std::string name) {
  auto node = MakeNode(NodeKind::Identifier);
  node->SetAttr(attr::kName, std::move(name));
  return node;
}

AstNode::Ptr Elementary(std::string name) {
  auto node = MakeNode(NodeKind::ElementaryTypeName);
  node->SetAttr(attr::kName, std::move(name));
  return node;
}

void FlipSignedness(AstNode& type) {
  const std::string& name = type.Attr(attr::kName);
  type.SetAttr(attr::kName, name.starts_with("u") ? name.substr(1) : "u" + name);
}

void DeleteAnchor(const Hit& hit) { Remove(hit); }

// ---------------------------------------------------------------------------
// Registry

std::vector<FaultOperator> BuildRegistry() {
  std::vector<FaultOperator> ops;
  auto add = [&](FaultId id, std::function<bool(const ConstHit&)> condition,
                 std::function<void(const Hit&)> transform) {
    ops.push_back({id, std::string(DefectName(id)), std::move(condition),
                   std::move(transform)});
  };

  // Assignment / Missing.
  add(FaultId::A_MISP,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        return n.kind == NodeKind::VariableDeclarationStatement &&
               n.children.size() == 1 &&
               n.Attr(attr::kStorageLocation) == "memory" &&
               (n.child(0)->kind == NodeKind::UserDefinedTypeName ||
                n.child(0)->kind == NodeKind::ArrayTypeName);
      },
      [](const Hit& h) { h.node->SetAttr(attr::kStorageLocation, "storage"); });
  add(FaultId::A_MILV,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::VariableDeclarationStatement &&
               h.node->children.size() == 2;
      },
      [](const Hit& h) { h.node->children.pop_back(); });
  add(FaultId::A_MISV,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::StateVariableDeclaration &&
               h.node->children.size() == 2 && !h.node->Flag(attr::kIsConstant);
      },
      [](const Hit& h) { h.node->children.pop_back(); });
  add(FaultId::A_MC,
      [](const ConstHit& h) {
        return ParentIs(h, NodeKind::ContractDefinition) &&
               (h.node->kind == NodeKind::ConstructorDefinition ||
                IsLegacyConstructor(*h.node, h.parent()));
      },
      DeleteAnchor);
  add(FaultId::A_MCV,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::PragmaDirective &&
               h.node->Attr(attr::kValue).starts_with("solidity");
      },
      DeleteAnchor);

  // Assignment / Wrong.
  add(FaultId::A_WVAE,
      [](const ConstHit& h) {
        const auto& op = h.node->Attr(attr::kOperator);
        return h.node->kind == NodeKind::BinaryOp &&
               (op == "+" || op == "-" || op == "*" || op == "/") &&
               ParentIs(h, NodeKind::Assignment) &&
               h.parent()->child(1) == h.node;
      },
      [](const Hit& h) {
        static const std::map<std::string, std::string, std::less<>> kSwap = {
            {"+", "-"}, {"-", "+"}, {"*", "/"}, {"/", "*"}};
        h.node->SetAttr(attr::kOperator,
                        kSwap.find(h.node->Attr(attr::kOperator))->second);
      });
  add(FaultId::A_WIS,
      [](const ConstHit& h) {
        const AstNode* type = DeclaredElementaryType(*h.node);
        return type != nullptr &&
               ParseIntegerTypeName(type->Attr(attr::kName)).has_value();
      },
      [](const Hit& h) { FlipSignedness(*h.node->child(0)); });
  add(FaultId::A_WIT,
      [](const ConstHit& h) {
        const AstNode* type = DeclaredElementaryType(*h.node);
        if (type == nullptr) return false;
        auto info = ParseIntegerTypeName(type->Attr(attr::kName));
        return info && info->bits == 256;
      },
      [](const Hit& h) {
        AstNode& type = *h.node->child(0);
        bool is_signed = ParseIntegerTypeName(type.Attr(attr::kName))->is_signed;
        type.SetAttr(attr::kName, is_signed ? "int8" : "uint8");
      });
  add(FaultId::A_WVATMD,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        const auto& value = n.Attr(attr::kValue);
        return n.kind == NodeKind::Literal &&
               n.Attr(attr::kLiteralKind) == "number" && !value.empty() &&
               std::all_of(value.begin(), value.end(),
                           [](char c) { return c >= '0' && c <= '9'; }) &&
               value.find_first_not_of('0') != std::string::npos &&
               InAssignedValue(h);
      },
      [](const Hit& h) {
        h.node->SetAttr(attr::kValue, h.node->Attr(attr::kValue) + "0");
      });
  add(FaultId::A_WVAA,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        if (n.kind != NodeKind::Assignment || n.Attr(attr::kOperator) != "=" ||
            n.child(0)->kind != NodeKind::Identifier || IsAddressThis(*n.child(1))) {
          return false;
        }
        const AstNode* type =
            ResolveVariableType(h, n.child(0)->Attr(attr::kName));
        if (type == nullptr || type->kind != NodeKind::ElementaryTypeName) {
          return false;
        }
        const auto& name = type->Attr(attr::kName);
        return name == "address" || name == "address payable";
      },
      [](const Hit& h) {
        auto call = MakeNode(NodeKind::FunctionCall);
        call->children.push_back(Elementary("address"));
        call->children.push_back(Identifier("this"));
        h.node->children[1] = std::move(call);
      });
  add(FaultId::A_WCN,
      [](const ConstHit& h) {
        return ParentIs(h, NodeKind::ContractDefinition) &&
               (h.node->kind == NodeKind::ConstructorDefinition ||
                IsLegacyConstructor(*h.node, h.parent()));
      },
      [](const Hit& h) {
        AstNode& fn = *h.node;
        std::string name = h.parent()->Attr(attr::kName) + "_";
        if (fn.kind == NodeKind::ConstructorDefinition) {
          fn.kind = NodeKind::FunctionDefinition;
          fn.SetAttr(attr::kVisibility, "public");
          fn.children.insert(fn.children.begin() + 1,
                             MakeNode(NodeKind::ParameterList));
        }
        fn.SetAttr(attr::kName, std::move(name));
      });
  add(FaultId::A_WVT,
      [](const ConstHit& h) {
        const AstNode* type = DeclaredElementaryType(*h.node);
        return type != nullptr && type->Attr(attr::kName) == "bytes";
      },
      [](const Hit& h) {
        auto array = MakeNode(NodeKind::ArrayTypeName);
        array->children.push_back(Elementary("byte"));
        h.node->children[0] = std::move(array);
      });
  add(FaultId::A_WDISV,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::StateVariableDeclaration &&
               h.node->Flag(attr::kIsConstant);
      },
      [](const Hit& h) { h.node->SetFlag(attr::kIsConstant, false); });
  add(FaultId::A_WVN,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::InheritanceSpecifier &&
               ShadowCandidate(h) != nullptr;
      },
      [](const Hit& h) {
        ConstHit view{h.node, {h.ancestors.begin(), h.ancestors.end()}};
        auto shadow = ShadowCandidate(view)->Clone();
        FreshIds(*shadow);
        if (shadow->children.size() == 2) shadow->children.pop_back();
        AstNode& contract = *h.parent();
        auto at = contract.children.begin() +
                  static_cast<std::ptrdiff_t>(Bases(contract).size());
        contract.children.insert(at, std::move(shadow));
      });

  // Checking / Missing.
  auto require_on = [](bool on_sender) {
    return [on_sender](const ConstHit& h) {
      const AstNode* cond = RequireCondition(*h.node);
      if (cond == nullptr || !ParentIs(h, NodeKind::Block)) return false;
      if (ReferencesSender(*cond)) return on_sender;
      return !on_sender && ReferencesAny(*cond, ParameterNames(h));
    };
  };
  add(FaultId::CH_MRTS, require_on(true), DeleteAnchor);
  add(FaultId::CH_MRIV, require_on(false), DeleteAnchor);

  auto drop_operand = [](std::string_view op, bool on_sender) {
    return std::pair{
        std::function<bool(const ConstHit&)>(
            [op, on_sender](const ConstHit& h) {
              return DroppedOperand(h, op, on_sender) >= 0;
            }),
        std::function<void(const Hit&)>([op, on_sender](const Hit& h) {
          ConstHit view{h.node, {h.ancestors.begin(), h.ancestors.end()}};
          int dropped = DroppedOperand(view, op, on_sender);
          Replace(h, Detach(*h.node, dropped == 0 ? 1 : 0));
        })};
  };
  for (auto [id, op, on_sender] :
       {std::tuple{FaultId::CH_MROTS, "||", true},
        std::tuple{FaultId::CH_MROIV, "||", false},
        std::tuple{FaultId::CH_MRATS, "&&", true},
        std::tuple{FaultId::CH_MRAIV, "&&", false}}) {
    auto [condition, transform] = drop_operand(op, on_sender);
    add(id, condition, transform);
  }

  add(FaultId::CH_MCHGL,
      [](const ConstHit& h) {
        const AstNode* cond = CheckCondition(*h.node);
        return cond != nullptr && ParentIs(h, NodeKind::Block) &&
               AnyNode(*cond, [](const AstNode& n) {
                 return IsMember(n, "msg", "gas") ||
                        (n.kind == NodeKind::FunctionCall &&
                         IsIdentifier(*n.child(0), "gasleft"));
               });
      },
      DeleteAnchor);
  add(FaultId::CH_MCHAO,
      [](const ConstHit& h) {
        const AstNode* cond = CheckCondition(*h.node);
        if (cond == nullptr || !ParentIs(h, NodeKind::Block) ||
            !HasComparison(*cond)) {
          return false;
        }
        NameSet guarded = IdentifierNames(*cond);
        const AstNode& block = *h.parent();
        for (std::size_t i = block.IndexOf(h.node) + 1; i < block.children.size();
             ++i) {
          const AstNode& later = *block.child(i);
          if (!AnyNode(later, IsArithmetic)) continue;
          for (const auto& name : IdentifierNames(later)) {
            if (guarded.count(name)) return true;
          }
        }
        return false;
      },
      DeleteAnchor);
  add(FaultId::CH_MCHSF,
      [](const ConstHit& h) {
        if (!ParentIs(h, NodeKind::Block)) return false;
        const AstNode& n = *h.node;
        const AstNode& block = *h.parent();
        std::size_t next = block.IndexOf(&n) + 1;
        if (CheckCondition(n) != nullptr && next < block.children.size() &&
            IsSelfdestructStatement(*block.child(next))) {
          return true;
        }
        if (n.kind != NodeKind::IfStatement || n.children.size() != 2) {
          return false;
        }
        const AstNode& then = *n.child(1);
        if (IsSelfdestructStatement(then)) return true;
        return then.kind == NodeKind::Block &&
               std::any_of(then.children.begin(), then.children.end(),
                           [](const auto& s) { return IsSelfdestructStatement(*s); });
      },
      [](const Hit& h) {
        AstNode& n = *h.node;
        AstNode& block = *h.parent();
        std::size_t at = block.IndexOf(&n);
        bool enclosing = n.kind == NodeKind::IfStatement &&
                         !(at + 1 < block.children.size() &&
                           IsSelfdestructStatement(*block.child(at + 1)) &&
                           CheckCondition(n) != nullptr);
        if (!enclosing) {
          Remove(h);
          return;
        }
        AstNode::Ptr then = Detach(n, 1);
        std::vector<AstNode::Ptr> body;
        if (then->kind == NodeKind::Block) {
          body = std::move(then->children);
        } else {
          body.push_back(std::move(then));
        }
        block.children.erase(block.children.begin() +
                             static_cast<std::ptrdiff_t>(at));
        block.children.insert(block.children.begin() +
                                  static_cast<std::ptrdiff_t>(at),
                              std::make_move_iterator(body.begin()),
                              std::make_move_iterator(body.end()));
      });

  // Checking / Wrong.
  add(FaultId::CH_WRA,
      [](const ConstHit& h) {
        const AstNode* cond = RequireCondition(*h.node);
        return cond != nullptr && ReferencesSender(*cond);
      },
      [](const Hit& h) {
        ForEachNode(*h.node->child(0)->child(1), [](AstNode& n) {
          if (IsMsgSender(n)) {
            n.SetAttr(attr::kMemberName, "origin");
            n.child(0)->SetAttr(attr::kName, "tx");
          }
        });
      });

  // Interface.
  add(FaultId::I_MVMSV,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::StateVariableDeclaration &&
               h.node->Attr(attr::kVisibility) != kNone;
      },
      [](const Hit& h) {
        h.node->SetAttr(attr::kVisibility, std::string(kNone));
      });
  add(FaultId::I_MFVM,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        if (n.kind != NodeKind::FunctionDefinition || n.Attr(attr::kName).empty()) {
          return false;
        }
        const auto& visibility = n.Attr(attr::kVisibility);
        if (visibility == "public") return true;
        if (visibility != "external") return false;
        return std::none_of(
            n.child(0)->children.begin(), n.child(0)->children.end(),
            [](const auto& p) {
              return p->Attr(attr::kStorageLocation) == "calldata";
            });
      },
      [](const Hit& h) {
        bool is_public = h.node->Attr(attr::kVisibility) == "public";
        h.node->SetAttr(attr::kVisibility,
                        is_public ? std::string(kNone) : "public");
      });
  add(FaultId::I_WVPF,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        const auto& visibility = n.Attr(attr::kVisibility);
        if (n.kind != NodeKind::FunctionDefinition ||
            (visibility != "private" && visibility != "internal")) {
          return false;
        }
        return std::none_of(
            n.child(0)->children.begin(), n.child(0)->children.end(),
            [](const auto& p) {
              return p->Attr(attr::kStorageLocation) == "storage";
            });
      },
      [](const Hit& h) { h.node->SetAttr(attr::kVisibility, "public"); });

  // Algorithm.
  auto if_on = [](bool on_sender) {
    return [on_sender](const ConstHit& h) {
      if (h.node->kind != NodeKind::IfStatement || !ParentIs(h, NodeKind::Block)) {
        return false;
      }
      const AstNode& cond = *h.node->child(0);
      if (ReferencesSender(cond)) return on_sender;
      return !on_sender && ReferencesAny(cond, ParameterNames(h));
    };
  };
  add(FaultId::AL_MITSS, if_on(true), DeleteAnchor);
  add(FaultId::AL_MIIVS, if_on(false), DeleteAnchor);
  add(FaultId::AL_WRAR,
      [](const ConstHit& h) {
        const AstNode* call = BuiltinCallStatement(*h.node, {"require", "assert"});
        return call != nullptr && call->children.size() >= 2;
      },
      [](const Hit& h) {
        AstNode& call = *h.node->child(0);
        AstNode& callee = *call.child(0);
        bool was_require = callee.Attr(attr::kName) == "require";
        callee.SetAttr(attr::kName, was_require ? "assert" : "require");
        call.children.resize(2);
      });
  add(FaultId::AL_WEH,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        if (const AstNode* cond = RequireCondition(n)) return IsLowLevelCall(*cond);
        if (!IsGuardIf(n) || !ParentIs(h, NodeKind::Block)) return false;
        const AstNode& cond = *n.child(0);
        return cond.kind == NodeKind::UnaryOp && cond.Attr(attr::kOperator) == "!" &&
               IsLowLevelCall(*cond.child(0));
      },
      [](const Hit& h) {
        AstNode& n = *h.node;
        if (n.kind == NodeKind::ExpressionStatement) {
          n.children[0] = Detach(*n.child(0), 1);
          return;
        }
        auto stmt = MakeNode(NodeKind::ExpressionStatement);
        stmt->children.push_back(Detach(*n.child(0), 0));
        Replace(h, std::move(stmt));
      });
  add(FaultId::AL_ECSWS,
      [](const ConstHit& h) {
        const AstNode& n = *h.node;
        const AstNode* body = nullptr;
        if (n.kind == NodeKind::ForStatement || n.kind == NodeKind::WhileStatement) {
          body = n.children.back().get();
        } else if (n.kind == NodeKind::DoWhileStatement) {
          body = n.child(0);
        }
        return body != nullptr && body->kind == NodeKind::Block &&
               body->children.size() >= 2;
      },
      [](const Hit& h) {
        AstNode& n = *h.node;
        AstNode& body = n.kind == NodeKind::DoWhileStatement ? *n.child(0)
                                                             : *n.children.back();
        body.children.insert(body.children.begin() + 1,
                             MakeNode(NodeKind::ContinueStatement));
      });

  // Function.
  add(FaultId::F_MWF,
      [](const ConstHit& h) {
        const AstNode& fn = *h.node;
        if (fn.kind != NodeKind::FunctionDefinition ||
            !ParentIs(h, NodeKind::ContractDefinition) || !IsEtherExit(fn)) {
          return false;
        }
        bool payable_elsewhere = false;
        for (const auto& member : h.parent()->children) {
          if (member.get() == &fn) continue;
          if (member->kind == NodeKind::FunctionDefinition && IsEtherExit(*member)) {
            return false;
          }
          if (IsPayable(*member)) payable_elsewhere = true;
        }
        return payable_elsewhere;
      },
      DeleteAnchor);
  add(FaultId::F_MINHERITANCE,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::InheritanceSpecifier;
      },
      DeleteAnchor);
  add(FaultId::F_WIO,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::ContractDefinition &&
               Bases(*h.node).size() >= 2;
      },
      [](const Hit& h) { std::swap(h.node->children[0], h.node->children[1]); });
  add(FaultId::F_EINHERITANCE,
      [](const ConstHit& h) {
        return h.node->kind == NodeKind::ContractDefinition &&
               ExtraBaseCandidate(h) != nullptr;
      },
      [](const Hit& h) {
        ConstHit view{h.node, {h.ancestors.begin(), h.ancestors.end()}};
        auto spec = MakeNode(NodeKind::InheritanceSpecifier);
        spec->SetAttr(attr::kName, ExtraBaseCandidate(view)->Attr(attr::kName));
        AstNode& contract = *h.node;
        auto at = contract.children.begin() +
                  static_cast<std::ptrdiff_t>(Bases(contract).size());
        contract.children.insert(at, std::move(spec));
      });

  return ops;
}

ConstHit AsConst(const Hit& hit) {
  return ConstHit{hit.node, {hit.ancestors.begin(), hit.ancestors.end()}};
}

}  // namespace

const std::vector<FaultOperator>& Registry() {
  static const auto* registry = new std::vector<FaultOperator>(BuildRegistry());
  return *registry;
}

const FaultOperator& OperatorFor(FaultId id) {
  return Registry().at(static_cast<std::size_t>(id));
}

std::vector<InjectionSite> MatchSites(const FaultOperator& op,
                                      const AstNode& unit) {
  std::vector<InjectionSite> sites;
  for (const auto& hit : Find(unit, [](const AstNode&) { return true; })) {
    if (hit.node->marks.count(FaultName(op.id))) continue;
    if (!op.condition(hit)) continue;
    sites.push_back({op.id, hit.node->span, sites.size(), hit.node->id});
  }
  return sites;
}

void ApplyInPlace(const FaultOperator& op, AstNode& unit,
                  const InjectionSite& site) {
  if (site.fault != op.id) {
    throw SiteMismatch("site belongs to " + std::string(FaultName(site.fault)) +
                       ", not " + std::string(FaultName(op.id)));
  }
  Hit hit = FindById(unit, site.anchor);
  std::string where = std::string(FaultName(op.id)) + " site #" +
                      std::to_string(site.ordinal);
  if (hit.node == nullptr) throw SiteMismatch(where + ": anchor not found");
  if (hit.node->marks.count(FaultName(op.id))) {
    throw SiteMismatch(where + ": fault already injected here");
  }
  if (!op.condition(AsConst(hit))) {
    throw SiteMismatch(where + ": condition no longer holds");
  }
  hit.node->marks.insert(std::string(FaultName(op.id)));
  op.transform(hit);
}

AstNode::Ptr Apply(const FaultOperator& op, const AstNode& unit,
                   const InjectionSite& site) {
  auto copy = unit.Clone();
  ApplyInPlace(op, *copy, site);
  return copy;
}

}  // namespace solfi
