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

#include "solfi/ast.h"

#include <atomic>
#include <stdexcept>

#include "solfi/error.h"

namespace solfi {
namespace {

std::atomic<NodeId> g_synthetic_id{NodeId{1} << 40};

const std::string& EmptyString() {
  static const std::string kEmpty;
  return kEmpty;
}

template <typename Node>
void FindImpl(Node& node, const std::function<bool(const AstNode&)>& predicate,
              std::vector<Node*>& path, std::vector<BasicHit<Node>>& out) {
  if (predicate(node)) out.push_back({&node, path});
  path.push_back(&node);
  for (const auto& child : node.children) {
    FindImpl<Node>(*child, predicate, path, out);
  }
  path.pop_back();
}

template <typename Node>
bool FindByIdImpl(Node& node, NodeId id, std::vector<Node*>& path,
                  BasicHit<Node>& out) {
  if (node.id == id) {
    out = {&node, path};
    return true;
  }
  path.push_back(&node);
  for (const auto& child : node.children) {
    if (FindByIdImpl<Node>(*child, id, path, out)) return true;
  }
  path.pop_back();
  return false;
}

}  // namespace

std::string_view NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::SourceUnit: return "SourceUnit";
    case NodeKind::PragmaDirective: return "PragmaDirective";
    case NodeKind::ContractDefinition: return "ContractDefinition";
    case NodeKind::InheritanceSpecifier: return "InheritanceSpecifier";
    case NodeKind::StateVariableDeclaration: return "StateVariableDeclaration";
    case NodeKind::StructDefinition: return "StructDefinition";
    case NodeKind::EventDefinition: return "EventDefinition";
    case NodeKind::FunctionDefinition: return "FunctionDefinition";
    case NodeKind::ConstructorDefinition: return "ConstructorDefinition";
    case NodeKind::ParameterList: return "ParameterList";
    case NodeKind::Parameter: return "Parameter";
    case NodeKind::Block: return "Block";
    case NodeKind::IfStatement: return "IfStatement";
    case NodeKind::ForStatement: return "ForStatement";
    case NodeKind::WhileStatement: return "WhileStatement";
    case NodeKind::DoWhileStatement: return "DoWhileStatement";
    case NodeKind::ContinueStatement: return "ContinueStatement";
    case NodeKind::BreakStatement: return "BreakStatement";
    case NodeKind::ThrowStatement: return "ThrowStatement";
    case NodeKind::EmitStatement: return "EmitStatement";
    case NodeKind::ExpressionStatement: return "ExpressionStatement";
    case NodeKind::VariableDeclarationStatement:
      return "VariableDeclarationStatement";
    case NodeKind::Return: return "Return";
    case NodeKind::FunctionCall: return "FunctionCall";
    case NodeKind::MemberAccess: return "MemberAccess";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::Literal: return "Literal";
    case NodeKind::BinaryOp: return "BinaryOp";
    case NodeKind::UnaryOp: return "UnaryOp";
    case NodeKind::Assignment: return "Assignment";
    case NodeKind::IndexAccess: return "IndexAccess";
    case NodeKind::TupleExpression: return "TupleExpression";
    case NodeKind::ElementaryTypeName: return "ElementaryTypeName";
    case NodeKind::UserDefinedTypeName: return "UserDefinedTypeName";
    case NodeKind::ArrayTypeName: return "ArrayTypeName";
    case NodeKind::MappingTypeName: return "MappingTypeName";
  }
  return "Unknown";
}

AstNode::AstNode(NodeKind kind, SourceSpan span)
    : kind(kind), span(span), id(NextSyntheticId()) {}

const std::string& AstNode::Attr(std::string_view key) const {
  auto it = attributes.find(key);
  return it == attributes.end() ? EmptyString() : it->second;
}

bool AstNode::HasAttr(std::string_view key) const {
  return attributes.find(key) != attributes.end();
}

void AstNode::SetAttr(std::string_view key, std::string value) {
  attributes.insert_or_assign(std::string(key), std::move(value));
}

std::size_t AstNode::IndexOf(const AstNode* child) const {
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].get() == child) return i;
  }
  throw std::out_of_range("node is not a child");
}

AstNode::Ptr AstNode::Clone() const {
  auto copy = std::make_unique<AstNode>(kind, span);
  copy->id = id;
  copy->attributes = attributes;
  copy->marks = marks;
  copy->children.reserve(children.size());
  for (const auto& child : children) copy->children.push_back(child->Clone());
  return copy;
}

std::size_t AstNode::NodeCount() const {
  std::size_t count = 1;
  for (const auto& child : children) count += child->NodeCount();
  return count;
}

NodeId AstNode::NextSyntheticId() { return g_synthetic_id.fetch_add(1); }

AstNode::Ptr MakeNode(NodeKind kind, SourceSpan span) {
  return std::make_unique<AstNode>(kind, span);
}

bool StructurallyEqual(const AstNode& a, const AstNode& b) {
  if (a.kind != b.kind || a.attributes != b.attributes ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!StructurallyEqual(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

std::size_t LineOf(const SourceSpan& span, std::string_view source) {
  if (span.offset > source.size() || span.length > source.size() - span.offset) {
    throw RangeError("span [" + std::to_string(span.offset) + ", +" +
                     std::to_string(span.length) + ") outside source of " +
                     std::to_string(source.size()) + " bytes");
  }
  std::size_t line = 1;
  for (std::size_t i = 0; i < span.offset; ++i) {
    if (source[i] == '\n') ++line;
  }
  return line;
}

std::vector<Hit> Find(AstNode& root,
                      const std::function<bool(const AstNode&)>& predicate) {
  std::vector<Hit> out;
  std::vector<AstNode*> path;
  FindImpl<AstNode>(root, predicate, path, out);
  return out;
}

std::vector<ConstHit> Find(
    const AstNode& root, const std::function<bool(const AstNode&)>& predicate) {
  std::vector<ConstHit> out;
  std::vector<const AstNode*> path;
  FindImpl<const AstNode>(root, predicate, path, out);
  return out;
}

Hit FindById(AstNode& root, NodeId id) {
  Hit out{nullptr, {}};
  std::vector<AstNode*> path;
  FindByIdImpl<AstNode>(root, id, path, out);
  return out;
}

ConstHit FindById(const AstNode& root, NodeId id) {
  ConstHit out{nullptr, {}};
  std::vector<const AstNode*> path;
  FindByIdImpl<const AstNode>(root, id, path, out);
  return out;
}

}  // namespace solfi
