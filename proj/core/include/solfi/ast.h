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

#ifndef SOLFI_AST_H_
#define SOLFI_AST_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace solfi {

// Byte range into the parsed source. `line` is the 1-based line of `offset`.
struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::size_t line = 0;

  std::size_t end() const { return offset + length; }
  bool Contains(const SourceSpan& other) const {
    return other.offset >= offset && other.end() <= end();
  }
  bool operator==(const SourceSpan&) const = default;
};

enum class NodeKind {
  SourceUnit,
  PragmaDirective,
  ContractDefinition,
  InheritanceSpecifier,
  StateVariableDeclaration,
  StructDefinition,
  EventDefinition,
  FunctionDefinition,
  ConstructorDefinition,
  ParameterList,
  Parameter,
  Block,
  IfStatement,
  ForStatement,
  WhileStatement,
  DoWhileStatement,
  ContinueStatement,
  BreakStatement,
  ThrowStatement,
  EmitStatement,
  ExpressionStatement,
  VariableDeclarationStatement,
  Return,
  FunctionCall,
  MemberAccess,
  Identifier,
  Literal,
  BinaryOp,
  UnaryOp,
  Assignment,
  IndexAccess,
  TupleExpression,
  ElementaryTypeName,
  UserDefinedTypeName,
  ArrayTypeName,
  MappingTypeName,
};

std::string_view NodeKindName(NodeKind kind);

using NodeId = std::uint64_t;

// Attribute keys. Values are plain strings; flags use "true"/"false".
//
// Required attributes per kind (checked by Emit):
//   PragmaDirective           value
//   ContractDefinition        name
//   InheritanceSpecifier      name
//   StateVariableDeclaration  name, visibility, isConstant
//   StructDefinition          name
//   EventDefinition           name
//   FunctionDefinition        name (empty for fallback), visibility,
//                             stateMutability
//   ConstructorDefinition     visibility, stateMutability
//   Parameter                 name (may be empty), storageLocation
//   VariableDeclarationStatement  name, storageLocation
//   ForStatement              hasInit, hasCondition, hasLoopExpression
//   MemberAccess              memberName
//   Identifier                name
//   Literal                   literalKind, value
//   BinaryOp, Assignment      operator
//   UnaryOp                   operator, prefix
//   ElementaryTypeName        name
//   UserDefinedTypeName       name
//
// Child layouts:
//   SourceUnit                (PragmaDirective | ContractDefinition)*
//   ContractDefinition        InheritanceSpecifier* member*
//   StateVariableDeclaration  type [initializer]
//   StructDefinition          Parameter*
//   EventDefinition           ParameterList
//   FunctionDefinition        ParameterList(params) ParameterList(returns)
//                             [Block]
//   ConstructorDefinition     ParameterList Block
//   Parameter                 type
//   VariableDeclarationStatement  type [initializer]
//   IfStatement               condition then [else]
//   ForStatement              [init] [condition] [loopExpression] body
//   WhileStatement            condition body
//   DoWhileStatement          body condition
//   Return                    [expression]
//   ExpressionStatement       expression
//   EmitStatement             FunctionCall
//   FunctionCall              callee argument*
//   MemberAccess              expression
//   IndexAccess               base [index]
//   TupleExpression           expression
//   BinaryOp, Assignment      lhs rhs
//   UnaryOp                   operand
//   ArrayTypeName             baseType [length]
//   MappingTypeName           keyType valueType
namespace attr {
inline constexpr std::string_view kName = "name";
inline constexpr std::string_view kValue = "value";
inline constexpr std::string_view kVisibility = "visibility";
inline constexpr std::string_view kStateMutability = "stateMutability";
inline constexpr std::string_view kStorageLocation = "storageLocation";
inline constexpr std::string_view kIsConstant = "isConstant";
inline constexpr std::string_view kIndexed = "indexed";
inline constexpr std::string_view kOperator = "operator";
inline constexpr std::string_view kPrefix = "prefix";
inline constexpr std::string_view kMemberName = "memberName";
inline constexpr std::string_view kLiteralKind = "literalKind";
inline constexpr std::string_view kSubdenomination = "subdenomination";
inline constexpr std::string_view kHasInit = "hasInit";
inline constexpr std::string_view kHasCondition = "hasCondition";
inline constexpr std::string_view kHasLoopExpression = "hasLoopExpression";
}  // namespace attr

inline constexpr std::string_view kNone = "none";

// A mutable syntax tree node. Identity (`id`) survives cloning and in-place
// edits; transforms change attributes and children, never ids of surviving
// nodes.
struct AstNode {
  using Ptr = std::unique_ptr<AstNode>;

  AstNode(NodeKind kind, SourceSpan span);

  NodeKind kind;
  std::map<std::string, std::string, std::less<>> attributes;
  std::vector<Ptr> children;
  SourceSpan span;
  NodeId id;
  // Fault identifiers already injected at this node. Not part of structural
  // equality and never emitted.
  std::set<std::string, std::less<>> marks;

  // Empty string when absent.
  const std::string& Attr(std::string_view key) const;
  bool HasAttr(std::string_view key) const;
  bool Flag(std::string_view key) const { return Attr(key) == "true"; }
  void SetAttr(std::string_view key, std::string value);
  void SetFlag(std::string_view key, bool value) {
    SetAttr(key, value ? "true" : "false");
  }

  AstNode* child(std::size_t i) const { return children.at(i).get(); }
  std::size_t IndexOf(const AstNode* child) const;

  Ptr Clone() const;
  std::size_t NodeCount() const;

  // Fresh identifier for nodes synthesized by transforms.
  static NodeId NextSyntheticId();
};

AstNode::Ptr MakeNode(NodeKind kind, SourceSpan span = {});

// Attribute-and-children equality; spans, ids and marks are ignored.
bool StructurallyEqual(const AstNode& a, const AstNode& b);

AstNode::Ptr Parse(std::string_view source);

// Position of each emitted node: node id -> 1-based output line.
using LineMap = std::unordered_map<NodeId, std::size_t>;

std::string Emit(const AstNode& node, LineMap* lines = nullptr);

// 1-based line containing span.offset. Throws RangeError when the span does
// not fit inside `source`.
std::size_t LineOf(const SourceSpan& span, std::string_view source);

template <typename Node>
struct BasicHit {
  Node* node;
  std::vector<Node*> ancestors;  // root first, parent last

  Node* parent() const { return ancestors.empty() ? nullptr : ancestors.back(); }
};

using Hit = BasicHit<AstNode>;
using ConstHit = BasicHit<const AstNode>;

// Pre-order traversal; every node for which `predicate` holds is returned
// together with its ancestor chain.
std::vector<Hit> Find(AstNode& root,
                      const std::function<bool(const AstNode&)>& predicate);
std::vector<ConstHit> Find(
    const AstNode& root, const std::function<bool(const AstNode&)>& predicate);

// Locates a node by id; nullopt-like empty hit (node == nullptr) if absent.
Hit FindById(AstNode& root, NodeId id);
ConstHit FindById(const AstNode& root, NodeId id);

// Source text of a type node, e.g. "mapping(address => uint256)".
std::string TypeText(const AstNode& type_node);

}  // namespace solfi

#endif  // SOLFI_AST_H_
