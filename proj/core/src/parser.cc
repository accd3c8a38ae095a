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

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "lexer.h"
#include "solfi/ast.h"
#include "solfi/error.h"
#include "solidity_types.h"

namespace solfi {
namespace {

using internal::Token;
using internal::TokenKind;

constexpr std::array<std::string_view, 11> kSubdenominations = {
    "wei",     "gwei",    "szabo", "finney", "ether", "seconds",
    "minutes", "hours",   "days",  "weeks",  "years"};

constexpr std::array<std::string_view, 11> kAssignmentOperators = {
    "=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>="};

// Binary operator precedence, loosest first.
const std::vector<std::vector<std::string_view>>& BinaryLevels() {
  static const std::vector<std::vector<std::string_view>> kLevels = {
      {"||"}, {"&&"}, {"==", "!="}, {"<", ">", "<=", ">="}, {"|"},
      {"^"},  {"&"},  {"<<", ">>"}, {"+", "-"},             {"*", "/", "%"},
      {"**"}};
  return kLevels;
}

template <std::size_t N>
bool OneOf(std::string_view text, const std::array<std::string_view, N>& set) {
  for (std::string_view s : set) {
    if (s == text) return true;
  }
  return false;
}

struct Mark {
  std::size_t offset;
  std::size_t line;
};

class Parser {
 public:
  explicit Parser(std::string_view source)
      : source_(source), tokens_(internal::Tokenize(source)) {}

  AstNode::Ptr ParseSourceUnit() {
    auto unit = New(NodeKind::SourceUnit, {0, 1});
    while (!AtEnd()) {
      if (Is("pragma")) {
        unit->children.push_back(ParsePragma());
      } else if (Is("contract")) {
        unit->children.push_back(ParseContract());
      } else if (Is("import") || Is("library") || Is("interface")) {
        Fail("unsupported top-level construct '" + std::string(Peek().text) +
             "'");
      } else {
        Fail("expected 'pragma' or 'contract'");
      }
    }
    unit->span = {0, source_.size(), 1};
    return unit;
  }

 private:
  // Token access.

  const Token& Peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool AtEnd() const { return Peek().kind == TokenKind::End; }

  bool Is(std::string_view text, std::size_t ahead = 0) const {
    const Token& token = Peek(ahead);
    return (token.kind == TokenKind::Identifier ||
            token.kind == TokenKind::Punct) &&
           token.text == text;
  }

  bool IsIdentifier(std::size_t ahead = 0) const {
    return Peek(ahead).kind == TokenKind::Identifier;
  }

  const Token& Consume() {
    const Token& token = tokens_[pos_];
    if (token.kind != TokenKind::End) {
      last_end_ = token.offset + token.text.size();
      ++pos_;
    }
    return token;
  }

  bool Accept(std::string_view text) {
    if (!Is(text)) return false;
    Consume();
    return true;
  }

  const Token& Expect(std::string_view text) {
    if (!Is(text)) {
      Fail("expected '" + std::string(text) + "'");
    }
    return Consume();
  }

  std::string ExpectIdentifier(std::string_view what) {
    if (!IsIdentifier()) Fail("expected " + std::string(what));
    return std::string(Consume().text);
  }

  [[noreturn]] void Fail(const std::string& message) const {
    const Token& token = Peek();
    std::string found = token.kind == TokenKind::End
                            ? "end of input"
                            : "'" + std::string(token.text) + "'";
    throw SyntaxError(message + ", found " + found, token.line, token.column);
  }

  // Node construction.

  Mark Here() const { return {Peek().offset, Peek().line}; }

  AstNode::Ptr New(NodeKind kind, Mark mark) {
    auto node = MakeNode(kind, {mark.offset, 0, mark.line});
    node->id = next_id_++;
    return node;
  }

  AstNode::Ptr Finish(AstNode::Ptr node) {
    node->span.length =
        last_end_ > node->span.offset ? last_end_ - node->span.offset : 0;
    return node;
  }

  // Declarations.

  AstNode::Ptr ParsePragma() {
    auto node = New(NodeKind::PragmaDirective, Here());
    const Token& keyword = Expect("pragma");
    std::size_t value_start = keyword.offset + keyword.text.size();
    while (!AtEnd() && !Is(";")) Consume();
    if (AtEnd()) Fail("unterminated pragma directive");
    std::string_view raw =
        source_.substr(value_start, Peek().offset - value_start);
    std::string value;
    bool pending_space = false;
    for (char c : raw) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        pending_space = !value.empty();
      } else {
        if (pending_space) value.push_back(' ');
        pending_space = false;
        value.push_back(c);
      }
    }
    if (value.empty()) Fail("empty pragma directive");
    node->SetAttr(attr::kValue, value);
    Expect(";");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseContract() {
    auto node = New(NodeKind::ContractDefinition, Here());
    Expect("contract");
    node->SetAttr(attr::kName, ExpectIdentifier("contract name"));
    if (Accept("is")) {
      do {
        auto base = New(NodeKind::InheritanceSpecifier, Here());
        std::string name = ExpectIdentifier("base contract name");
        while (Accept(".")) name += "." + ExpectIdentifier("identifier");
        if (Is("(")) Fail("base constructor arguments are not supported");
        base->SetAttr(attr::kName, name);
        node->children.push_back(Finish(std::move(base)));
      } while (Accept(","));
    }
    Expect("{");
    while (!Is("}")) {
      if (AtEnd()) Fail("unterminated contract body");
      node->children.push_back(ParseContractMember());
    }
    Expect("}");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseContractMember() {
    if (Is("struct")) return ParseStruct();
    if (Is("event")) return ParseEvent();
    if (Is("function")) return ParseFunction();
    if (Is("constructor")) return ParseConstructor();
    if (Is("modifier") || Is("using") || Is("enum") || Is("assembly")) {
      Fail("unsupported contract member '" + std::string(Peek().text) + "'");
    }
    return ParseStateVariable();
  }

  AstNode::Ptr ParseStruct() {
    auto node = New(NodeKind::StructDefinition, Here());
    Expect("struct");
    node->SetAttr(attr::kName, ExpectIdentifier("struct name"));
    Expect("{");
    while (!Is("}")) {
      if (AtEnd()) Fail("unterminated struct");
      auto member = New(NodeKind::Parameter, Here());
      member->children.push_back(ParseTypeName());
      member->SetAttr(attr::kStorageLocation, std::string(kNone));
      member->SetAttr(attr::kName, ExpectIdentifier("struct member name"));
      Expect(";");
      node->children.push_back(Finish(std::move(member)));
    }
    Expect("}");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseEvent() {
    auto node = New(NodeKind::EventDefinition, Here());
    Expect("event");
    node->SetAttr(attr::kName, ExpectIdentifier("event name"));
    node->children.push_back(ParseParameterList());
    if (Is("anonymous")) Fail("anonymous events are not supported");
    Expect(";");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseFunction() {
    auto node = New(NodeKind::FunctionDefinition, Here());
    Expect("function");
    node->SetAttr(attr::kName, IsIdentifier() ? std::string(Consume().text)
                                              : std::string());
    node->SetAttr(attr::kVisibility, std::string(kNone));
    node->SetAttr(attr::kStateMutability, std::string(kNone));
    node->children.push_back(ParseParameterList());
    AstNode::Ptr returns;
    while (true) {
      if (Is("public") || Is("private") || Is("internal") || Is("external")) {
        SetOnce(*node, attr::kVisibility, Consume().text);
      } else if (Is("pure") || Is("view") || Is("constant") || Is("payable")) {
        SetOnce(*node, attr::kStateMutability, Consume().text);
      } else if (Is("returns")) {
        if (returns) Fail("duplicate returns clause");
        Consume();
        returns = ParseParameterList();
      } else if (IsIdentifier()) {
        Fail("modifier invocations are not supported");
      } else {
        break;
      }
    }
    if (!returns) {
      returns = New(NodeKind::ParameterList, Here());
      returns->span.length = 0;
    }
    node->children.push_back(std::move(returns));
    if (!Accept(";")) node->children.push_back(ParseBlock());
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseConstructor() {
    auto node = New(NodeKind::ConstructorDefinition, Here());
    Expect("constructor");
    node->SetAttr(attr::kVisibility, std::string(kNone));
    node->SetAttr(attr::kStateMutability, std::string(kNone));
    node->children.push_back(ParseParameterList());
    while (true) {
      if (Is("public") || Is("internal")) {
        SetOnce(*node, attr::kVisibility, Consume().text);
      } else if (Is("payable")) {
        SetOnce(*node, attr::kStateMutability, Consume().text);
      } else if (IsIdentifier()) {
        Fail("unsupported constructor specifier");
      } else {
        break;
      }
    }
    node->children.push_back(ParseBlock());
    return Finish(std::move(node));
  }

  void SetOnce(AstNode& node, std::string_view key, std::string_view value) {
    if (node.Attr(key) != kNone) {
      Fail("duplicate " + std::string(key) + " specifier");
    }
    node.SetAttr(key, std::string(value));
  }

  AstNode::Ptr ParseStateVariable() {
    auto node = New(NodeKind::StateVariableDeclaration, Here());
    node->children.push_back(ParseTypeName());
    node->SetAttr(attr::kVisibility, std::string(kNone));
    node->SetFlag(attr::kIsConstant, false);
    while (true) {
      if (Is("public") || Is("private") || Is("internal")) {
        SetOnce(*node, attr::kVisibility, Consume().text);
      } else if (Is("constant")) {
        if (node->Flag(attr::kIsConstant)) Fail("duplicate constant");
        Consume();
        node->SetFlag(attr::kIsConstant, true);
      } else {
        break;
      }
    }
    node->SetAttr(attr::kName, ExpectIdentifier("state variable name"));
    if (Accept("=")) node->children.push_back(ParseExpression());
    Expect(";");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseParameterList() {
    auto node = New(NodeKind::ParameterList, Here());
    Expect("(");
    if (!Is(")")) {
      do {
        node->children.push_back(ParseParameter());
      } while (Accept(","));
    }
    Expect(")");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseParameter() {
    auto node = New(NodeKind::Parameter, Here());
    node->children.push_back(ParseTypeName());
    if (Accept("indexed")) node->SetFlag(attr::kIndexed, true);
    node->SetAttr(attr::kStorageLocation, std::string(kNone));
    if (Is("memory") || Is("storage") || Is("calldata")) {
      node->SetAttr(attr::kStorageLocation, std::string(Consume().text));
    }
    node->SetAttr(attr::kName,
                  IsIdentifier() ? std::string(Consume().text) : std::string());
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseTypeName() {
    Mark start = Here();
    AstNode::Ptr type;
    if (Is("mapping")) {
      type = New(NodeKind::MappingTypeName, start);
      Consume();
      Expect("(");
      type->children.push_back(ParseTypeName());
      Expect("=>");
      type->children.push_back(ParseTypeName());
      Expect(")");
      type = Finish(std::move(type));
    } else if (IsIdentifier() && IsElementaryTypeName(Peek().text)) {
      type = New(NodeKind::ElementaryTypeName, start);
      std::string name(Consume().text);
      if (name == "address" && Is("payable")) {
        Consume();
        name += " payable";
      }
      type->SetAttr(attr::kName, name);
      type = Finish(std::move(type));
    } else if (IsIdentifier()) {
      type = New(NodeKind::UserDefinedTypeName, start);
      std::string name(Consume().text);
      while (Is(".") && IsIdentifier(1)) {
        Consume();
        name += "." + std::string(Consume().text);
      }
      type->SetAttr(attr::kName, name);
      type = Finish(std::move(type));
    } else {
      Fail("expected type name");
    }
    while (Is("[")) {
      auto array = New(NodeKind::ArrayTypeName, start);
      Consume();
      array->children.push_back(std::move(type));
      if (!Is("]")) array->children.push_back(ParseExpression());
      Expect("]");
      type = Finish(std::move(array));
    }
    return type;
  }

  // Statements.

  AstNode::Ptr ParseBlock() {
    auto node = New(NodeKind::Block, Here());
    Expect("{");
    while (!Is("}")) {
      if (AtEnd()) Fail("unterminated block");
      node->children.push_back(ParseStatement());
    }
    Expect("}");
    return Finish(std::move(node));
  }

  AstNode::Ptr ParseStatement() {
    Mark start = Here();
    if (Is("{")) return ParseBlock();
    if (Is("if")) {
      auto node = New(NodeKind::IfStatement, start);
      Consume();
      Expect("(");
      node->children.push_back(ParseExpression());
      Expect(")");
      node->children.push_back(ParseStatement());
      if (Accept("else")) node->children.push_back(ParseStatement());
      return Finish(std::move(node));
    }
    if (Is("for")) return ParseFor();
    if (Is("while")) {
      auto node = New(NodeKind::WhileStatement, start);
      Consume();
      Expect("(");
      node->children.push_back(ParseExpression());
      Expect(")");
      node->children.push_back(ParseStatement());
      return Finish(std::move(node));
    }
    if (Is("do")) {
      auto node = New(NodeKind::DoWhileStatement, start);
      Consume();
      node->children.push_back(ParseStatement());
      Expect("while");
      Expect("(");
      node->children.push_back(ParseExpression());
      Expect(")");
      Expect(";");
      return Finish(std::move(node));
    }
    if (Is("continue") || Is("break") || Is("throw")) {
      NodeKind kind = Is("continue") ? NodeKind::ContinueStatement
                      : Is("break")  ? NodeKind::BreakStatement
                                     : NodeKind::ThrowStatement;
      auto node = New(kind, start);
      Consume();
      Expect(";");
      return Finish(std::move(node));
    }
    if (Is("return")) {
      auto node = New(NodeKind::Return, start);
      Consume();
      if (!Is(";")) node->children.push_back(ParseExpression());
      Expect(";");
      return Finish(std::move(node));
    }
    if (Is("emit")) {
      auto node = New(NodeKind::EmitStatement, start);
      Consume();
      auto call = ParseExpression();
      if (call->kind != NodeKind::FunctionCall) Fail("expected event call");
      node->children.push_back(std::move(call));
      Expect(";");
      return Finish(std::move(node));
    }
    if (Is("assembly")) Fail("inline assembly is not supported");
    return ParseSimpleStatement();
  }

  AstNode::Ptr ParseFor() {
    auto node = New(NodeKind::ForStatement, Here());
    Expect("for");
    Expect("(");
    node->SetFlag(attr::kHasInit, !Is(";"));
    if (Is(";")) {
      Consume();
    } else {
      node->children.push_back(ParseSimpleStatement());
    }
    node->SetFlag(attr::kHasCondition, !Is(";"));
    if (!Is(";")) node->children.push_back(ParseExpression());
    Expect(";");
    node->SetFlag(attr::kHasLoopExpression, !Is(")"));
    if (!Is(")")) node->children.push_back(ParseExpression());
    Expect(")");
    node->children.push_back(ParseStatement());
    return Finish(std::move(node));
  }

  // Variable declaration or expression statement, including the ';'.
  AstNode::Ptr ParseSimpleStatement() {
    if (auto declaration = TryParseVariableDeclaration()) return declaration;
    auto node = New(NodeKind::ExpressionStatement, Here());
    node->children.push_back(ParseExpression());
    Expect(";");
    return Finish(std::move(node));
  }

  AstNode::Ptr TryParseVariableDeclaration() {
    if (!IsIdentifier()) return nullptr;
    const std::size_t saved_pos = pos_;
    const std::size_t saved_end = last_end_;
    try {
      auto node = New(NodeKind::VariableDeclarationStatement, Here());
      node->children.push_back(ParseTypeName());
      node->SetAttr(attr::kStorageLocation, std::string(kNone));
      if (Is("memory") || Is("storage") || Is("calldata")) {
        node->SetAttr(attr::kStorageLocation, std::string(Consume().text));
      }
      if (!IsIdentifier() || !(Is("=", 1) || Is(";", 1))) {
        Fail("not a declaration");
      }
      node->SetAttr(attr::kName, std::string(Consume().text));
      if (Accept("=")) node->children.push_back(ParseExpression());
      Expect(";");
      return Finish(std::move(node));
    } catch (const SyntaxError&) {
      pos_ = saved_pos;
      last_end_ = saved_end;
      return nullptr;
    }
  }

  // Expressions.

  AstNode::Ptr ParseExpression() { return ParseAssignment(); }

  AstNode::Ptr ParseAssignment() {
    auto lhs = ParseBinary(0);
    if (Peek().kind == TokenKind::Punct &&
        OneOf(Peek().text, kAssignmentOperators)) {
      auto node = New(NodeKind::Assignment,
                      {lhs->span.offset, lhs->span.line});
      node->SetAttr(attr::kOperator, std::string(Consume().text));
      node->children.push_back(std::move(lhs));
      node->children.push_back(ParseAssignment());
      return Finish(std::move(node));
    }
    if (Is("?")) Fail("conditional expressions are not supported");
    return lhs;
  }

  AstNode::Ptr ParseBinary(std::size_t level) {
    const auto& levels = BinaryLevels();
    if (level >= levels.size()) return ParseUnary();
    const bool right_assoc = levels[level].front() == "**";
    auto lhs = ParseBinary(level + 1);
    while (true) {
      std::string_view op;
      for (std::string_view candidate : levels[level]) {
        if (Peek().kind == TokenKind::Punct && Peek().text == candidate) {
          op = candidate;
        }
      }
      if (op.empty()) return lhs;
      auto node = New(NodeKind::BinaryOp, {lhs->span.offset, lhs->span.line});
      Consume();
      node->SetAttr(attr::kOperator, std::string(op));
      node->children.push_back(std::move(lhs));
      node->children.push_back(right_assoc ? ParseBinary(level)
                                           : ParseBinary(level + 1));
      lhs = Finish(std::move(node));
      if (right_assoc) return lhs;
    }
  }

  AstNode::Ptr ParseUnary() {
    if (Is("!") || Is("~") || Is("-") || Is("++") || Is("--") ||
        Is("delete")) {
      auto node = New(NodeKind::UnaryOp, Here());
      node->SetAttr(attr::kOperator, std::string(Consume().text));
      node->SetFlag(attr::kPrefix, true);
      node->children.push_back(ParseUnary());
      return Finish(std::move(node));
    }
    return ParsePostfix();
  }

  AstNode::Ptr ParsePostfix() {
    auto expr = ParsePrimary();
    while (true) {
      Mark start{expr->span.offset, expr->span.line};
      if (Is("(")) {
        auto call = New(NodeKind::FunctionCall, start);
        Consume();
        call->children.push_back(std::move(expr));
        if (Is("{")) Fail("call options are not supported");
        if (!Is(")")) {
          do {
            call->children.push_back(ParseExpression());
          } while (Accept(","));
        }
        Expect(")");
        expr = Finish(std::move(call));
      } else if (Is(".")) {
        auto access = New(NodeKind::MemberAccess, start);
        Consume();
        access->SetAttr(attr::kMemberName, ExpectIdentifier("member name"));
        access->children.push_back(std::move(expr));
        expr = Finish(std::move(access));
      } else if (Is("[")) {
        auto index = New(NodeKind::IndexAccess, start);
        Consume();
        index->children.push_back(std::move(expr));
        if (!Is("]")) index->children.push_back(ParseExpression());
        Expect("]");
        expr = Finish(std::move(index));
      } else if (Is("++") || Is("--")) {
        auto op = New(NodeKind::UnaryOp, start);
        op->SetAttr(attr::kOperator, std::string(Consume().text));
        op->SetFlag(attr::kPrefix, false);
        op->children.push_back(std::move(expr));
        expr = Finish(std::move(op));
      } else {
        return expr;
      }
    }
  }

  AstNode::Ptr ParsePrimary() {
    Mark start = Here();
    const Token& token = Peek();
    if (token.kind == TokenKind::Number || token.kind == TokenKind::HexNumber) {
      auto node = New(NodeKind::Literal, start);
      node->SetAttr(attr::kLiteralKind,
                    token.kind == TokenKind::Number ? "number" : "hex");
      node->SetAttr(attr::kValue, std::string(Consume().text));
      if (IsIdentifier() && OneOf(Peek().text, kSubdenominations)) {
        node->SetAttr(attr::kSubdenomination, std::string(Consume().text));
      }
      return Finish(std::move(node));
    }
    if (token.kind == TokenKind::String) {
      auto node = New(NodeKind::Literal, start);
      node->SetAttr(attr::kLiteralKind, "string");
      node->SetAttr(attr::kValue, std::string(Consume().text));
      return Finish(std::move(node));
    }
    if (Is("true") || Is("false")) {
      auto node = New(NodeKind::Literal, start);
      node->SetAttr(attr::kLiteralKind, "bool");
      node->SetAttr(attr::kValue, std::string(Consume().text));
      return Finish(std::move(node));
    }
    if (Is("(")) {
      auto node = New(NodeKind::TupleExpression, start);
      Consume();
      node->children.push_back(ParseExpression());
      if (Is(",")) Fail("tuple expressions are not supported");
      Expect(")");
      return Finish(std::move(node));
    }
    if (Is("new")) Fail("'new' expressions are not supported");
    if (IsIdentifier()) {
      if (IsElementaryTypeName(token.text)) {
        auto node = New(NodeKind::ElementaryTypeName, start);
        node->SetAttr(attr::kName, std::string(Consume().text));
        return Finish(std::move(node));
      }
      auto node = New(NodeKind::Identifier, start);
      node->SetAttr(attr::kName, std::string(Consume().text));
      return Finish(std::move(node));
    }
    Fail("expected expression");
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
  NodeId next_id_ = 1;
};

}  // namespace

AstNode::Ptr Parse(std::string_view source) {
  return Parser(source).ParseSourceUnit();
}

}  // namespace solfi
