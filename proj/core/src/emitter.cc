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

#include <string>

#include "solfi/ast.h"
#include "solfi/error.h"

namespace solfi {
namespace {

constexpr std::string_view kIndentUnit = "    ";

bool IsMemberGroupable(NodeKind kind) {
  return kind == NodeKind::StateVariableDeclaration ||
         kind == NodeKind::EventDefinition;
}

class Emitter {
 public:
  explicit Emitter(LineMap* lines) : lines_(lines) {}

  std::string Finish() { return std::move(out_); }

  void EmitTopLevel(const AstNode& node) {
    switch (node.kind) {
      case NodeKind::SourceUnit:
        Record(node);
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          if (i > 0) Newline();
          EmitTopLevel(*node.children[i]);
        }
        return;
      case NodeKind::PragmaDirective:
        Record(node);
        Write("pragma " + Require(node, attr::kValue) + ";");
        Newline();
        return;
      case NodeKind::ContractDefinition:
        EmitContract(node);
        return;
      case NodeKind::StateVariableDeclaration:
      case NodeKind::StructDefinition:
      case NodeKind::EventDefinition:
      case NodeKind::FunctionDefinition:
      case NodeKind::ConstructorDefinition:
        EmitMember(node);
        return;
      default:
        StartLine();
        if (IsStatement(node.kind)) {
          EmitStatement(node);
        } else {
          EmitInline(node);
        }
        Newline();
        return;
    }
  }

 private:
  static bool IsStatement(NodeKind kind) {
    switch (kind) {
      case NodeKind::Block:
      case NodeKind::IfStatement:
      case NodeKind::ForStatement:
      case NodeKind::WhileStatement:
      case NodeKind::DoWhileStatement:
      case NodeKind::ContinueStatement:
      case NodeKind::BreakStatement:
      case NodeKind::ThrowStatement:
      case NodeKind::EmitStatement:
      case NodeKind::ExpressionStatement:
      case NodeKind::VariableDeclarationStatement:
      case NodeKind::Return:
        return true;
      default:
        return false;
    }
  }

  // Output primitives.

  void Write(std::string_view text) { out_.append(text); }

  void Newline() {
    out_.push_back('\n');
    ++line_;
  }

  void StartLine() {
    for (int i = 0; i < indent_; ++i) out_.append(kIndentUnit);
  }

  void Record(const AstNode& node) {
    if (lines_ != nullptr) lines_->emplace(node.id, line_);
  }

  static const std::string& Require(const AstNode& node,
                                    std::string_view key) {
    if (!node.HasAttr(key)) {
      throw EmitError(std::string(NodeKindName(node.kind)) +
                      " lacks required attribute '" + std::string(key) + "'");
    }
    return node.Attr(key);
  }

  static void RequireChildren(const AstNode& node, std::size_t min,
                              std::size_t max) {
    if (node.children.size() < min || node.children.size() > max) {
      throw EmitError(std::string(NodeKindName(node.kind)) + " has " +
                      std::to_string(node.children.size()) + " children");
    }
  }

  static std::string Keyword(const AstNode& node, std::string_view key) {
    const std::string& value = Require(node, key);
    return value == kNone ? std::string() : " " + value;
  }

  // Declarations.

  void EmitContract(const AstNode& node) {
    Record(node);
    StartLine();
    Write("contract " + Require(node, attr::kName));
    std::size_t first_member = 0;
    while (first_member < node.children.size() &&
           node.children[first_member]->kind ==
               NodeKind::InheritanceSpecifier) {
      const AstNode& base = *node.children[first_member];
      Record(base);
      Write(first_member == 0 ? " is " : ", ");
      Write(Require(base, attr::kName));
      ++first_member;
    }
    Write(" {");
    Newline();
    ++indent_;
    for (std::size_t i = first_member; i < node.children.size(); ++i) {
      const AstNode& member = *node.children[i];
      if (i > first_member) {
        NodeKind previous = node.children[i - 1]->kind;
        if (!(IsMemberGroupable(member.kind) && previous == member.kind)) {
          Newline();
        }
      }
      EmitMember(member);
    }
    --indent_;
    StartLine();
    Write("}");
    Newline();
  }

  void EmitMember(const AstNode& node) {
    Record(node);
    StartLine();
    switch (node.kind) {
      case NodeKind::StateVariableDeclaration: {
        RequireChildren(node, 1, 2);
        EmitInline(*node.children[0]);
        Write(Keyword(node, attr::kVisibility));
        if (Require(node, attr::kIsConstant) == "true") Write(" constant");
        Write(" " + Require(node, attr::kName));
        if (node.children.size() == 2) {
          Write(" = ");
          EmitInline(*node.children[1]);
        }
        Write(";");
        Newline();
        return;
      }
      case NodeKind::StructDefinition: {
        Write("struct " + Require(node, attr::kName) + " {");
        Newline();
        ++indent_;
        for (const auto& member : node.children) {
          Record(*member);
          StartLine();
          RequireChildren(*member, 1, 1);
          EmitInline(*member->children[0]);
          Write(" " + Require(*member, attr::kName) + ";");
          Newline();
        }
        --indent_;
        StartLine();
        Write("}");
        Newline();
        return;
      }
      case NodeKind::EventDefinition:
        RequireChildren(node, 1, 1);
        Write("event " + Require(node, attr::kName));
        EmitInline(*node.children[0]);
        Write(";");
        Newline();
        return;
      case NodeKind::FunctionDefinition: {
        RequireChildren(node, 2, 3);
        Write("function");
        const std::string& name = Require(node, attr::kName);
        if (!name.empty()) Write(" " + name);
        EmitInline(*node.children[0]);
        Write(Keyword(node, attr::kVisibility));
        Write(Keyword(node, attr::kStateMutability));
        const AstNode& returns = *node.children[1];
        Record(returns);
        if (!returns.children.empty()) {
          Write(" returns ");
          EmitInline(returns);
        }
        if (node.children.size() == 3) {
          Write(" ");
          EmitBlock(*node.children[2]);
        } else {
          Write(";");
        }
        Newline();
        return;
      }
      case NodeKind::ConstructorDefinition:
        RequireChildren(node, 2, 2);
        Write("constructor");
        EmitInline(*node.children[0]);
        Write(Keyword(node, attr::kVisibility));
        Write(Keyword(node, attr::kStateMutability));
        Write(" ");
        EmitBlock(*node.children[1]);
        Newline();
        return;
      default:
        throw EmitError(std::string(NodeKindName(node.kind)) +
                        " is not a contract member");
    }
  }

  // Statements. The caller has already written indentation (or the text that
  // precedes the statement on the same line); no trailing newline.

  void EmitBlock(const AstNode& node) {
    Record(node);
    if (node.kind != NodeKind::Block) {
      throw EmitError("expected Block, got " +
                      std::string(NodeKindName(node.kind)));
    }
    if (node.children.empty()) {
      Write("{}");
      return;
    }
    Write("{");
    Newline();
    ++indent_;
    for (const auto& statement : node.children) {
      StartLine();
      EmitStatement(*statement);
      Newline();
    }
    --indent_;
    StartLine();
    Write("}");
  }

  void EmitStatement(const AstNode& node) {
    Record(node);
    switch (node.kind) {
      case NodeKind::Block:
        EmitBlock(node);
        return;
      case NodeKind::IfStatement: {
        RequireChildren(node, 2, 3);
        Write("if (");
        EmitInline(*node.children[0]);
        Write(") ");
        EmitStatement(*node.children[1]);
        if (node.children.size() == 3) {
          if (node.children[1]->kind == NodeKind::Block) {
            Write(" else ");
          } else {
            Newline();
            StartLine();
            Write("else ");
          }
          EmitStatement(*node.children[2]);
        }
        return;
      }
      case NodeKind::ForStatement: {
        const bool has_init = Require(node, attr::kHasInit) == "true";
        const bool has_condition = Require(node, attr::kHasCondition) == "true";
        const bool has_loop = Require(node, attr::kHasLoopExpression) == "true";
        const std::size_t expected = 1 + has_init + has_condition + has_loop;
        RequireChildren(node, expected, expected);
        std::size_t next = 0;
        Write("for (");
        if (has_init) {
          EmitStatement(*node.children[next++]);
        } else {
          Write(";");
        }
        if (has_condition) {
          Write(" ");
          EmitInline(*node.children[next++]);
        }
        Write(";");
        if (has_loop) {
          Write(" ");
          EmitInline(*node.children[next++]);
        }
        Write(") ");
        EmitStatement(*node.children[next]);
        return;
      }
      case NodeKind::WhileStatement:
        RequireChildren(node, 2, 2);
        Write("while (");
        EmitInline(*node.children[0]);
        Write(") ");
        EmitStatement(*node.children[1]);
        return;
      case NodeKind::DoWhileStatement:
        RequireChildren(node, 2, 2);
        Write("do ");
        EmitStatement(*node.children[0]);
        Write(" while (");
        EmitInline(*node.children[1]);
        Write(");");
        return;
      case NodeKind::ContinueStatement:
        Write("continue;");
        return;
      case NodeKind::BreakStatement:
        Write("break;");
        return;
      case NodeKind::ThrowStatement:
        Write("throw;");
        return;
      case NodeKind::Return:
        RequireChildren(node, 0, 1);
        Write("return");
        if (!node.children.empty()) {
          Write(" ");
          EmitInline(*node.children[0]);
        }
        Write(";");
        return;
      case NodeKind::EmitStatement:
        RequireChildren(node, 1, 1);
        Write("emit ");
        EmitInline(*node.children[0]);
        Write(";");
        return;
      case NodeKind::ExpressionStatement:
        RequireChildren(node, 1, 1);
        EmitInline(*node.children[0]);
        Write(";");
        return;
      case NodeKind::VariableDeclarationStatement:
        RequireChildren(node, 1, 2);
        EmitInline(*node.children[0]);
        Write(Keyword(node, attr::kStorageLocation));
        Write(" " + Require(node, attr::kName));
        if (node.children.size() == 2) {
          Write(" = ");
          EmitInline(*node.children[1]);
        }
        Write(";");
        return;
      default:
        throw EmitError(std::string(NodeKindName(node.kind)) +
                        " is not a statement");
    }
  }

  // Expressions, types and parameter lists.

  void EmitInline(const AstNode& node) {
    Record(node);
    switch (node.kind) {
      case NodeKind::ParameterList:
        Write("(");
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          if (i > 0) Write(", ");
          EmitInline(*node.children[i]);
        }
        Write(")");
        return;
      case NodeKind::Parameter: {
        RequireChildren(node, 1, 1);
        EmitInline(*node.children[0]);
        if (node.Flag(attr::kIndexed)) Write(" indexed");
        Write(Keyword(node, attr::kStorageLocation));
        const std::string& name = Require(node, attr::kName);
        if (!name.empty()) Write(" " + name);
        return;
      }
      case NodeKind::ElementaryTypeName:
      case NodeKind::UserDefinedTypeName:
      case NodeKind::Identifier:
        Write(Require(node, attr::kName));
        return;
      case NodeKind::ArrayTypeName:
        RequireChildren(node, 1, 2);
        EmitInline(*node.children[0]);
        Write("[");
        if (node.children.size() == 2) EmitInline(*node.children[1]);
        Write("]");
        return;
      case NodeKind::MappingTypeName:
        RequireChildren(node, 2, 2);
        Write("mapping(");
        EmitInline(*node.children[0]);
        Write(" => ");
        EmitInline(*node.children[1]);
        Write(")");
        return;
      case NodeKind::Literal:
        Require(node, attr::kLiteralKind);
        Write(Require(node, attr::kValue));
        if (node.HasAttr(attr::kSubdenomination)) {
          Write(" " + node.Attr(attr::kSubdenomination));
        }
        return;
      case NodeKind::BinaryOp:
      case NodeKind::Assignment:
        RequireChildren(node, 2, 2);
        EmitInline(*node.children[0]);
        Write(" " + Require(node, attr::kOperator) + " ");
        EmitInline(*node.children[1]);
        return;
      case NodeKind::UnaryOp: {
        RequireChildren(node, 1, 1);
        const std::string& op = Require(node, attr::kOperator);
        if (Require(node, attr::kPrefix) == "true") {
          Write(op == "delete" ? "delete " : op);
          EmitInline(*node.children[0]);
        } else {
          EmitInline(*node.children[0]);
          Write(op);
        }
        return;
      }
      case NodeKind::FunctionCall:
        RequireChildren(node, 1, SIZE_MAX);
        EmitInline(*node.children[0]);
        Write("(");
        for (std::size_t i = 1; i < node.children.size(); ++i) {
          if (i > 1) Write(", ");
          EmitInline(*node.children[i]);
        }
        Write(")");
        return;
      case NodeKind::MemberAccess:
        RequireChildren(node, 1, 1);
        EmitInline(*node.children[0]);
        Write("." + Require(node, attr::kMemberName));
        return;
      case NodeKind::IndexAccess:
        RequireChildren(node, 1, 2);
        EmitInline(*node.children[0]);
        Write("[");
        if (node.children.size() == 2) EmitInline(*node.children[1]);
        Write("]");
        return;
      case NodeKind::TupleExpression:
        RequireChildren(node, 1, 1);
        Write("(");
        EmitInline(*node.children[0]);
        Write(")");
        return;
      default:
        throw EmitError(std::string(NodeKindName(node.kind)) +
                        " is not an expression");
    }
  }

  LineMap* lines_;
  std::string out_;
  std::size_t line_ = 1;
  int indent_ = 0;
};

}  // namespace

std::string Emit(const AstNode& node, LineMap* lines) {
  Emitter emitter(lines);
  emitter.EmitTopLevel(node);
  return emitter.Finish();
}

std::string TypeText(const AstNode& type_node) {
  Emitter emitter(nullptr);
  emitter.EmitTopLevel(type_node);
  std::string text = emitter.Finish();
  // Non-declaration nodes are emitted as a single line.
  while (!text.empty() && (text.back() == '\n')) text.pop_back();
  return text;
}

}  // namespace solfi
