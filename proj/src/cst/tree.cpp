// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/cst/tree.hpp"

#include <stdexcept>

namespace constat::cst {

std::string_view language_name(SourceLanguage lang) {
  switch (lang) {
    case SourceLanguage::kKotlin:
      return "Kotlin";
    case SourceLanguage::kPython:
      return "Python";
  }
  return "?";
}

std::string_view node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kFile:
      return "FILE";
    case NodeKind::kFunctionDecl:
      return "FUNCTION_DECL";
    case NodeKind::kBlock:
      return "BLOCK";
    case NodeKind::kForStmt:
      return "FOR_STMT";
    case NodeKind::kWhileStmt:
      return "WHILE_STMT";
    case NodeKind::kDoWhileStmt:
      return "DO_WHILE_STMT";
    case NodeKind::kIfStmt:
      return "IF_STMT";
    case NodeKind::kWhenStmt:
      return "WHEN_STMT";
    case NodeKind::kBinaryExpr:
      return "BINARY_EXPR";
    case NodeKind::kInfixCall:
      return "INFIX_CALL";
    case NodeKind::kCallExpr:
      return "CALL_EXPR";
    case NodeKind::kMemberCall:
      return "MEMBER_CALL";
    case NodeKind::kParenExpr:
      return "PAREN_EXPR";
    case NodeKind::kUnaryExpr:
      return "UNARY_EXPR";
    case NodeKind::kLambda:
      return "LAMBDA";
    case NodeKind::kIntLiteral:
      return "INT_LITERAL";
    case NodeKind::kBoolLiteral:
      return "BOOL_LITERAL";
    case NodeKind::kStringLiteral:
      return "STRING_LITERAL";
    case NodeKind::kIdentifier:
      return "IDENTIFIER";
    case NodeKind::kOperatorToken:
      return "OPERATOR_TOKEN";
    case NodeKind::kComment:
      return "COMMENT";
    case NodeKind::kOther:
      return "OTHER";
  }
  return "?";
}

SyntaxNode* SyntaxNode::add_child(std::unique_ptr<SyntaxNode> child) {
  child->parent_ = this;
  children_.push_back(std::move(child));
  return children_.back().get();
}

void SyntaxNode::insert_child(std::size_t index,
                              std::unique_ptr<SyntaxNode> child) {
  child->parent_ = this;
  children_.insert(children_.begin() + static_cast<std::ptrdiff_t>(index),
                   std::move(child));
}

void SyntaxNode::relink_parents() {
  for (auto& child : children_) {
    child->parent_ = this;
    child->relink_parents();
  }
}

std::vector<const SyntaxNode*> preorder(const SyntaxNode& root) {
  std::vector<const SyntaxNode*> out;
  visit_preorder(root, [&out](const SyntaxNode& n) { out.push_back(&n); });
  return out;
}

void visit_preorder(const SyntaxNode& root,
                    const std::function<void(const SyntaxNode&)>& fn) {
  fn(root);
  for (const auto& child : root.children()) {
    visit_preorder(*child, fn);
  }
}

std::vector<const SyntaxNode*> ancestors(const SyntaxNode& node) {
  std::vector<const SyntaxNode*> out;
  for (const SyntaxNode* p = node.parent(); p != nullptr; p = p->parent()) {
    out.push_back(p);
  }
  return out;
}

std::string_view node_text(const ParsedFile& file, const SyntaxNode& node) {
  const Span& span = node.span();
  if (span.start_byte > span.end_byte ||
      span.end_byte > file.source_text.size()) {
    throw std::logic_error("node_text: span [" +
                           std::to_string(span.start_byte) + ", " +
                           std::to_string(span.end_byte) +
                           ") exceeds file bounds of " + file.path);
  }
  return std::string_view(file.source_text)
      .substr(span.start_byte, span.end_byte - span.start_byte);
}

bool is_expression_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::kBinaryExpr:
    case NodeKind::kInfixCall:
    case NodeKind::kCallExpr:
    case NodeKind::kMemberCall:
    case NodeKind::kParenExpr:
    case NodeKind::kUnaryExpr:
    case NodeKind::kLambda:
    case NodeKind::kIntLiteral:
    case NodeKind::kBoolLiteral:
    case NodeKind::kStringLiteral:
    case NodeKind::kIdentifier:
      return true;
    default:
      return false;
  }
}

}  // namespace constat::cst
