// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_CST_TREE_HPP
#define CONSTAT_CST_TREE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace constat::cst {

enum class SourceLanguage {
  kKotlin,
  kPython,
};

std::string_view language_name(SourceLanguage lang);

// The closed set of construct kinds every frontend maps onto. Frontends must
// assign exactly one kind per parsed construct; kOther is the catch-all.
enum class NodeKind {
  kFile,
  kFunctionDecl,
  kBlock,
  kForStmt,
  kWhileStmt,
  kDoWhileStmt,
  kIfStmt,
  kWhenStmt,
  kBinaryExpr,
  kInfixCall,
  kCallExpr,
  kMemberCall,
  kParenExpr,
  kUnaryExpr,
  kLambda,
  kIntLiteral,
  kBoolLiteral,
  kStringLiteral,
  kIdentifier,
  kOperatorToken,
  kComment,
  kOther,
};

// Stable upper-case names used in CSV output ("IF_STMT", "FOR_STMT", ...).
std::string_view node_kind_name(NodeKind kind);

// Byte-based source range with a derived 1-based start line.
struct Span {
  std::size_t start_byte = 0;
  std::size_t end_byte = 0;
  std::size_t start_line = 1;

  bool contains(const Span& other) const {
    return start_byte <= other.start_byte && other.end_byte <= end_byte;
  }
};

// One node of the concrete syntax tree. Trees are immutable after
// construction and safe to read from multiple threads. `aux` holds the
// operator lexeme, identifier name, or callee name where applicable.
class SyntaxNode {
 public:
  SyntaxNode(NodeKind kind, Span span, std::string aux = {})
      : kind_(kind), span_(span), aux_(std::move(aux)) {}

  NodeKind kind() const { return kind_; }
  const Span& span() const { return span_; }
  const std::string& aux() const { return aux_; }
  const SyntaxNode* parent() const { return parent_; }

  const std::vector<std::unique_ptr<SyntaxNode>>& children() const {
    return children_;
  }
  std::size_t child_count() const { return children_.size(); }
  const SyntaxNode& child(std::size_t i) const { return *children_[i]; }

  // Construction-time mutators; not for use on finished trees.
  SyntaxNode* add_child(std::unique_ptr<SyntaxNode> child);
  void insert_child(std::size_t index, std::unique_ptr<SyntaxNode> child);
  void set_span(Span span) { span_ = span; }
  void set_aux(std::string aux) { aux_ = std::move(aux); }
  void set_kind(NodeKind kind) { kind_ = kind; }

  // Recomputes parent links for the whole subtree rooted here.
  void relink_parents();

 private:
  NodeKind kind_;
  Span span_;
  std::string aux_;
  SyntaxNode* parent_ = nullptr;
  std::vector<std::unique_ptr<SyntaxNode>> children_;
};

// A parsed source file: path, language, owned tree, decoded text, and any
// parse diagnostics. The root is the unique kFile node spanning the whole
// file.
struct ParsedFile {
  std::string path;
  SourceLanguage language = SourceLanguage::kKotlin;
  std::unique_ptr<SyntaxNode> root;
  std::string source_text;
  std::vector<std::string> diagnostics;
};

// Depth-first preorder: the root first, then each subtree in child order.
std::vector<const SyntaxNode*> preorder(const SyntaxNode& root);

// Calls `fn` for each node in preorder without materializing a vector.
void visit_preorder(const SyntaxNode& root,
                    const std::function<void(const SyntaxNode&)>& fn);

// Parent, grandparent, ..., ending at the file root; empty for the root.
std::vector<const SyntaxNode*> ancestors(const SyntaxNode& node);

// The exact source slice covered by `node`. Throws std::logic_error if the
// node's span exceeds the file bounds (a frontend bug, not a data error).
std::string_view node_text(const ParsedFile& file, const SyntaxNode& node);

// True for kinds eval_expr accepts: literals, identifiers, unary/binary
// expressions, parens, calls, and lambdas.
bool is_expression_kind(NodeKind kind);

}  // namespace constat::cst

#endif  // CONSTAT_CST_TREE_HPP
