// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include <memory>

#include "doctest.h"

#include "constat/cst/tree.hpp"
#include "support/tree_check.hpp"

using namespace constat;
using cst::NodeKind;
using cst::Span;
using cst::SyntaxNode;

namespace {

std::unique_ptr<SyntaxNode> node(NodeKind kind, std::size_t begin,
                                 std::size_t end, std::string aux = {}) {
  return std::make_unique<SyntaxNode>(kind, Span{begin, end, 1},
                                      std::move(aux));
}

// FILE -> WHILE_STMT -> {BOOL_LITERAL, BLOCK}; source "while (true) {}".
cst::ParsedFile small_fixture() {
  cst::ParsedFile file;
  file.path = "fixture.kt";
  file.language = cst::SourceLanguage::kKotlin;
  file.source_text = "while (true) {}";
  auto root = node(NodeKind::kFile, 0, 15);
  auto while_stmt = node(NodeKind::kWhileStmt, 0, 15);
  while_stmt->add_child(node(NodeKind::kBoolLiteral, 7, 11, "true"));
  while_stmt->add_child(node(NodeKind::kBlock, 13, 15));
  root->add_child(std::move(while_stmt));
  root->relink_parents();
  file.root = std::move(root);
  return file;
}

}  // namespace

TEST_CASE("preorder of a single node is just that node") {
  auto root = node(NodeKind::kFile, 0, 0);
  auto order = cst::preorder(*root);
  REQUIRE(order.size() == 1);
  CHECK(order[0] == root.get());
}

TEST_CASE("preorder yields parents before children, in child order") {
  auto file = small_fixture();
  auto order = cst::preorder(*file.root);
  REQUIRE(order.size() == 4);
  CHECK(order[0]->kind() == NodeKind::kFile);
  CHECK(order[1]->kind() == NodeKind::kWhileStmt);
  CHECK(order[2]->kind() == NodeKind::kBoolLiteral);
  CHECK(order[3]->kind() == NodeKind::kBlock);
}

TEST_CASE("preorder count matches an independent recursive counter") {
  // Three-statement fixture: deeper tree built by hand.
  auto root = node(NodeKind::kFile, 0, 30);
  for (std::size_t i = 0; i < 3; ++i) {
    auto stmt = node(NodeKind::kIfStmt, i * 10, i * 10 + 9);
    auto cond = node(NodeKind::kBinaryExpr, i * 10 + 1, i * 10 + 4, "==");
    cond->add_child(node(NodeKind::kIntLiteral, i * 10 + 1, i * 10 + 2, "1"));
    cond->add_child(node(NodeKind::kIntLiteral, i * 10 + 3, i * 10 + 4, "2"));
    stmt->add_child(std::move(cond));
    stmt->add_child(node(NodeKind::kBlock, i * 10 + 5, i * 10 + 9));
    root->add_child(std::move(stmt));
  }
  root->relink_parents();
  CHECK(cst::preorder(*root).size() == testsupport::count_nodes(*root));
  CHECK(cst::preorder(*root).size() == 16);  // 1 file + 3x(if, cond, 2 ints, block)
}

TEST_CASE("ancestors of the root is empty") {
  auto file = small_fixture();
  CHECK(cst::ancestors(*file.root).empty());
}

TEST_CASE("ancestors from a leaf walk up to the file root") {
  auto file = small_fixture();
  const SyntaxNode& literal = file.root->child(0).child(0);
  auto up = cst::ancestors(literal);
  REQUIRE(up.size() == 2);
  CHECK(up[0]->kind() == NodeKind::kWhileStmt);
  CHECK(up[1]->kind() == NodeKind::kFile);
}

TEST_CASE("ancestors of the deepest node matches the recorded path") {
  // The fixture builder records the construction path; ancestors() must
  // reproduce it in reverse.
  auto root = node(NodeKind::kFile, 0, 8);
  SyntaxNode* cursor = root.get();
  std::vector<const SyntaxNode*> built_path = {cursor};
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    cursor = cursor->add_child(node(NodeKind::kBlock, depth, 8 - depth));
    built_path.push_back(cursor);
  }
  root->relink_parents();
  auto up = cst::ancestors(*cursor);
  REQUIRE(up.size() == built_path.size() - 1);
  for (std::size_t i = 0; i < up.size(); ++i) {
    CHECK(up[i] == built_path[built_path.size() - 2 - i]);
  }
}

TEST_CASE("node_text returns exact source slices") {
  cst::ParsedFile file;
  file.path = "t.py";
  file.language = cst::SourceLanguage::kPython;
  file.source_text = "x = 1\n";
  file.root = node(NodeKind::kFile, 0, 6);
  CHECK(cst::node_text(file, *file.root) == "x = 1\n");

  auto literal = node(NodeKind::kIntLiteral, 4, 5, "1");
  CHECK(cst::node_text(file, *literal) == "1");
}

TEST_CASE("node_text throws on out-of-bounds spans") {
  cst::ParsedFile file;
  file.path = "t.py";
  file.source_text = "abc";
  file.root = node(NodeKind::kFile, 0, 3);
  auto bad = node(NodeKind::kOther, 1, 9);
  CHECK_THROWS_AS(cst::node_text(file, *bad), std::logic_error);
}

TEST_CASE("hand-built fixture satisfies the structural invariants") {
  auto file = small_fixture();
  CHECK(testsupport::check_tree_invariants(file).empty());
}

TEST_CASE("expression kind covers exactly the evaluable kinds") {
  CHECK(cst::is_expression_kind(NodeKind::kIntLiteral));
  CHECK(cst::is_expression_kind(NodeKind::kBinaryExpr));
  CHECK(cst::is_expression_kind(NodeKind::kParenExpr));
  CHECK(cst::is_expression_kind(NodeKind::kLambda));
  CHECK_FALSE(cst::is_expression_kind(NodeKind::kBlock));
  CHECK_FALSE(cst::is_expression_kind(NodeKind::kOther));
  CHECK_FALSE(cst::is_expression_kind(NodeKind::kFile));
}
