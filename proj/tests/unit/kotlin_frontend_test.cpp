// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>
#include <vector>

#include "doctest.h"

#include "constat/cst/tree.hpp"
#include "constat/frontend/kotlin.hpp"
#include "support/fixtures.hpp"
#include "support/tree_check.hpp"

using namespace constat;
using cst::NodeKind;

namespace {

std::vector<const cst::SyntaxNode*> find_all(const cst::ParsedFile& file,
                                             NodeKind kind) {
  std::vector<const cst::SyntaxNode*> out;
  for (const auto* node : cst::preorder(*file.root)) {
    if (node->kind() == kind) out.push_back(node);
  }
  return out;
}

std::size_t count_aux(const cst::ParsedFile& file, NodeKind kind,
                      const std::string& aux) {
  std::size_t n = 0;
  for (const auto* node : cst::preorder(*file.root)) {
    if (node->kind() == kind && node->aux() == aux) ++n;
  }
  return n;
}

// Structural signature used for the idempotence check.
void signature(const cst::SyntaxNode& node, std::string* out) {
  *out += node_kind_name(node.kind());
  *out += '(';
  *out += std::to_string(node.span().start_byte);
  *out += ':';
  *out += std::to_string(node.span().end_byte);
  *out += ':';
  *out += node.aux();
  for (const auto& child : node.children()) {
    *out += ' ';
    signature(*child, out);
  }
  *out += ')';
}

}  // namespace

TEST_CASE("for over a dotdot range") {
  auto file = frontend::parse_kotlin("for (i in 1..10) {}", "t.kt");
  auto fors = find_all(file, NodeKind::kForStmt);
  REQUIRE(fors.size() == 1);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 1);
  // The range sits inside the loop header.
  const auto* range = find_all(file, NodeKind::kBinaryExpr)[0];
  CHECK(range->parent() == fors[0]);
}

TEST_CASE("for over until is an infix call") {
  auto file = frontend::parse_kotlin("for (i in 0 until n) {}", "t.kt");
  REQUIRE(find_all(file, NodeKind::kForStmt).size() == 1);
  CHECK(count_aux(file, NodeKind::kInfixCall, "until") == 1);
}

TEST_CASE("operators inside strings never become nodes") {
  auto file = frontend::parse_kotlin("val s = \"a..b\"", "t.kt");
  CHECK(find_all(file, NodeKind::kStringLiteral).size() == 1);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 0);
}

TEST_CASE("no token leakage from strings, templates, and comments") {
  std::string source =
      "// for (i in 1..10) while (x) until\n"
      "/* 0 until 9 /* nested 1..2 */ still comment */\n"
      "val a = \"x..y until z\"\n"
      "val b = \"tpl ${'$'}{1} end\"\n"
      "val c = \"\"\"raw 1..10\n second line until\"\"\"\n";
  auto file = frontend::parse_kotlin(source, "t.kt");
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 0);
  CHECK(count_aux(file, NodeKind::kInfixCall, "until") == 0);
  CHECK(find_all(file, NodeKind::kWhileStmt).empty());
  CHECK(find_all(file, NodeKind::kForStmt).empty());
  CHECK(testsupport::check_tree_invariants(file).empty());
}

TEST_CASE("member calls carry the callee name") {
  auto file = frontend::parse_kotlin("val r = a.rangeTo(b)\nval d = a.downTo(b)",
                                     "t.kt");
  CHECK(count_aux(file, NodeKind::kMemberCall, "rangeTo") == 1);
  CHECK(count_aux(file, NodeKind::kMemberCall, "downTo") == 1);
}

TEST_CASE("while, do-while, if, and when all get their kinds") {
  std::string source =
      "fun f(x: Int) {\n"
      "    while (x > 0) { g() }\n"
      "    do { g() } while (x < 0)\n"
      "    if (x == 0) { g() } else { h() }\n"
      "    when (x) {\n"
      "        1 -> g()\n"
      "        else -> h()\n"
      "    }\n"
      "}\n";
  auto file = frontend::parse_kotlin(source, "t.kt");
  CHECK(find_all(file, NodeKind::kWhileStmt).size() == 1);
  CHECK(find_all(file, NodeKind::kDoWhileStmt).size() == 1);
  CHECK(find_all(file, NodeKind::kIfStmt).size() == 1);
  CHECK(find_all(file, NodeKind::kWhenStmt).size() == 1);
  CHECK(find_all(file, NodeKind::kFunctionDecl).size() == 1);
  CHECK(testsupport::check_tree_invariants(file).empty());
}

TEST_CASE("lambdas parse their inner statements") {
  auto file = frontend::parse_kotlin(
      "fun f(list: List<Int>) { list.forEach { if (it in 1..9) g(it) } }",
      "t.kt");
  auto lambdas = find_all(file, NodeKind::kLambda);
  REQUIRE(lambdas.size() == 1);
  CHECK(find_all(file, NodeKind::kIfStmt).size() == 1);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 1);
  CHECK(count_aux(file, NodeKind::kMemberCall, "forEach") == 1);
}

TEST_CASE("trailing lambda without parens becomes a call") {
  auto file = frontend::parse_kotlin("fun f() { run { g() } }", "t.kt");
  CHECK(count_aux(file, NodeKind::kCallExpr, "run") == 1);
  CHECK(find_all(file, NodeKind::kLambda).size() == 1);
}

TEST_CASE("round trip: the root covers the exact source text") {
  for (const auto& fixture : testsupport::kotlin_range_fixtures()) {
    auto file = frontend::parse_kotlin(fixture.content, fixture.name);
    CHECK(cst::node_text(file, *file.root) == fixture.content);
  }
}

TEST_CASE("structural invariants hold across the fixture corpus") {
  for (const auto& fixture : testsupport::kotlin_range_fixtures()) {
    auto file = frontend::parse_kotlin(fixture.content, fixture.name);
    auto violations = testsupport::check_tree_invariants(file);
    CHECK_MESSAGE(violations.empty(),
                  fixture.name << ": "
                               << (violations.empty() ? "" : violations[0]));
  }
}

TEST_CASE("parsing twice yields structurally identical trees") {
  for (const auto& fixture : testsupport::kotlin_range_fixtures()) {
    auto first = frontend::parse_kotlin(fixture.content, fixture.name);
    auto second = frontend::parse_kotlin(fixture.content, fixture.name);
    std::string sig_first;
    std::string sig_second;
    signature(*first.root, &sig_first);
    signature(*second.root, &sig_second);
    CHECK(sig_first == sig_second);
  }
}

TEST_CASE("comments become comment nodes") {
  auto file = frontend::parse_kotlin("// leading\nval x = 1 /* mid */\n",
                                     "t.kt");
  CHECK(find_all(file, NodeKind::kComment).size() == 2);
}

TEST_CASE("malformed input degrades without aborting") {
  auto file = frontend::parse_kotlin("fun broken( { ] ) while ] &&", "t.kt");
  CHECK(file.root != nullptr);
  CHECK(testsupport::check_tree_invariants(file).empty());
  auto file2 = frontend::parse_kotlin("val s = \"unterminated", "t.kt");
  CHECK_FALSE(file2.diagnostics.empty());
  CHECK(testsupport::check_tree_invariants(file2).empty());
}

TEST_CASE("nested classes keep functions and loops visible") {
  std::string source =
      "class Outer {\n"
      "    fun method() {\n"
      "        for (i in 1..3) { use(i) }\n"
      "    }\n"
      "    companion object {\n"
      "        val range = 4..8\n"
      "    }\n"
      "}\n";
  auto file = frontend::parse_kotlin(source, "t.kt");
  CHECK(find_all(file, NodeKind::kFunctionDecl).size() == 1);
  CHECK(find_all(file, NodeKind::kForStmt).size() == 1);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 2);
  CHECK(testsupport::check_tree_invariants(file).empty());
}

TEST_CASE("rangeUntil operator is not confused with dotdot") {
  auto file = frontend::parse_kotlin("val r = 1..<10", "t.kt");
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 0);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..<") == 1);
}

TEST_CASE("nested generic argument lists close with adjacent angles") {
  std::string source =
      "fun <T : Comparable<T>> maxOf3(a: T, b: T, c: T): T = when {\n"
      "    a >= b && a >= c -> a\n"
      "    b >= c -> b\n"
      "    else -> c\n"
      "}\n";
  auto file = frontend::parse_kotlin(source, "t.kt");
  CHECK(file.diagnostics.empty());
  REQUIRE(find_all(file, NodeKind::kFunctionDecl).size() == 1);
  CHECK(find_all(file, NodeKind::kFunctionDecl)[0]->aux() == "maxOf3");
  CHECK(find_all(file, NodeKind::kWhenStmt).size() == 1);
}

TEST_CASE("function types in declarations keep their arrow") {
  auto file = frontend::parse_kotlin(
      "val g: (Int) -> Int = { it + 1 }\n"
      "fun h(): (Int) -> Int = g\n",
      "t.kt");
  CHECK(file.diagnostics.empty());
  CHECK(find_all(file, NodeKind::kLambda).size() == 1);
  CHECK(find_all(file, NodeKind::kFunctionDecl).size() == 1);
}

TEST_CASE("when with a val subject parses its entries") {
  std::string source =
      "fun f(x: Any): Int = when (val st = x) {\n"
      "    is Int -> st\n"
      "    in 1..4 -> 0\n"
      "    else -> 1\n"
      "}\n";
  auto file = frontend::parse_kotlin(source, "t.kt");
  CHECK(file.diagnostics.empty());
  CHECK(find_all(file, NodeKind::kWhenStmt).size() == 1);
  CHECK(count_aux(file, NodeKind::kBinaryExpr, "..") == 1);
  CHECK(testsupport::check_tree_invariants(file).empty());
}
