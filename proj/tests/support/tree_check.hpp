// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only structural checks over parsed trees. Violations come back as
// messages so both the unit suite and the acceptance binary can assert on
// them.

#ifndef CONSTAT_TESTS_SUPPORT_TREE_CHECK_HPP
#define CONSTAT_TESTS_SUPPORT_TREE_CHECK_HPP

#include <string>
#include <vector>

#include "constat/cst/tree.hpp"

namespace constat::testsupport {

// Recursive node counter kept deliberately separate from cst::preorder.
inline std::size_t count_nodes(const cst::SyntaxNode& node) {
  std::size_t total = 1;
  for (const auto& child : node.children()) total += count_nodes(*child);
  return total;
}

inline void check_node(const cst::SyntaxNode& node,
                       const cst::ParsedFile& file,
                       std::vector<std::string>* violations) {
  const auto& span = node.span();
  if (span.start_byte > span.end_byte) {
    violations->push_back(file.path + ": inverted span");
  }
  if (span.end_byte > file.source_text.size()) {
    violations->push_back(file.path + ": span exceeds file bounds");
  }
  std::size_t prev_end = span.start_byte;
  for (std::size_t i = 0; i < node.child_count(); ++i) {
    const cst::SyntaxNode& child = node.child(i);
    if (child.parent() != &node) {
      violations->push_back(file.path + ": broken parent link");
    }
    if (!node.span().contains(child.span())) {
      violations->push_back(file.path + ": child span escapes parent at " +
                            std::to_string(child.span().start_byte));
    }
    if (child.span().start_byte < prev_end) {
      violations->push_back(file.path + ": sibling overlap at " +
                            std::to_string(child.span().start_byte));
    }
    prev_end = child.span().end_byte;
    check_node(child, file, violations);
  }

  // Child texts plus the gaps between them must rebuild the parent's text.
  if (span.end_byte <= file.source_text.size() &&
      span.start_byte <= span.end_byte) {
    std::string rebuilt;
    std::size_t cursor = span.start_byte;
    bool orderly = true;
    for (std::size_t i = 0; i < node.child_count(); ++i) {
      const cst::Span& child = node.child(i).span();
      if (child.start_byte < cursor || child.end_byte > span.end_byte) {
        orderly = false;
        break;
      }
      rebuilt += file.source_text.substr(cursor, child.start_byte - cursor);
      rebuilt += file.source_text.substr(child.start_byte,
                                         child.end_byte - child.start_byte);
      cursor = child.end_byte;
    }
    if (orderly) {
      rebuilt += file.source_text.substr(cursor, span.end_byte - cursor);
      if (rebuilt != file.source_text.substr(span.start_byte,
                                             span.end_byte - span.start_byte)) {
        violations->push_back(file.path + ": text reconstruction failed");
      }
    }
  }
}

// Span nesting, sibling ordering, parent consistency, root coverage, and
// traversal completeness for one parsed file.
inline std::vector<std::string> check_tree_invariants(
    const cst::ParsedFile& file) {
  std::vector<std::string> violations;
  if (!file.root) {
    violations.push_back(file.path + ": missing root");
    return violations;
  }
  if (file.root->kind() != cst::NodeKind::kFile) {
    violations.push_back(file.path + ": root is not a FILE node");
  }
  if (file.root->parent() != nullptr) {
    violations.push_back(file.path + ": root has a parent");
  }
  if (file.root->span().start_byte != 0 ||
      file.root->span().end_byte != file.source_text.size()) {
    violations.push_back(file.path + ": root span does not cover the file");
  }
  check_node(*file.root, file, &violations);
  if (cst::preorder(*file.root).size() != count_nodes(*file.root)) {
    violations.push_back(file.path + ": preorder misses nodes");
  }
  return violations;
}

}  // namespace constat::testsupport

#endif  // CONSTAT_TESTS_SUPPORT_TREE_CHECK_HPP
