// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0
//
// Internal lexing primitives shared by the frontends. Not installed.

#ifndef CONSTAT_SRC_FRONTEND_LEX_COMMON_HPP
#define CONSTAT_SRC_FRONTEND_LEX_COMMON_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "constat/cst/tree.hpp"

namespace constat::frontend::detail {

enum class TokKind {
  kIdent,
  kInt,
  kFloat,
  kString,
  kChar,
  kOp,
  kNewline,  // Python only: logical line break
  kIndent,   // Python only
  kDedent,   // Python only
  kEnd,
};

struct Tok {
  TokKind kind = TokKind::kEnd;
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t line = 1;      // 1-based line of the first byte
  std::size_t end_line = 1;  // 1-based line of the last byte

  bool is_op(std::string_view op) const {
    return kind == TokKind::kOp && text == op;
  }
  bool is_ident(std::string_view name) const {
    return kind == TokKind::kIdent && text == name;
  }
};

inline std::unique_ptr<cst::SyntaxNode> make_node(cst::NodeKind kind,
                                                  cst::Span span,
                                                  std::string aux = {}) {
  return std::make_unique<cst::SyntaxNode>(kind, span, std::move(aux));
}

inline cst::Span tok_span(const Tok& tok) {
  return cst::Span{tok.begin, tok.end, tok.line};
}

// Inserts comment nodes into the deepest node whose span contains them,
// keeping sibling order. Comments are lexer trivia, so their spans never
// overlap any token-derived node span.
void attach_comments(cst::SyntaxNode* root,
                     const std::vector<cst::Span>& comments);

}  // namespace constat::frontend::detail

#endif  // CONSTAT_SRC_FRONTEND_LEX_COMMON_HPP
