// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "lex_common.hpp"

namespace constat::frontend::detail {

void attach_comments(cst::SyntaxNode* root,
                     const std::vector<cst::Span>& comments) {
  for (const cst::Span& span : comments) {
    cst::SyntaxNode* host = root;
    bool descended = true;
    while (descended) {
      descended = false;
      for (const auto& child : host->children()) {
        if (child->span().contains(span) &&
            child->span().end_byte > child->span().start_byte) {
          host = child.get();
          descended = true;
          break;
        }
      }
    }
    std::size_t index = 0;
    while (index < host->child_count() &&
           host->child(index).span().start_byte < span.start_byte) {
      ++index;
    }
    host->insert_child(index, make_node(cst::NodeKind::kComment, span));
  }
  root->relink_parents();
}

}  // namespace constat::frontend::detail
