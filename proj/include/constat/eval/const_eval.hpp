// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_EVAL_CONST_EVAL_HPP
#define CONSTAT_EVAL_CONST_EVAL_HPP

#include <optional>
#include <string>

#include "constat/cst/tree.hpp"
#include "constat/eval/bigint.hpp"

namespace constat::eval {

// Three-valued constant-evaluation result. A subexpression that folds to a
// constant integer additionally carries its exact value; boolean results and
// integer payloads never coexist on the same value, and Unknown carries
// nothing.
class EvalValue {
 public:
  enum class Tag { kTrue, kFalse, kInt, kUnknown };

  static EvalValue true_value() { return EvalValue(Tag::kTrue); }
  static EvalValue false_value() { return EvalValue(Tag::kFalse); }
  static EvalValue boolean(bool b) {
    return b ? true_value() : false_value();
  }
  // A boolean forced by short-circuit logic: the truthiness is certain but
  // the underlying operand value is not (e.g. `x or 1` is truthy whether it
  // ends up as x or as 1). Equality folding must not treat it as a concrete
  // boolean constant.
  static EvalValue forced_boolean(bool b) {
    EvalValue v = boolean(b);
    v.truthiness_only_ = true;
    return v;
  }
  static EvalValue integer(BigInt n) {
    EvalValue v(Tag::kInt);
    v.num_ = std::move(n);
    return v;
  }
  static EvalValue unknown() { return EvalValue(Tag::kUnknown); }

  Tag tag() const { return tag_; }
  bool is_true() const { return tag_ == Tag::kTrue; }
  bool is_false() const { return tag_ == Tag::kFalse; }
  bool is_unknown() const { return tag_ == Tag::kUnknown; }
  bool is_int() const { return tag_ == Tag::kInt; }
  bool truthiness_only() const { return truthiness_only_; }

  // Valid only when is_int().
  const BigInt& num() const { return num_; }

 private:
  explicit EvalValue(Tag tag) : tag_(tag) {}

  Tag tag_;
  bool truthiness_only_ = false;
  BigInt num_;
};

// Folds an expression subtree to a constant where the value is forced:
// integer literals and exact integer arithmetic, boolean literals,
// comparisons over integer constants, and Kleene three-valued and/or/not.
// Identifiers, calls, floats, strings, and unsupported operators yield
// Unknown; so does division or modulo by zero. The result is sound: a
// definite True/False is only returned when no assignment of the unknown
// parts could change it.
//
// Throws std::invalid_argument when `node` is not an expression kind
// (an analyzer bug, not a data error).
EvalValue eval_expr(const cst::SyntaxNode& node, const cst::ParsedFile& file);

// Same as eval_expr, then coerces a bare integer constant per the file's
// language convention: Python treats zero as false and nonzero as true;
// Kotlin has no numeric truthiness, so integers stay Unknown.
EvalValue eval_bool(const cst::SyntaxNode& node, const cst::ParsedFile& file);

}  // namespace constat::eval

#endif  // CONSTAT_EVAL_CONST_EVAL_HPP
