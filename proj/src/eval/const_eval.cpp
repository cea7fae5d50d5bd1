// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/eval/const_eval.hpp"

#include <stdexcept>

namespace constat::eval {

namespace {

using cst::NodeKind;
using cst::ParsedFile;
using cst::SourceLanguage;
using cst::SyntaxNode;

enum class Truth { kTrue, kFalse, kUnknown };

// Boolean view of a value under the file's language convention. Python has
// numeric truthiness; Kotlin conditions are typed, so integers give Unknown.
Truth truthiness(const EvalValue& v, SourceLanguage lang) {
  switch (v.tag()) {
    case EvalValue::Tag::kTrue:
      return Truth::kTrue;
    case EvalValue::Tag::kFalse:
      return Truth::kFalse;
    case EvalValue::Tag::kInt:
      if (lang == SourceLanguage::kPython) {
        return v.num().is_zero() ? Truth::kFalse : Truth::kTrue;
      }
      return Truth::kUnknown;
    case EvalValue::Tag::kUnknown:
      return Truth::kUnknown;
  }
  return Truth::kUnknown;
}

EvalValue from_truth(Truth t) {
  switch (t) {
    case Truth::kTrue:
      return EvalValue::true_value();
    case Truth::kFalse:
      return EvalValue::false_value();
    case Truth::kUnknown:
      return EvalValue::unknown();
  }
  return EvalValue::unknown();
}

EvalValue eval_impl(const SyntaxNode& node, const ParsedFile& file);

EvalValue eval_child(const SyntaxNode& node, std::size_t i,
                     const ParsedFile& file) {
  if (i >= node.child_count()) return EvalValue::unknown();
  const SyntaxNode& child = node.child(i);
  // Degraded parse regions (kOther etc.) are data, not bugs: they simply
  // evaluate to Unknown.
  if (!cst::is_expression_kind(child.kind())) return EvalValue::unknown();
  return eval_impl(child, file);
}

EvalValue eval_unary(const SyntaxNode& node, const ParsedFile& file) {
  const std::string& op = node.aux();
  EvalValue operand = eval_child(node, 0, file);
  if (op == "not" || op == "!") {
    switch (truthiness(operand, file.language)) {
      case Truth::kTrue:
        return EvalValue::false_value();
      case Truth::kFalse:
        return EvalValue::true_value();
      case Truth::kUnknown:
        return EvalValue::unknown();
    }
  }
  if (op == "-" && operand.is_int()) {
    return EvalValue::integer(-operand.num());
  }
  if (op == "+" && operand.is_int()) {
    return operand;
  }
  return EvalValue::unknown();
}

// `and`/`or` keep operand-value semantics where the deciding side is known
// (Python returns an operand, so `(2 and 4) + 1` folds to 5), and fall back
// to Kleene logic when only truthiness is forced: x and false is falsy and
// x or true is truthy no matter what x is.
EvalValue eval_and(const EvalValue& lhs, const EvalValue& rhs,
                   SourceLanguage lang) {
  switch (truthiness(lhs, lang)) {
    case Truth::kFalse:
      return lhs;
    case Truth::kTrue:
      return rhs;
    case Truth::kUnknown:
      if (truthiness(rhs, lang) == Truth::kFalse) {
        return EvalValue::forced_boolean(false);
      }
      return EvalValue::unknown();
  }
  return EvalValue::unknown();
}

EvalValue eval_or(const EvalValue& lhs, const EvalValue& rhs,
                  SourceLanguage lang) {
  switch (truthiness(lhs, lang)) {
    case Truth::kTrue:
      return lhs;
    case Truth::kFalse:
      return rhs;
    case Truth::kUnknown:
      if (truthiness(rhs, lang) == Truth::kTrue) {
        return EvalValue::forced_boolean(true);
      }
      return EvalValue::unknown();
  }
  return EvalValue::unknown();
}

EvalValue eval_binary(const SyntaxNode& node, const ParsedFile& file) {
  const std::string& op = node.aux();
  const bool python = file.language == SourceLanguage::kPython;

  EvalValue lhs = eval_child(node, 0, file);
  EvalValue rhs = eval_child(node, 1, file);

  if (op == "and" || op == "&&") {
    return eval_and(lhs, rhs, file.language);
  }
  if (op == "or" || op == "||") {
    return eval_or(lhs, rhs, file.language);
  }

  // Equality is defined for two integers or two booleans. Mixed operands
  // stay Unknown; Python's bool/int unification is deliberately not modeled.
  if (op == "==" || op == "!=") {
    bool want_equal = (op == "==");
    if (lhs.is_int() && rhs.is_int()) {
      return EvalValue::boolean((lhs.num() == rhs.num()) == want_equal);
    }
    // A forced boolean has certain truthiness but an uncertain underlying
    // value, so it cannot participate in equality folding.
    if (lhs.truthiness_only() || rhs.truthiness_only()) {
      return EvalValue::unknown();
    }
    bool lhs_bool = lhs.is_true() || lhs.is_false();
    bool rhs_bool = rhs.is_true() || rhs.is_false();
    if (lhs_bool && rhs_bool) {
      return EvalValue::boolean((lhs.is_true() == rhs.is_true()) ==
                                want_equal);
    }
    return EvalValue::unknown();
  }

  if (!lhs.is_int() || !rhs.is_int()) return EvalValue::unknown();
  const BigInt& a = lhs.num();
  const BigInt& b = rhs.num();

  if (op == "<") return EvalValue::boolean(a < b);
  if (op == "<=") return EvalValue::boolean(a <= b);
  if (op == ">") return EvalValue::boolean(a > b);
  if (op == ">=") return EvalValue::boolean(a >= b);
  if (op == "+") return EvalValue::integer(a + b);
  if (op == "-") return EvalValue::integer(a - b);
  if (op == "*") return EvalValue::integer(a * b);
  if (python && op == "//") {
    auto q = BigInt::div_floor(a, b);
    return q ? EvalValue::integer(*q) : EvalValue::unknown();
  }
  if (python && op == "%") {
    auto r = BigInt::mod_floor(a, b);
    return r ? EvalValue::integer(*r) : EvalValue::unknown();
  }
  if (!python && op == "/") {
    auto q = BigInt::div_trunc(a, b);
    return q ? EvalValue::integer(*q) : EvalValue::unknown();
  }
  if (!python && op == "%") {
    auto r = BigInt::rem_trunc(a, b);
    return r ? EvalValue::integer(*r) : EvalValue::unknown();
  }
  return EvalValue::unknown();
}

EvalValue eval_impl(const SyntaxNode& node, const ParsedFile& file) {
  switch (node.kind()) {
    case NodeKind::kIntLiteral: {
      auto n = BigInt::parse_literal(node.aux());
      return n ? EvalValue::integer(*n) : EvalValue::unknown();
    }
    case NodeKind::kBoolLiteral:
      if (node.aux() == "true" || node.aux() == "True") {
        return EvalValue::true_value();
      }
      if (node.aux() == "false" || node.aux() == "False") {
        return EvalValue::false_value();
      }
      return EvalValue::unknown();
    case NodeKind::kParenExpr:
      return eval_child(node, 0, file);
    case NodeKind::kUnaryExpr:
      return eval_unary(node, file);
    case NodeKind::kBinaryExpr:
      return eval_binary(node, file);
    case NodeKind::kIdentifier:
    case NodeKind::kCallExpr:
    case NodeKind::kMemberCall:
    case NodeKind::kInfixCall:
    case NodeKind::kStringLiteral:
    case NodeKind::kLambda:
      return EvalValue::unknown();
    default:
      return EvalValue::unknown();
  }
}

}  // namespace

EvalValue eval_expr(const SyntaxNode& node, const ParsedFile& file) {
  if (!cst::is_expression_kind(node.kind())) {
    throw std::invalid_argument(
        "eval_expr: node kind " + std::string(node_kind_name(node.kind())) +
        " is not an expression");
  }
  return eval_impl(node, file);
}

EvalValue eval_bool(const SyntaxNode& node, const ParsedFile& file) {
  EvalValue v = eval_expr(node, file);
  if (v.is_int()) {
    return from_truth(truthiness(v, file.language));
  }
  return v;
}

}  // namespace constat::eval
