// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/frontend/kotlin.hpp"

#include <array>
#include <unordered_set>
#include <utility>

#include "lex_common.hpp"

namespace constat::frontend {

namespace {

using cst::NodeKind;
using cst::ParsedFile;
using cst::Span;
using cst::SyntaxNode;
using detail::make_node;
using detail::Tok;
using detail::tok_span;
using detail::TokKind;

using NodePtr = std::unique_ptr<SyntaxNode>;

const std::unordered_set<std::string_view>& hard_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "as",     "break",  "class",  "continue", "do",        "else",
      "false",  "for",    "fun",    "if",       "in",        "interface",
      "is",     "null",   "object", "package",  "return",    "super",
      "this",   "throw",  "true",   "try",      "typealias", "typeof",
      "val",    "var",    "when",   "while",    "import",
  };
  return kw;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

class KotlinLexer {
 public:
  KotlinLexer(std::string_view src, std::string_view path,
              std::vector<std::string>* diags)
      : src_(src), path_(path), diags_(diags) {}

  void run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' ||
                 c == '\v') {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        lex_line_comment();
      } else if (c == '/' && peek(1) == '*') {
        lex_block_comment();
      } else if (c == '"') {
        lex_string();
      } else if (c == '\'') {
        lex_char();
      } else if (is_digit(c)) {
        lex_number();
      } else if (is_ident_start(c)) {
        lex_ident();
      } else if (c == '`') {
        lex_backtick_ident();
      } else {
        lex_operator();
      }
    }
    Tok end;
    end.kind = TokKind::kEnd;
    end.begin = end.end = src_.size();
    end.line = end.end_line = line_;
    tokens_.push_back(end);
  }

  std::vector<Tok> take_tokens() { return std::move(tokens_); }
  std::vector<Span> take_comments() { return std::move(comments_); }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_hex_digit(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
  }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  void push(TokKind kind, std::size_t begin, std::size_t begin_line) {
    Tok tok;
    tok.kind = kind;
    tok.begin = begin;
    tok.end = pos_;
    tok.line = begin_line;
    tok.end_line = line_;
    tok.text = src_.substr(begin, pos_ - begin);
    tokens_.push_back(tok);
  }

  void diagnose(std::size_t at_line, const std::string& message) {
    diags_->push_back(std::string(path_) + ":" + std::to_string(at_line) +
                      ": " + message);
  }

  void lex_line_comment() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
    comments_.push_back(Span{begin, pos_, begin_line});
  }

  void lex_block_comment() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    pos_ += 2;
    int depth = 1;  // Kotlin block comments nest.
    while (pos_ < src_.size() && depth > 0) {
      if (src_[pos_] == '/' && peek(1) == '*') {
        ++depth;
        pos_ += 2;
      } else if (src_[pos_] == '*' && peek(1) == '/') {
        --depth;
        pos_ += 2;
      } else {
        if (src_[pos_] == '\n') ++line_;
        ++pos_;
      }
    }
    if (depth > 0) diagnose(begin_line, "unterminated block comment");
    comments_.push_back(Span{begin, pos_, begin_line});
  }

  // Skips a `${ ... }` template region, including nested strings and braces.
  void skip_template(int guard) {
    if (guard > 32) return;
    int depth = 1;  // opening '{' already consumed by caller
    while (pos_ < src_.size() && depth > 0) {
      char c = src_[pos_];
      if (c == '{') {
        ++depth;
        ++pos_;
      } else if (c == '}') {
        --depth;
        ++pos_;
      } else if (c == '"') {
        skip_string_body(guard + 1);
      } else if (c == '\n') {
        ++line_;
        ++pos_;
      } else {
        ++pos_;
      }
    }
  }

  // Consumes a string starting at the opening quote; used both for tokens
  // and for strings nested inside templates.
  void skip_string_body(int guard) {
    if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
      pos_ += 3;
      while (pos_ < src_.size()) {
        if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
          pos_ += 3;
          return;
        }
        if (src_[pos_] == '$' && peek(1) == '{') {
          pos_ += 2;
          skip_template(guard);
          continue;
        }
        if (src_[pos_] == '\n') ++line_;
        ++pos_;
      }
      diagnose(line_, "unterminated raw string");
      return;
    }
    ++pos_;  // opening quote
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
      } else if (c == '"') {
        ++pos_;
        return;
      } else if (c == '\n') {
        diagnose(line_, "unterminated string literal");
        return;
      } else if (c == '$' && peek(1) == '{') {
        pos_ += 2;
        skip_template(guard);
      } else {
        ++pos_;
      }
    }
    diagnose(line_, "unterminated string literal");
  }

  void lex_string() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    skip_string_body(0);
    push(TokKind::kString, begin, begin_line);
  }

  void lex_char() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    ++pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
      } else if (c == '\'') {
        ++pos_;
        break;
      } else if (c == '\n') {
        diagnose(begin_line, "unterminated character literal");
        break;
      } else {
        ++pos_;
      }
    }
    push(TokKind::kChar, begin, begin_line);
  }

  void lex_number() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    bool is_float = false;
    if (src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      pos_ += 2;
      while (pos_ < src_.size() && (is_hex_digit(src_[pos_]) ||
                                    src_[pos_] == '_')) {
        ++pos_;
      }
    } else if (src_[pos_] == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      pos_ += 2;
      while (pos_ < src_.size() &&
             (src_[pos_] == '0' || src_[pos_] == '1' || src_[pos_] == '_')) {
        ++pos_;
      }
    } else {
      while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) {
        ++pos_;
      }
      // A '.' continues a float only before a digit; `1..10` stays integral.
      if (pos_ < src_.size() && src_[pos_] == '.' && is_digit(peek(1))) {
        is_float = true;
        ++pos_;
        while (pos_ < src_.size() &&
               (is_digit(src_[pos_]) || src_[pos_] == '_')) {
          ++pos_;
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E') &&
          (is_digit(peek(1)) ||
           ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
        is_float = true;
        pos_ += 2;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    while (pos_ < src_.size() &&
           (src_[pos_] == 'L' || src_[pos_] == 'l' || src_[pos_] == 'u' ||
            src_[pos_] == 'U')) {
      ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'f' || src_[pos_] == 'F')) {
      is_float = true;
      ++pos_;
    }
    push(is_float ? TokKind::kFloat : TokKind::kInt, begin, begin_line);
  }

  void lex_ident() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    push(TokKind::kIdent, begin, begin_line);
  }

  void lex_backtick_ident() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '`' && src_[pos_] != '\n') {
      ++pos_;
    }
    if (pos_ < src_.size() && src_[pos_] == '`') ++pos_;
    push(TokKind::kIdent, begin, begin_line);
  }

  void lex_operator() {
    // No shift operators: `>>` must stay two tokens so nested generic
    // argument lists like Comparable<T>> close properly.
    static constexpr std::array<std::string_view, 22> kMulti = {
        "===", "!==", "..<", "..", "?.", "?:", "::", "->", "==", "!=", "<=",
        ">=",  "&&",  "||",  "+=", "-=", "*=", "/=", "%=", "++", "--", "!!",
    };
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    for (std::string_view op : kMulti) {
      if (src_.substr(pos_).substr(0, op.size()) == op) {
        pos_ += op.size();
        push(TokKind::kOp, begin, begin_line);
        return;
      }
    }
    ++pos_;
    push(TokKind::kOp, begin, begin_line);
  }

  std::string_view src_;
  std::string_view path_;
  std::vector<std::string>* diags_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<Tok> tokens_;
  std::vector<Span> comments_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class KotlinParser {
 public:
  KotlinParser(std::vector<Tok> tokens, std::string_view src,
               std::string_view path, std::vector<std::string>* diags)
      : toks_(std::move(tokens)), src_(src), path_(path), diags_(diags) {}

  NodePtr parse_file() {
    auto root = make_node(NodeKind::kFile, Span{0, src_.size(), 1});
    for (auto& stmt : parse_statements(/*stop_at_rbrace=*/false)) {
      root->add_child(std::move(stmt));
    }
    return root;
  }

 private:
  // --- token access -------------------------------------------------------

  const Tok& peek(std::size_t ahead = 0) const {
    std::size_t idx = i_ + ahead;
    return idx < toks_.size() ? toks_[idx] : toks_.back();
  }
  bool at_end() const { return peek().kind == TokKind::kEnd; }
  const Tok& consume() {
    const Tok& tok = toks_[i_];
    if (i_ + 1 < toks_.size()) ++i_;
    return tok;
  }
  bool eat_op(std::string_view op) {
    if (peek().is_op(op)) {
      consume();
      return true;
    }
    return false;
  }
  bool eat_kw(std::string_view kw) {
    if (peek().is_ident(kw)) {
      consume();
      return true;
    }
    return false;
  }
  std::size_t prev_end() const { return i_ > 0 ? toks_[i_ - 1].end : 0; }
  std::size_t prev_end_line() const {
    return i_ > 0 ? toks_[i_ - 1].end_line : 1;
  }
  // Kotlin expressions do not continue across a bare newline; binary
  // operators and call parens must start on the line their left operand
  // ended on.
  bool same_line() const { return peek().line == prev_end_line(); }

  void diagnose(const std::string& message) {
    diags_->push_back(std::string(path_) + ":" + std::to_string(peek().line) +
                      ": " + message);
  }

  static bool is_keyword(const Tok& tok) {
    return tok.kind == TokKind::kIdent && hard_keywords().count(tok.text) > 0;
  }

  bool can_start_expression(const Tok& tok) const {
    switch (tok.kind) {
      case TokKind::kInt:
      case TokKind::kFloat:
      case TokKind::kString:
      case TokKind::kChar:
        return true;
      case TokKind::kIdent:
        if (!is_keyword(tok)) return true;
        return tok.text == "true" || tok.text == "false" ||
               tok.text == "null" || tok.text == "if" || tok.text == "when" ||
               tok.text == "this" || tok.text == "super" ||
               tok.text == "object" || tok.text == "throw" ||
               tok.text == "return";
      case TokKind::kOp:
        return tok.text == "(" || tok.text == "{" || tok.text == "!" ||
               tok.text == "-" || tok.text == "+" || tok.text == "++" ||
               tok.text == "--" || tok.text == "@" || tok.text == "::";
      default:
        return false;
    }
  }

  NodePtr finish(NodeKind kind, std::size_t begin, std::size_t begin_line,
                 std::string aux, std::vector<NodePtr> children) {
    auto node =
        make_node(kind, Span{begin, prev_end(), begin_line}, std::move(aux));
    for (auto& child : children) {
      if (child) node->add_child(std::move(child));
    }
    return node;
  }

  // --- statements ---------------------------------------------------------

  std::vector<NodePtr> parse_statements(bool stop_at_rbrace) {
    std::vector<NodePtr> out;
    while (!at_end()) {
      if (stop_at_rbrace && peek().is_op("}")) break;
      if (eat_op(";")) continue;
      if (!stop_at_rbrace && peek().is_op("}")) {
        // Stray brace at file scope.
        const Tok& tok = consume();
        out.push_back(make_node(NodeKind::kOperatorToken, tok_span(tok),
                                std::string(tok.text)));
        diagnose("unmatched '}'");
        continue;
      }
      if (auto stmt = parse_statement()) out.push_back(std::move(stmt));
    }
    return out;
  }

  NodePtr parse_statement() {
    const Tok& t = peek();
    if (t.kind == TokKind::kIdent) {
      if (t.text == "fun") return parse_function();
      if (t.text == "for") return parse_for();
      if (t.text == "while") return parse_while();
      if (t.text == "do") return parse_do_while();
      if (t.text == "if") return parse_if();
      if (t.text == "when") return parse_when();
      if (t.text == "val" || t.text == "var") return parse_property();
      if (t.text == "return" || t.text == "throw") return parse_jump();
      if (t.text == "break" || t.text == "continue") {
        const Tok& tok = consume();
        return make_node(NodeKind::kOther, tok_span(tok),
                         std::string(tok.text));
      }
      if (t.text == "package" || t.text == "import") return parse_directive();
      if (t.text == "class" || t.text == "interface" || t.text == "object" ||
          t.text == "typealias" || t.text == "try" || t.text == "else" ||
          t.text == "catch" || t.text == "finally") {
        return parse_declaration_like();
      }
    }
    if (t.is_op("@")) return parse_annotation();
    return parse_expression_statement();
  }

  // `fun [<T>] [Receiver.]name(params)[: Type] body`
  NodePtr parse_function() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // fun
    if (peek().is_op("<")) skip_balanced_angles();
    std::string name;
    while (!at_end() && !peek().is_op("(")) {
      if (peek().is_op("{") || peek().is_op("}") || peek().is_op("=")) break;
      if (statement_boundary()) break;
      const Tok& tok = consume();
      if (tok.kind == TokKind::kIdent && !is_keyword(tok)) {
        name = std::string(tok.text);
      }
    }
    std::vector<NodePtr> children;
    if (peek().is_op("(")) skip_balanced("(", ")");
    if (eat_op(":")) skip_type_tokens(/*stop_at_arrow=*/false);
    if (peek().is_op("{") && !statement_boundary()) {
      children.push_back(parse_block());
    } else if (eat_op("=")) {
      if (auto body = parse_expression()) children.push_back(std::move(body));
    }
    return finish(NodeKind::kFunctionDecl, begin, begin_line, name,
                  std::move(children));
  }

  // `for (x in iterable) body`
  NodePtr parse_for() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // for
    std::vector<NodePtr> children;
    if (eat_op("(")) {
      int depth = 0;
      while (!at_end()) {
        const Tok& t = peek();
        if (depth == 0 && t.is_ident("in")) break;
        if (depth == 0 && t.is_op(")")) break;
        if (t.is_op("(")) ++depth;
        if (t.is_op(")")) --depth;
        consume();
      }
      if (eat_kw("in")) {
        if (auto iter = parse_expression()) {
          children.push_back(std::move(iter));
        }
      } else {
        diagnose("for statement without 'in'");
      }
      if (!eat_op(")")) diagnose("expected ')' after for header");
    } else {
      diagnose("expected '(' after 'for'");
    }
    children.push_back(parse_control_body());
    return finish(NodeKind::kForStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_while() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // while
    std::vector<NodePtr> children;
    if (eat_op("(")) {
      if (auto cond = parse_expression()) children.push_back(std::move(cond));
      if (!eat_op(")")) diagnose("expected ')' after while condition");
    } else {
      diagnose("expected '(' after 'while'");
    }
    if (eat_op(";")) {
      // `while (...) ;` — empty body.
    } else {
      children.push_back(parse_control_body());
    }
    return finish(NodeKind::kWhileStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_do_while() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // do
    std::vector<NodePtr> children;
    children.push_back(parse_control_body());
    if (eat_kw("while")) {
      if (eat_op("(")) {
        if (auto cond = parse_expression()) {
          children.push_back(std::move(cond));
        }
        if (!eat_op(")")) diagnose("expected ')' after do-while condition");
      } else {
        diagnose("expected '(' after 'while'");
      }
    } else {
      diagnose("'do' without matching 'while'");
    }
    return finish(NodeKind::kDoWhileStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_if() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // if
    std::vector<NodePtr> children;
    if (eat_op("(")) {
      if (auto cond = parse_expression()) children.push_back(std::move(cond));
      if (!eat_op(")")) diagnose("expected ')' after if condition");
    } else {
      diagnose("expected '(' after 'if'");
    }
    children.push_back(parse_control_body());
    if (peek().is_ident("else")) {
      consume();
      if (peek().is_ident("if")) {
        children.push_back(parse_if());
      } else {
        children.push_back(parse_control_body());
      }
    }
    return finish(NodeKind::kIfStmt, begin, begin_line, {},
                  std::move(children));
  }

  // `when [(subject)] { entry* }` where entry is `conds -> body`.
  NodePtr parse_when() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // when
    std::vector<NodePtr> children;
    if (eat_op("(")) {
      if (peek().is_ident("val") || peek().is_ident("var")) {
        children.push_back(parse_property());
      } else if (auto subject = parse_expression()) {
        children.push_back(std::move(subject));
      }
      if (!eat_op(")")) diagnose("expected ')' after when subject");
    }
    if (!eat_op("{")) {
      diagnose("expected '{' after 'when'");
      return finish(NodeKind::kWhenStmt, begin, begin_line, {},
                    std::move(children));
    }
    while (!at_end() && !peek().is_op("}")) {
      if (eat_op(";")) continue;
      children.push_back(parse_when_entry());
    }
    if (!eat_op("}")) diagnose("unterminated when block");
    return finish(NodeKind::kWhenStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_when_entry() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    std::vector<NodePtr> children;
    if (!eat_kw("else")) {
      while (!at_end()) {
        if (peek().is_ident("in") || (peek().is_op("!") &&
                                      peek(1).is_ident("in"))) {
          if (peek().is_op("!")) consume();
          consume();  // in
          if (auto e = parse_expression()) children.push_back(std::move(e));
        } else if (peek().is_ident("is") ||
                   (peek().is_op("!") && peek(1).is_ident("is"))) {
          if (peek().is_op("!")) consume();
          consume();  // is
          skip_type_tokens();
        } else if (auto e = parse_expression()) {
          children.push_back(std::move(e));
        } else {
          diagnose("unexpected token in when entry");
          consume();
        }
        if (!eat_op(",")) break;
      }
    }
    if (!eat_op("->")) {
      diagnose("expected '->' in when entry");
      // Resync: drop tokens up to the arrow, entry end, or block end.
      while (!at_end() && !peek().is_op("->") && !peek().is_op("}") &&
             !peek().is_op(";")) {
        consume();
      }
      eat_op("->");
    }
    if (peek().is_op("{")) {
      children.push_back(parse_block());
    } else if (auto body = parse_statement()) {
      children.push_back(std::move(body));
    }
    return finish(NodeKind::kOther, begin, begin_line, "when_entry",
                  std::move(children));
  }

  // `val/var name[: Type] [= init]`, including destructuring and delegates.
  NodePtr parse_property() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // val | var
    std::vector<NodePtr> children;
    if (peek().is_op("(")) {
      skip_balanced("(", ")");
    } else if (peek().kind == TokKind::kIdent && !is_keyword(peek())) {
      consume();
    }
    if (eat_op(":")) skip_type_tokens(/*stop_at_arrow=*/false);
    if (eat_op("=") || eat_kw("by")) {
      if (auto init = parse_expression()) children.push_back(std::move(init));
    }
    return finish(NodeKind::kOther, begin, begin_line, "property",
                  std::move(children));
  }

  NodePtr parse_jump() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    const Tok& kw = consume();  // return | throw
    std::vector<NodePtr> children;
    if (peek().is_op("@")) {
      consume();
      if (peek().kind == TokKind::kIdent) consume();
    }
    if (same_line() && can_start_expression(peek())) {
      if (auto value = parse_expression()) {
        children.push_back(std::move(value));
      }
    }
    return finish(NodeKind::kOther, begin, begin_line, std::string(kw.text),
                  std::move(children));
  }

  NodePtr parse_directive() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    const Tok& kw = consume();  // package | import
    while (!at_end() && same_line() && !peek().is_op(";")) consume();
    return finish(NodeKind::kOther, begin, begin_line, std::string(kw.text),
                  {});
  }

  // class / interface / object / typealias / try and friends: consume the
  // header, then parse any brace body so nested declarations stay visible.
  NodePtr parse_declaration_like() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    const Tok& kw = consume();
    std::vector<NodePtr> children;
    int depth = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (depth == 0 && t.is_op("{")) {
        children.push_back(parse_block());
        break;
      }
      if (depth == 0 && (t.is_op("}") || t.is_op(";"))) break;
      if (depth == 0 && statement_boundary()) break;
      if (t.is_op("(") || t.is_op("[")) ++depth;
      if (t.is_op(")") || t.is_op("]")) depth = depth > 0 ? depth - 1 : 0;
      consume();
    }
    return finish(NodeKind::kOther, begin, begin_line, std::string(kw.text),
                  std::move(children));
  }

  NodePtr parse_annotation() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // @
    // Use-site targets (`@file:JvmName`) and dotted names; never a keyword,
    // so a label before `for`/`while` leaves the construct intact.
    if (peek().kind == TokKind::kIdent && !is_keyword(peek())) {
      consume();
      if (eat_op(":")) {
        if (peek().kind == TokKind::kIdent && !is_keyword(peek())) consume();
      }
      while (eat_op(".")) {
        if (peek().kind == TokKind::kIdent && !is_keyword(peek())) consume();
      }
      if (peek().is_op("(") && same_line()) skip_balanced("(", ")");
    }
    return finish(NodeKind::kOther, begin, begin_line, "annotation", {});
  }

  NodePtr parse_expression_statement() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto expr = parse_expression();
    if (!expr) {
      const Tok& tok = consume();
      diagnose("unexpected token '" + std::string(tok.text) + "'");
      return make_node(tok.kind == TokKind::kOp ? NodeKind::kOperatorToken
                                                : NodeKind::kOther,
                       tok_span(tok), std::string(tok.text));
    }
    static constexpr std::array<std::string_view, 6> kAssign = {
        "=", "+=", "-=", "*=", "/=", "%="};
    for (std::string_view op : kAssign) {
      if (peek().is_op(op) && same_line()) {
        consume();
        std::vector<NodePtr> children;
        children.push_back(std::move(expr));
        if (auto rhs = parse_expression()) children.push_back(std::move(rhs));
        return finish(NodeKind::kOther, begin, begin_line, "assignment",
                      std::move(children));
      }
    }
    return expr;
  }

  // True when the next token begins a fresh line and cannot be a
  // continuation of the current construct.
  bool statement_boundary() const {
    if (at_end()) return true;
    if (same_line()) return false;
    const Tok& t = peek();
    if (t.is_op(".") || t.is_op("?.") || t.is_op("?:") || t.is_op("&&") ||
        t.is_op("||")) {
      return false;
    }
    if (i_ == 0) return false;
    const Tok& prev = toks_[i_ - 1];
    // A line ending in an opener or separator continues.
    if (prev.is_op(",") || prev.is_op("(") || prev.is_op("[") ||
        prev.is_op("=") || prev.is_op(":") || prev.is_op("->") ||
        prev.is_op("&&") || prev.is_op("||") || prev.is_op("+") ||
        prev.is_op("-") || prev.is_op("*") || prev.is_op("/") ||
        prev.is_op("..") || prev.is_op("?:") || prev.is_op("<")) {
      return false;
    }
    return true;
  }

  NodePtr parse_block() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // {
    std::vector<NodePtr> children = parse_statements(/*stop_at_rbrace=*/true);
    if (!eat_op("}")) diagnose("unterminated block");
    return finish(NodeKind::kBlock, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_control_body() {
    if (peek().is_op("{")) return parse_block();
    if (at_end() || peek().is_op("}") || peek().is_op(")")) {
      auto span = Span{prev_end(), prev_end(), prev_end_line()};
      return make_node(NodeKind::kBlock, span);
    }
    return parse_statement();
  }

  // --- expressions, loosest to tightest binding ---------------------------

  NodePtr parse_expression() { return parse_disjunction(); }

  NodePtr binary_loop(NodePtr lhs, std::string_view op,
                      NodePtr (KotlinParser::*next)(), std::size_t begin,
                      std::size_t begin_line) {
    while (lhs && peek().is_op(op) && same_line()) {
      consume();
      auto rhs = (this->*next)();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, std::string(op),
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_disjunction() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_loop(parse_conjunction(), "||",
                       &KotlinParser::parse_conjunction, begin, begin_line);
  }

  NodePtr parse_conjunction() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_loop(parse_equality(), "&&", &KotlinParser::parse_equality,
                       begin, begin_line);
  }

  NodePtr parse_equality() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_comparison();
    while (lhs && same_line() &&
           (peek().is_op("==") || peek().is_op("!=") || peek().is_op("===") ||
            peek().is_op("!=="))) {
      std::string op(consume().text);
      auto rhs = parse_comparison();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, op,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_comparison() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_containment();
    while (lhs && same_line() &&
           (peek().is_op("<") || peek().is_op("<=") || peek().is_op(">") ||
            peek().is_op(">="))) {
      std::string op(consume().text);
      auto rhs = parse_containment();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, op,
                   std::move(children));
    }
    return lhs;
  }

  // `in`, `!in`, `is`, `!is`.
  NodePtr parse_containment() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_elvis();
    while (lhs && same_line()) {
      bool negated = peek().is_op("!") &&
                     (peek(1).is_ident("in") || peek(1).is_ident("is"));
      const Tok& op_tok = negated ? peek(1) : peek();
      if (op_tok.is_ident("in")) {
        if (negated) consume();
        consume();
        auto rhs = parse_elvis();
        std::vector<NodePtr> children;
        children.push_back(std::move(lhs));
        if (rhs) children.push_back(std::move(rhs));
        lhs = finish(NodeKind::kBinaryExpr, begin, begin_line,
                     negated ? "!in" : "in", std::move(children));
      } else if (op_tok.is_ident("is")) {
        if (negated) consume();
        consume();
        skip_type_tokens();
        std::vector<NodePtr> children;
        children.push_back(std::move(lhs));
        lhs = finish(NodeKind::kBinaryExpr, begin, begin_line,
                     negated ? "!is" : "is", std::move(children));
      } else {
        break;
      }
    }
    return lhs;
  }

  NodePtr parse_elvis() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_loop(parse_infix_call(), "?:",
                       &KotlinParser::parse_infix_call, begin, begin_line);
  }

  // `a until b`, `a downTo b`, `a step b`... — any identifier used infix.
  NodePtr parse_infix_call() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_range();
    while (lhs && peek().kind == TokKind::kIdent && !is_keyword(peek()) &&
           same_line() && can_start_expression(peek(1))) {
      std::string name(consume().text);
      auto rhs = parse_range();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kInfixCall, begin, begin_line, name,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_range() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_additive();
    while (lhs && same_line() && (peek().is_op("..") || peek().is_op("..<"))) {
      std::string op(consume().text);
      auto rhs = parse_additive();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, op,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_additive() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_multiplicative();
    while (lhs && same_line() && (peek().is_op("+") || peek().is_op("-"))) {
      std::string op(consume().text);
      auto rhs = parse_multiplicative();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, op,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_multiplicative() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr lhs = parse_unary();
    while (lhs && same_line() &&
           (peek().is_op("*") || peek().is_op("/") || peek().is_op("%"))) {
      std::string op(consume().text);
      auto rhs = parse_unary();
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, op,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_unary() {
    const Tok& t = peek();
    if (t.is_op("!") || t.is_op("-") || t.is_op("+") || t.is_op("++") ||
        t.is_op("--")) {
      // `!in` / `!is` belong to the containment level.
      if (t.is_op("!") && (peek(1).is_ident("in") || peek(1).is_ident("is"))) {
        return parse_postfix();
      }
      std::size_t begin = t.begin;
      std::size_t begin_line = t.line;
      std::string op(consume().text);
      auto operand = parse_unary();
      if (!operand) return nullptr;
      std::vector<NodePtr> children;
      children.push_back(std::move(operand));
      return finish(NodeKind::kUnaryExpr, begin, begin_line, op,
                    std::move(children));
    }
    return parse_postfix();
  }

  static bool callable_kind(NodeKind kind) {
    return kind == NodeKind::kIdentifier || kind == NodeKind::kCallExpr ||
           kind == NodeKind::kMemberCall || kind == NodeKind::kParenExpr ||
           kind == NodeKind::kOther;
  }

  NodePtr parse_postfix() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    NodePtr node = parse_primary();
    while (node && !at_end()) {
      const Tok& t = peek();
      if ((t.is_op(".") || t.is_op("?.")) &&
          peek(1).kind == TokKind::kIdent && !is_keyword(peek(1))) {
        consume();
        std::string member(consume().text);
        if (peek().is_op("(") && same_line()) {
          auto args = parse_call_arguments();
          std::vector<NodePtr> children;
          children.push_back(std::move(node));
          for (auto& a : args) children.push_back(std::move(a));
          if (peek().is_op("{") && same_line()) {
            children.push_back(parse_lambda());
          }
          node = finish(NodeKind::kMemberCall, begin, begin_line, member,
                        std::move(children));
        } else if (peek().is_op("{") && same_line()) {
          std::vector<NodePtr> children;
          children.push_back(std::move(node));
          children.push_back(parse_lambda());
          node = finish(NodeKind::kMemberCall, begin, begin_line, member,
                        std::move(children));
        } else {
          std::vector<NodePtr> children;
          children.push_back(std::move(node));
          node = finish(NodeKind::kOther, begin, begin_line, member,
                        std::move(children));
        }
      } else if (t.is_op("(") && same_line() && callable_kind(node->kind())) {
        auto args = parse_call_arguments();
        std::string callee =
            node->kind() == NodeKind::kIdentifier ? node->aux() : "";
        std::vector<NodePtr> children;
        if (node->kind() != NodeKind::kIdentifier) {
          children.push_back(std::move(node));
        }
        for (auto& a : args) children.push_back(std::move(a));
        if (peek().is_op("{") && same_line()) {
          children.push_back(parse_lambda());
        }
        node = finish(NodeKind::kCallExpr, begin, begin_line, callee,
                      std::move(children));
      } else if (t.is_op("{") && same_line() &&
                 node->kind() == NodeKind::kIdentifier) {
        // Trailing lambda without parens: `run { ... }`.
        std::string callee = node->aux();
        std::vector<NodePtr> children;
        children.push_back(parse_lambda());
        node = finish(NodeKind::kCallExpr, begin, begin_line, callee,
                      std::move(children));
      } else if (t.is_op("[") && same_line()) {
        std::vector<NodePtr> children;
        children.push_back(std::move(node));
        consume();
        while (!at_end() && !peek().is_op("]")) {
          if (eat_op(",")) continue;
          if (auto idx = parse_expression()) {
            children.push_back(std::move(idx));
          } else {
            consume();
          }
        }
        if (!eat_op("]")) diagnose("unterminated index expression");
        node = finish(NodeKind::kOther, begin, begin_line, "index",
                      std::move(children));
      } else if (t.is_op("!!") || (t.is_op("++") && same_line()) ||
                 (t.is_op("--") && same_line())) {
        std::string op(consume().text);
        std::vector<NodePtr> children;
        children.push_back(std::move(node));
        node = finish(NodeKind::kOther, begin, begin_line, op,
                      std::move(children));
      } else if (t.is_op("::")) {
        consume();
        if (peek().kind == TokKind::kIdent) consume();
        std::vector<NodePtr> children;
        children.push_back(std::move(node));
        node = finish(NodeKind::kOther, begin, begin_line, "callable_ref",
                      std::move(children));
      } else if (t.is_ident("as")) {
        consume();
        eat_op("?");
        skip_type_tokens();
        std::vector<NodePtr> children;
        children.push_back(std::move(node));
        node = finish(NodeKind::kOther, begin, begin_line, "as",
                      std::move(children));
      } else {
        break;
      }
    }
    return node;
  }

  NodePtr parse_primary() {
    const Tok& t = peek();
    switch (t.kind) {
      case TokKind::kInt: {
        const Tok& tok = consume();
        return make_node(NodeKind::kIntLiteral, tok_span(tok),
                         std::string(tok.text));
      }
      case TokKind::kFloat: {
        const Tok& tok = consume();
        return make_node(NodeKind::kOther, tok_span(tok),
                         std::string(tok.text));
      }
      case TokKind::kString: {
        const Tok& tok = consume();
        return make_node(NodeKind::kStringLiteral, tok_span(tok));
      }
      case TokKind::kChar: {
        const Tok& tok = consume();
        return make_node(NodeKind::kOther, tok_span(tok),
                         std::string(tok.text));
      }
      case TokKind::kIdent:
        if (t.text == "true" || t.text == "false") {
          const Tok& tok = consume();
          return make_node(NodeKind::kBoolLiteral, tok_span(tok),
                           std::string(tok.text));
        }
        if (t.text == "null") {
          const Tok& tok = consume();
          return make_node(NodeKind::kOther, tok_span(tok), "null");
        }
        if (t.text == "this" || t.text == "super") {
          const Tok& tok = consume();
          return make_node(NodeKind::kIdentifier, tok_span(tok),
                           std::string(tok.text));
        }
        if (t.text == "if") return parse_if();
        if (t.text == "when") return parse_when();
        if (t.text == "object") return parse_declaration_like();
        if (t.text == "throw" || t.text == "return") return parse_jump();
        if (is_keyword(t)) return nullptr;
        {
          const Tok& tok = consume();
          return make_node(NodeKind::kIdentifier, tok_span(tok),
                           std::string(tok.text));
        }
      case TokKind::kOp:
        if (t.text == "(") {
          std::size_t begin = t.begin;
          std::size_t begin_line = t.line;
          consume();
          std::vector<NodePtr> children;
          if (auto inner = parse_expression()) {
            children.push_back(std::move(inner));
          }
          if (!eat_op(")")) diagnose("expected ')'");
          return finish(NodeKind::kParenExpr, begin, begin_line, {},
                        std::move(children));
        }
        if (t.text == "{") return parse_lambda();
        if (t.text == "@") {
          parse_annotation();
          return parse_primary();
        }
        if (t.text == "::") {
          std::size_t begin = t.begin;
          std::size_t begin_line = t.line;
          consume();
          if (peek().kind == TokKind::kIdent) consume();
          return finish(NodeKind::kOther, begin, begin_line, "callable_ref",
                        {});
        }
        return nullptr;
      default:
        return nullptr;
    }
  }

  // `{ [params ->] statements }`
  NodePtr parse_lambda() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // {
    // Detect a parameter list: a short run of benign tokens then '->'.
    std::size_t save = i_;
    bool has_params = false;
    int depth = 0;
    for (std::size_t steps = 0; steps < 64 && !at_end(); ++steps) {
      const Tok& t = peek();
      if (depth == 0 && t.is_op("->")) {
        has_params = true;
        consume();
        break;
      }
      bool benign =
          (t.kind == TokKind::kIdent && !is_keyword(t)) || t.is_op(",") ||
          t.is_op(":") || t.is_op("(") || t.is_op(")") || t.is_op("<") ||
          t.is_op(">") || t.is_op(".") || t.is_op("?") || t.is_op("[") ||
          t.is_op("]");
      if (!benign) break;
      if (t.is_op("(")) ++depth;
      if (t.is_op(")")) --depth;
      consume();
    }
    if (!has_params) i_ = save;
    std::vector<NodePtr> children = parse_statements(/*stop_at_rbrace=*/true);
    if (!eat_op("}")) diagnose("unterminated lambda");
    return finish(NodeKind::kLambda, begin, begin_line, {},
                  std::move(children));
  }

  std::vector<NodePtr> parse_call_arguments() {
    std::vector<NodePtr> args;
    consume();  // (
    while (!at_end() && !peek().is_op(")")) {
      if (eat_op(",")) continue;
      if (peek().kind == TokKind::kIdent && peek(1).is_op("=") &&
          !is_keyword(peek())) {
        consume();  // named argument
        consume();  // =
      }
      eat_op("*");  // spread
      if (auto arg = parse_expression()) {
        args.push_back(std::move(arg));
      } else {
        diagnose("unexpected token in argument list");
        consume();
      }
    }
    if (!eat_op(")")) diagnose("unterminated argument list");
    return args;
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (t.is_op(open) || t.is_op("(") || t.is_op("[") || t.is_op("{")) {
        ++depth;
      } else if (t.is_op(close) || t.is_op(")") || t.is_op("]") ||
                 t.is_op("}")) {
        --depth;
        if (depth <= 0) {
          consume();
          return;
        }
      }
      consume();
    }
  }

  void skip_balanced_angles() {
    int depth = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (t.is_op("<")) ++depth;
      if (t.is_op(">")) {
        --depth;
        if (depth <= 0) {
          consume();
          return;
        }
      }
      if (t.is_op("{") || t.is_op("}")) return;  // bail on malformed input
      consume();
    }
  }

  // Consumes type tokens after ':' / 'is' / 'as' up to a construct boundary.
  // `stop_at_arrow` distinguishes when-entry types (`is String ->`) from
  // function types (`(Int) -> Int`), where the arrow is part of the type.
  void skip_type_tokens(bool stop_at_arrow = true) {
    int angle = 0;
    int paren = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (angle == 0 && paren == 0) {
        if (t.is_op("{") || t.is_op("}") || t.is_op("=") || t.is_op(",") ||
            t.is_op(";") || t.is_op(")") || t.is_op("]") || t.is_op("&&") ||
            t.is_op("||")) {
          return;
        }
        if (t.is_op("->")) {
          if (stop_at_arrow) return;
          consume();
          continue;
        }
        if (t.kind == TokKind::kIdent &&
            (is_keyword(t) || t.is_ident("by"))) {
          return;
        }
        if (statement_boundary()) return;
        if (t.kind != TokKind::kIdent && !t.is_op("<") && !t.is_op(">") &&
            !t.is_op(".") && !t.is_op("?") && !t.is_op("*") && !t.is_op("(")) {
          return;
        }
      }
      if (t.is_op("<")) ++angle;
      if (t.is_op(">")) --angle;
      if (t.is_op("(")) ++paren;
      if (t.is_op(")")) --paren;
      consume();
    }
  }

  std::vector<Tok> toks_;
  std::string_view src_;
  std::string_view path_;
  std::vector<std::string>* diags_;
  std::size_t i_ = 0;
};

}  // namespace

ParsedFile parse_kotlin(std::string_view source, std::string path) {
  ParsedFile file;
  file.path = std::move(path);
  file.language = cst::SourceLanguage::kKotlin;
  file.source_text = std::string(source);

  KotlinLexer lexer(file.source_text, file.path, &file.diagnostics);
  lexer.run();
  auto comments = lexer.take_comments();

  KotlinParser parser(lexer.take_tokens(), file.source_text, file.path,
                      &file.diagnostics);
  auto root = parser.parse_file();
  detail::attach_comments(root.get(), comments);
  root->relink_parents();
  file.root = std::move(root);
  return file;
}

}  // namespace constat::frontend
