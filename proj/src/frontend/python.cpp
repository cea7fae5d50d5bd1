// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/frontend/python.hpp"

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

const std::unordered_set<std::string_view>& python_keywords() {
  static const std::unordered_set<std::string_view> kw = {
      "False",  "None",     "True",  "and",    "as",     "assert", "async",
      "await",  "break",    "class", "continue", "def",  "del",    "elif",
      "else",   "except",   "finally", "for",  "from",   "global", "if",
      "import", "in",       "is",    "lambda", "nonlocal", "not",  "or",
      "pass",   "raise",    "return", "try",   "while",  "with",   "yield",
  };
  return kw;
}

// ---------------------------------------------------------------------------
// Lexer: emits kNewline at logical line ends and kIndent/kDedent pairs from
// leading whitespace, with implicit joining inside brackets.
// ---------------------------------------------------------------------------

class PythonLexer {
 public:
  PythonLexer(std::string_view src, std::string_view path,
              std::vector<std::string>* diags)
      : src_(src), path_(path), diags_(diags) {}

  void run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) {
      if (at_line_start_ && bracket_depth_ == 0) {
        handle_line_start();
        continue;
      }
      char c = src_[pos_];
      if (c == '\n') {
        handle_newline();
      } else if (c == '\\' && peek(1) == '\n') {
        pos_ += 2;
        ++line_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (c == '#') {
        lex_comment();
      } else if (c == '\'' || c == '"') {
        lex_string(pos_);
      } else if (is_string_prefix_at(pos_)) {
        lex_prefixed_string();
      } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        lex_number();
      } else if (is_ident_start(c)) {
        lex_ident();
      } else {
        lex_operator();
      }
    }
    if (!at_line_start_ && emitted_token_on_line_) emit_marker(TokKind::kNewline);
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit_marker(TokKind::kDedent);
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
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

  void diagnose(std::size_t at_line, const std::string& message) {
    diags_->push_back(std::string(path_) + ":" + std::to_string(at_line) +
                      ": " + message);
  }

  void push(TokKind kind, std::size_t begin, std::size_t begin_line) {
    Tok tok;
    tok.kind = kind;
    tok.begin = begin;
    tok.end = pos_;
    tok.line = begin_line;
    tok.end_line = line_;
    tok.text = src_.substr(begin, pos_ - begin);
    tokens_.push_back(tok);
    emitted_token_on_line_ = true;
  }

  void emit_marker(TokKind kind) {
    Tok tok;
    tok.kind = kind;
    tok.begin = tok.end = pos_;
    tok.line = tok.end_line = line_;
    tokens_.push_back(tok);
  }

  void handle_newline() {
    ++pos_;
    ++line_;
    if (bracket_depth_ == 0) {
      if (emitted_token_on_line_) emit_marker(TokKind::kNewline);
      at_line_start_ = true;
      emitted_token_on_line_ = false;
    }
  }

  void handle_line_start() {
    std::size_t indent = 0;
    std::size_t scan = pos_;
    while (scan < src_.size()) {
      char c = src_[scan];
      if (c == ' ') {
        ++indent;
      } else if (c == '\t') {
        indent = (indent / 8 + 1) * 8;
      } else if (c == '\f' || c == '\r') {
        // ignored
      } else {
        break;
      }
      ++scan;
    }
    if (scan >= src_.size()) {
      pos_ = scan;
      return;
    }
    char c = src_[scan];
    if (c == '\n') {
      // Blank line: no tokens, no indent change.
      pos_ = scan + 1;
      ++line_;
      return;
    }
    if (c == '#') {
      pos_ = scan;
      lex_comment();
      if (pos_ < src_.size() && src_[pos_] == '\n') {
        ++pos_;
        ++line_;
      }
      return;
    }
    pos_ = scan;
    at_line_start_ = false;
    emitted_token_on_line_ = false;
    if (indent > indents_.back()) {
      indents_.push_back(indent);
      emit_marker(TokKind::kIndent);
    } else {
      while (indent < indents_.back()) {
        indents_.pop_back();
        emit_marker(TokKind::kDedent);
      }
      if (indent != indents_.back()) {
        diagnose(line_, "inconsistent dedent");
        indents_.push_back(indent);
      }
    }
  }

  void lex_comment() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
    comments_.push_back(Span{begin, pos_, begin_line});
  }

  bool is_string_prefix_at(std::size_t at) const {
    // r, b, f, u and two-letter combinations, followed by a quote.
    std::size_t scan = at;
    int letters = 0;
    while (scan < src_.size() && letters < 2) {
      char c = src_[scan];
      if (c == 'r' || c == 'R' || c == 'b' || c == 'B' || c == 'f' ||
          c == 'F' || c == 'u' || c == 'U') {
        ++letters;
        ++scan;
      } else {
        break;
      }
    }
    return letters > 0 && scan < src_.size() &&
           (src_[scan] == '"' || src_[scan] == '\'');
  }

  void lex_prefixed_string() {
    std::size_t begin = pos_;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\'') {
      ++pos_;
    }
    lex_string(begin);
  }

  // `begin` is the token start (prefix included); pos_ sits on the quote.
  void lex_string(std::size_t begin) {
    std::size_t begin_line = line_;
    char quote = src_[pos_];
    bool triple = peek(1) == quote && peek(2) == quote;
    if (triple) {
      pos_ += 3;
      while (pos_ < src_.size()) {
        if (src_[pos_] == '\\') {
          if (peek(1) == '\n') ++line_;
          pos_ += 2;
          continue;
        }
        if (src_[pos_] == quote && peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          push(TokKind::kString, begin, begin_line);
          return;
        }
        if (src_[pos_] == '\n') ++line_;
        ++pos_;
      }
      diagnose(begin_line, "unterminated triple-quoted string");
      push(TokKind::kString, begin, begin_line);
      return;
    }
    ++pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        if (peek(1) == '\n') ++line_;
        pos_ += 2;
      } else if (c == quote) {
        ++pos_;
        push(TokKind::kString, begin, begin_line);
        return;
      } else if (c == '\n') {
        diagnose(begin_line, "unterminated string literal");
        push(TokKind::kString, begin, begin_line);
        return;
      } else {
        ++pos_;
      }
    }
    diagnose(begin_line, "unterminated string literal");
    push(TokKind::kString, begin, begin_line);
  }

  void lex_number() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    bool is_float = false;
    if (src_[pos_] == '0' &&
        (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' ||
         peek(1) == 'O' || peek(1) == 'b' || peek(1) == 'B')) {
      pos_ += 2;
      while (pos_ < src_.size() &&
             (is_ident_char(src_[pos_]) || src_[pos_] == '_')) {
        ++pos_;
      }
    } else {
      if (src_[pos_] == '.') {
        is_float = true;
        ++pos_;
      }
      while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) {
        ++pos_;
      }
      if (!is_float && pos_ < src_.size() && src_[pos_] == '.' &&
          !(peek(1) == '.')) {
        // `1.` and `1.5` are floats; `1..` never occurs in Python but the
        // guard keeps the lexer total.
        if (is_digit(peek(1)) || !is_ident_start(peek(1))) {
          is_float = true;
          ++pos_;
          while (pos_ < src_.size() &&
                 (is_digit(src_[pos_]) || src_[pos_] == '_')) {
            ++pos_;
          }
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E') &&
          (is_digit(peek(1)) ||
           ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
        is_float = true;
        pos_ += 2;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) {
        is_float = true;
        ++pos_;
      }
    }
    push(is_float ? TokKind::kFloat : TokKind::kInt, begin, begin_line);
  }

  void lex_ident() {
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    push(TokKind::kIdent, begin, begin_line);
  }

  void lex_operator() {
    static constexpr std::array<std::string_view, 24> kMulti = {
        "**=", "//=", "<<=", ">>=", "...", "->", ":=", "**",
        "//",  "<<",  ">>",  "<=",  ">=",  "==", "!=", "+=",
        "-=",  "*=",  "/=",  "%=",  "&=",  "|=", "^=", "@=",
    };
    std::size_t begin = pos_;
    std::size_t begin_line = line_;
    char c = src_[pos_];
    if (c == '(' || c == '[' || c == '{') ++bracket_depth_;
    if ((c == ')' || c == ']' || c == '}') && bracket_depth_ > 0) {
      --bracket_depth_;
    }
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
  bool at_line_start_ = true;
  bool emitted_token_on_line_ = false;
  int bracket_depth_ = 0;
  std::vector<std::size_t> indents_;
  std::vector<Tok> tokens_;
  std::vector<Span> comments_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class PythonParser {
 public:
  PythonParser(std::vector<Tok> tokens, std::string_view src,
               std::string_view path, std::vector<std::string>* diags)
      : toks_(std::move(tokens)), src_(src), path_(path), diags_(diags) {}

  NodePtr parse_file() {
    auto root = make_node(NodeKind::kFile, Span{0, src_.size(), 1});
    while (!at_end()) {
      if (peek().kind == TokKind::kNewline || peek().kind == TokKind::kIndent ||
          peek().kind == TokKind::kDedent) {
        consume();
        continue;
      }
      for (auto& stmt : parse_statement()) {
        if (stmt) root->add_child(std::move(stmt));
      }
    }
    return root;
  }

 private:
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
  bool eat_marker(TokKind kind) {
    if (peek().kind == kind) {
      consume();
      return true;
    }
    return false;
  }
  std::size_t prev_end() const { return i_ > 0 ? toks_[i_ - 1].end : 0; }

  void diagnose(const std::string& message) {
    diags_->push_back(std::string(path_) + ":" + std::to_string(peek().line) +
                      ": " + message);
  }

  static bool is_keyword(const Tok& tok) {
    return tok.kind == TokKind::kIdent && python_keywords().count(tok.text) > 0;
  }

  bool at_line_end() const {
    TokKind k = peek().kind;
    return k == TokKind::kNewline || k == TokKind::kDedent ||
           k == TokKind::kEnd;
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

  // A statement parse returns one node per `;`-separated piece.
  std::vector<NodePtr> parse_statement() {
    const Tok& t = peek();
    std::vector<NodePtr> out;
    if (t.kind == TokKind::kIdent) {
      if (t.text == "while") {
        out.push_back(parse_while());
        return out;
      }
      if (t.text == "if") {
        out.push_back(parse_if());
        return out;
      }
      if (t.text == "for") {
        out.push_back(parse_for());
        return out;
      }
      if (t.text == "def") {
        out.push_back(parse_def());
        return out;
      }
      if (t.text == "async") {
        if (peek(1).is_ident("def")) {
          consume();
          out.push_back(parse_def());
          return out;
        }
        if (peek(1).is_ident("for")) {
          consume();
          out.push_back(parse_for());
          return out;
        }
        if (peek(1).is_ident("with")) {
          consume();
          out.push_back(parse_other_compound());
          return out;
        }
      }
      if (t.text == "class" || t.text == "try" || t.text == "with" ||
          t.text == "except" || t.text == "finally" || t.text == "else" ||
          t.text == "elif") {
        out.push_back(parse_other_compound());
        return out;
      }
    }
    if (t.is_op("@")) {
      out.push_back(parse_decorator());
      return out;
    }
    return parse_simple_line();
  }

  NodePtr parse_while() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // while
    std::vector<NodePtr> children;
    if (auto cond = parse_testlist(/*allow_in=*/true)) {
      children.push_back(std::move(cond));
    } else {
      diagnose("missing while condition");
    }
    children.push_back(parse_suite());
    if (peek().is_ident("else")) {
      consume();
      children.push_back(parse_suite());
    }
    return finish(NodeKind::kWhileStmt, begin, begin_line, {},
                  std::move(children));
  }

  // elif chains nest: `elif` starts a child kIfStmt spanning the rest.
  NodePtr parse_if() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // if | elif
    std::vector<NodePtr> children;
    if (auto cond = parse_testlist(/*allow_in=*/true)) {
      children.push_back(std::move(cond));
    } else {
      diagnose("missing if condition");
    }
    children.push_back(parse_suite());
    if (peek().is_ident("elif")) {
      children.push_back(parse_if());
    } else if (peek().is_ident("else")) {
      consume();
      children.push_back(parse_suite());
    }
    return finish(NodeKind::kIfStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_for() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // for
    std::vector<NodePtr> children;
    if (auto target = parse_testlist(/*allow_in=*/false)) {
      children.push_back(std::move(target));
    }
    if (eat_kw("in")) {
      if (auto iter = parse_testlist(/*allow_in=*/true)) {
        children.push_back(std::move(iter));
      }
    } else {
      diagnose("for statement without 'in'");
    }
    children.push_back(parse_suite());
    if (peek().is_ident("else")) {
      consume();
      children.push_back(parse_suite());
    }
    return finish(NodeKind::kForStmt, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_def() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // def
    std::string name;
    if (peek().kind == TokKind::kIdent && !is_keyword(peek())) {
      name = std::string(consume().text);
    }
    if (peek().is_op("(")) skip_balanced_parens();
    if (eat_op("->")) {
      while (!at_end() && !peek().is_op(":") && !at_line_end()) consume();
    }
    std::vector<NodePtr> children;
    children.push_back(parse_suite());
    return finish(NodeKind::kFunctionDecl, begin, begin_line, name,
                  std::move(children));
  }

  // class / try / with / stray clauses: the header is consumed without
  // building expression nodes, but the suite is parsed normally so nested
  // constructs stay visible.
  NodePtr parse_other_compound() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    const Tok& kw = consume();
    while (!at_end() && !peek().is_op(":") && !at_line_end()) consume();
    std::vector<NodePtr> children;
    if (peek().is_op(":")) {
      children.push_back(parse_suite());
    } else {
      diagnose("expected ':' after '" + std::string(kw.text) + "' header");
      eat_marker(TokKind::kNewline);
    }
    return finish(NodeKind::kOther, begin, begin_line, std::string(kw.text),
                  std::move(children));
  }

  NodePtr parse_decorator() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // @
    while (!at_end() && !at_line_end()) consume();
    eat_marker(TokKind::kNewline);
    return finish(NodeKind::kOther, begin, begin_line, "decorator", {});
  }

  // One logical line of `;`-separated simple statements.
  std::vector<NodePtr> parse_simple_line() {
    std::vector<NodePtr> out;
    while (!at_end() && !at_line_end()) {
      out.push_back(parse_simple_statement());
      if (!eat_op(";")) break;
    }
    eat_marker(TokKind::kNewline);
    return out;
  }

  NodePtr parse_simple_statement() {
    const Tok& t = peek();
    std::size_t begin = t.begin;
    std::size_t begin_line = t.line;
    if (t.kind == TokKind::kIdent) {
      if (t.text == "pass" || t.text == "break" || t.text == "continue") {
        const Tok& tok = consume();
        return make_node(NodeKind::kOther, tok_span(tok),
                         std::string(tok.text));
      }
      if (t.text == "return" || t.text == "raise" || t.text == "del" ||
          t.text == "assert" || t.text == "yield" || t.text == "await") {
        consume();
        std::vector<NodePtr> children;
        if (!at_line_end() && !peek().is_op(";")) {
          if (auto value = parse_testlist(/*allow_in=*/true)) {
            children.push_back(std::move(value));
          }
        }
        return finish(NodeKind::kOther, begin, begin_line,
                      std::string(t.text), std::move(children));
      }
      if (t.text == "import" || t.text == "from" || t.text == "global" ||
          t.text == "nonlocal") {
        consume();
        while (!at_end() && !at_line_end() && !peek().is_op(";")) consume();
        return finish(NodeKind::kOther, begin, begin_line,
                      std::string(t.text), {});
      }
    }
    // Expression statement, possibly an assignment or annotation.
    auto expr = parse_testlist(/*allow_in=*/true);
    if (!expr) {
      const Tok& tok = consume();
      diagnose("unexpected token '" + std::string(tok.text) + "'");
      return make_node(tok.kind == TokKind::kOp ? NodeKind::kOperatorToken
                                                : NodeKind::kOther,
                       tok_span(tok), std::string(tok.text));
    }
    bool wrapped = false;
    std::vector<NodePtr> children;
    children.push_back(std::move(expr));
    if (eat_op(":")) {
      // Annotated target: `x: int [= value]`.
      wrapped = true;
      while (!at_end() && !at_line_end() && !peek().is_op("=") &&
             !peek().is_op(";")) {
        consume();
      }
    }
    static constexpr std::array<std::string_view, 14> kAssign = {
        "=",  "+=", "-=", "*=", "/=",  "//=", "%=",
        "**=", "&=", "|=", "^=", ">>=", "<<=", "@=",
    };
    while (true) {
      bool matched = false;
      for (std::string_view op : kAssign) {
        if (peek().is_op(op)) {
          consume();
          wrapped = true;
          if (auto rhs = parse_testlist(/*allow_in=*/true)) {
            children.push_back(std::move(rhs));
          }
          matched = op == "=";  // only plain `=` chains
          break;
        }
      }
      if (!matched) break;
    }
    if (!wrapped) return std::move(children.front());
    return finish(NodeKind::kOther, begin, begin_line, "assignment",
                  std::move(children));
  }

  // `: suite` — either same-line statements or an indented block.
  NodePtr parse_suite() {
    if (!eat_op(":")) {
      diagnose("expected ':'");
      auto span = Span{prev_end(), prev_end(), peek().line};
      return make_node(NodeKind::kBlock, span);
    }
    std::vector<NodePtr> children;
    if (!at_line_end()) {
      // Same-line suite: `while False: pass`.
      for (auto& stmt : parse_simple_line()) {
        if (stmt) children.push_back(std::move(stmt));
      }
    } else {
      eat_marker(TokKind::kNewline);
      if (eat_marker(TokKind::kIndent)) {
        while (!at_end() && peek().kind != TokKind::kDedent) {
          if (eat_marker(TokKind::kNewline)) continue;
          if (peek().kind == TokKind::kIndent) {
            // Unexpected extra indent; recover by skipping the marker.
            consume();
            continue;
          }
          for (auto& stmt : parse_statement()) {
            if (stmt) children.push_back(std::move(stmt));
          }
        }
        eat_marker(TokKind::kDedent);
      } else {
        diagnose("expected an indented block");
      }
    }
    Span span{prev_end(), prev_end(), peek().line};
    if (!children.empty()) {
      span.start_byte = children.front()->span().start_byte;
      span.start_line = children.front()->span().start_line;
      span.end_byte = children.back()->span().end_byte;
    }
    auto block = make_node(NodeKind::kBlock, span);
    for (auto& child : children) block->add_child(std::move(child));
    return block;
  }

  // --- expressions ---------------------------------------------------------

  // Comma-separated expression list; more than one element wraps as a tuple.
  NodePtr parse_testlist(bool allow_in) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto first = parse_expr(allow_in);
    if (!first) return nullptr;
    if (!peek().is_op(",")) return first;
    std::vector<NodePtr> children;
    children.push_back(std::move(first));
    while (eat_op(",")) {
      if (auto next = parse_expr(allow_in)) {
        children.push_back(std::move(next));
      } else {
        break;  // trailing comma
      }
    }
    return finish(NodeKind::kOther, begin, begin_line, "tuple",
                  std::move(children));
  }

  // Conditional expression: `a if cond else b`.
  NodePtr parse_expr(bool allow_in) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto value = parse_or(allow_in);
    if (!value) return nullptr;
    if (peek().is_ident("if")) {
      consume();
      std::vector<NodePtr> children;
      children.push_back(std::move(value));
      if (auto cond = parse_or(allow_in)) children.push_back(std::move(cond));
      if (eat_kw("else")) {
        if (auto alt = parse_expr(allow_in)) {
          children.push_back(std::move(alt));
        }
      } else {
        diagnose("conditional expression without 'else'");
      }
      return finish(NodeKind::kOther, begin, begin_line, "conditional",
                    std::move(children));
    }
    return value;
  }

  NodePtr parse_or(bool allow_in) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto lhs = parse_and(allow_in);
    while (lhs && peek().is_ident("or")) {
      consume();
      auto rhs = parse_and(allow_in);
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, "or",
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_and(bool allow_in) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto lhs = parse_not(allow_in);
    while (lhs && peek().is_ident("and")) {
      consume();
      auto rhs = parse_not(allow_in);
      if (!rhs) break;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, "and",
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_not(bool allow_in) {
    if (peek().is_ident("not")) {
      std::size_t begin = peek().begin;
      std::size_t begin_line = peek().line;
      consume();
      auto operand = parse_not(allow_in);
      if (!operand) return nullptr;
      std::vector<NodePtr> children;
      children.push_back(std::move(operand));
      return finish(NodeKind::kUnaryExpr, begin, begin_line, "not",
                    std::move(children));
    }
    return parse_comparison(allow_in);
  }

  // A single comparison becomes kBinaryExpr; chains (`a < b < c`) keep
  // Python's conjunction semantics out of reach of the evaluator by
  // degrading to a kOther container.
  NodePtr parse_comparison(bool allow_in) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto lhs = parse_bit_or();
    if (!lhs) return nullptr;
    std::vector<NodePtr> operands;
    std::vector<std::string> ops;
    while (true) {
      std::string op;
      if (peek().is_op("<") || peek().is_op("<=") || peek().is_op(">") ||
          peek().is_op(">=") || peek().is_op("==") || peek().is_op("!=")) {
        op = std::string(consume().text);
      } else if (allow_in && peek().is_ident("in")) {
        consume();
        op = "in";
      } else if (allow_in && peek().is_ident("not") && peek(1).is_ident("in")) {
        consume();
        consume();
        op = "not in";
      } else if (peek().is_ident("is")) {
        consume();
        op = "is";
        if (peek().is_ident("not")) {
          consume();
          op = "is not";
        }
      } else {
        break;
      }
      auto rhs = parse_bit_or();
      if (!rhs) break;
      if (operands.empty()) operands.push_back(std::move(lhs));
      operands.push_back(std::move(rhs));
      ops.push_back(std::move(op));
    }
    if (ops.empty()) return lhs;
    if (ops.size() == 1) {
      std::vector<NodePtr> children;
      children.push_back(std::move(operands[0]));
      children.push_back(std::move(operands[1]));
      return finish(NodeKind::kBinaryExpr, begin, begin_line, ops[0],
                    std::move(children));
    }
    return finish(NodeKind::kOther, begin, begin_line, "comparison_chain",
                  std::move(operands));
  }

  NodePtr binary_level(NodePtr lhs, const std::vector<std::string_view>& ops,
                       NodePtr (PythonParser::*next)(), std::size_t begin,
                       std::size_t begin_line) {
    while (lhs) {
      std::string matched;
      for (std::string_view op : ops) {
        if (peek().is_op(op)) {
          matched = std::string(op);
          break;
        }
      }
      if (matched.empty()) return lhs;
      consume();
      auto rhs = (this->*next)();
      if (!rhs) return lhs;
      std::vector<NodePtr> children;
      children.push_back(std::move(lhs));
      children.push_back(std::move(rhs));
      lhs = finish(NodeKind::kBinaryExpr, begin, begin_line, matched,
                   std::move(children));
    }
    return lhs;
  }

  NodePtr parse_bit_or() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_bit_xor(), {"|"},
                        &PythonParser::parse_bit_xor, begin, begin_line);
  }
  NodePtr parse_bit_xor() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_bit_and(), {"^"},
                        &PythonParser::parse_bit_and, begin, begin_line);
  }
  NodePtr parse_bit_and() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_shift(), {"&"}, &PythonParser::parse_shift,
                        begin, begin_line);
  }
  NodePtr parse_shift() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_arith(), {"<<", ">>"},
                        &PythonParser::parse_arith, begin, begin_line);
  }
  NodePtr parse_arith() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_term(), {"+", "-"},
                        &PythonParser::parse_term, begin, begin_line);
  }
  NodePtr parse_term() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    return binary_level(parse_factor(), {"*", "//", "/", "%", "@"},
                        &PythonParser::parse_factor, begin, begin_line);
  }

  NodePtr parse_factor() {
    const Tok& t = peek();
    if (t.is_op("-") || t.is_op("+") || t.is_op("~")) {
      std::size_t begin = t.begin;
      std::size_t begin_line = t.line;
      std::string op(consume().text);
      auto operand = parse_factor();
      if (!operand) return nullptr;
      std::vector<NodePtr> children;
      children.push_back(std::move(operand));
      return finish(NodeKind::kUnaryExpr, begin, begin_line, op,
                    std::move(children));
    }
    return parse_power();
  }

  NodePtr parse_power() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto base = parse_postfix();
    if (base && peek().is_op("**")) {
      consume();
      auto exponent = parse_factor();  // right-associative
      std::vector<NodePtr> children;
      children.push_back(std::move(base));
      if (exponent) children.push_back(std::move(exponent));
      return finish(NodeKind::kBinaryExpr, begin, begin_line, "**",
                    std::move(children));
    }
    return base;
  }

  NodePtr parse_postfix() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    auto node = parse_atom();
    while (node && !at_end()) {
      const Tok& t = peek();
      if (t.is_op(".") && peek(1).kind == TokKind::kIdent) {
        consume();
        std::string attr(consume().text);
        if (peek().is_op("(")) {
          auto args = parse_call_arguments();
          std::vector<NodePtr> children;
          children.push_back(std::move(node));
          for (auto& a : args) children.push_back(std::move(a));
          node = finish(NodeKind::kMemberCall, begin, begin_line, attr,
                        std::move(children));
        } else {
          std::vector<NodePtr> children;
          children.push_back(std::move(node));
          node = finish(NodeKind::kOther, begin, begin_line, attr,
                        std::move(children));
        }
      } else if (t.is_op("(")) {
        auto args = parse_call_arguments();
        std::string callee =
            node->kind() == NodeKind::kIdentifier ? node->aux() : "";
        std::vector<NodePtr> children;
        if (node->kind() != NodeKind::kIdentifier) {
          children.push_back(std::move(node));
        }
        for (auto& a : args) children.push_back(std::move(a));
        node = finish(NodeKind::kCallExpr, begin, begin_line, callee,
                      std::move(children));
      } else if (t.is_op("[")) {
        consume();
        std::vector<NodePtr> children;
        children.push_back(std::move(node));
        while (!at_end() && !peek().is_op("]")) {
          if (eat_op(",") || eat_op(":")) continue;
          if (auto piece = parse_expr(/*allow_in=*/true)) {
            children.push_back(std::move(piece));
          } else {
            consume();
          }
        }
        if (!eat_op("]")) diagnose("unterminated subscript");
        node = finish(NodeKind::kOther, begin, begin_line, "subscript",
                      std::move(children));
      } else {
        break;
      }
    }
    return node;
  }

  NodePtr parse_atom() {
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
        // Adjacent string literals concatenate into one node.
        std::size_t begin = t.begin;
        std::size_t begin_line = t.line;
        consume();
        while (peek().kind == TokKind::kString) consume();
        return finish(NodeKind::kStringLiteral, begin, begin_line, {}, {});
      }
      case TokKind::kIdent:
        if (t.text == "True" || t.text == "False") {
          const Tok& tok = consume();
          return make_node(NodeKind::kBoolLiteral, tok_span(tok),
                           std::string(tok.text));
        }
        if (t.text == "None") {
          const Tok& tok = consume();
          return make_node(NodeKind::kOther, tok_span(tok), "None");
        }
        if (t.text == "lambda") return parse_lambda();
        if (t.text == "await" || t.text == "yield") {
          std::size_t begin = t.begin;
          std::size_t begin_line = t.line;
          consume();
          eat_kw("from");
          std::vector<NodePtr> children;
          if (!at_line_end()) {
            if (auto operand = parse_expr(/*allow_in=*/true)) {
              children.push_back(std::move(operand));
            }
          }
          return finish(NodeKind::kOther, begin, begin_line,
                        std::string(t.text), std::move(children));
        }
        if (is_keyword(t)) return nullptr;
        {
          const Tok& tok = consume();
          return make_node(NodeKind::kIdentifier, tok_span(tok),
                           std::string(tok.text));
        }
      case TokKind::kOp:
        if (t.text == "(") return parse_paren();
        if (t.text == "[") return parse_bracketed("[", "]", "list");
        if (t.text == "{") return parse_bracketed("{", "}", "braces");
        if (t.text == "...") {
          const Tok& tok = consume();
          return make_node(NodeKind::kOther, tok_span(tok), "...");
        }
        if (t.text == "*" || t.text == "**") {
          std::size_t begin = t.begin;
          std::size_t begin_line = t.line;
          consume();
          std::vector<NodePtr> children;
          if (auto operand = parse_expr(/*allow_in=*/true)) {
            children.push_back(std::move(operand));
          }
          return finish(NodeKind::kOther, begin, begin_line, "starred",
                        std::move(children));
        }
        return nullptr;
      default:
        return nullptr;
    }
  }

  NodePtr parse_paren() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // (
    std::vector<NodePtr> children;
    bool tuple = false;
    while (!at_end() && !peek().is_op(")")) {
      if (eat_op(",")) {
        tuple = true;
        continue;
      }
      if (peek().is_ident("for") || peek().is_ident("async")) {
        children.push_back(skip_comprehension_tail(")"));
        break;
      }
      if (auto inner = parse_expr(/*allow_in=*/true)) {
        children.push_back(std::move(inner));
      } else {
        consume();
      }
    }
    if (!eat_op(")")) diagnose("expected ')'");
    if (tuple || children.size() > 1) {
      return finish(NodeKind::kOther, begin, begin_line, "tuple",
                    std::move(children));
    }
    return finish(NodeKind::kParenExpr, begin, begin_line, {},
                  std::move(children));
  }

  NodePtr parse_bracketed(std::string_view open, std::string_view close,
                          std::string label) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // open
    std::vector<NodePtr> children;
    while (!at_end() && !peek().is_op(close)) {
      if (eat_op(",") || eat_op(":")) continue;
      if (peek().is_ident("for") || peek().is_ident("async")) {
        children.push_back(skip_comprehension_tail(close));
        break;
      }
      if (auto element = parse_expr(/*allow_in=*/true)) {
        children.push_back(std::move(element));
      } else {
        consume();
      }
    }
    if (!eat_op(close)) {
      diagnose("unterminated '" + std::string(open) + "'");
    }
    return finish(NodeKind::kOther, begin, begin_line, std::move(label),
                  std::move(children));
  }

  // Consumes a comprehension clause (`for x in xs if p`) up to, but not
  // including, the closing bracket.
  NodePtr skip_comprehension_tail(std::string_view close) {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    int depth = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (depth == 0 && t.is_op(close)) break;
      if (t.is_op("(") || t.is_op("[") || t.is_op("{")) ++depth;
      if (t.is_op(")") || t.is_op("]") || t.is_op("}")) {
        if (depth == 0) break;
        --depth;
      }
      consume();
    }
    return finish(NodeKind::kOther, begin, begin_line, "comprehension", {});
  }

  NodePtr parse_lambda() {
    std::size_t begin = peek().begin;
    std::size_t begin_line = peek().line;
    consume();  // lambda
    while (!at_end() && !peek().is_op(":") && !at_line_end()) consume();
    std::vector<NodePtr> children;
    if (eat_op(":")) {
      if (auto body = parse_expr(/*allow_in=*/true)) {
        children.push_back(std::move(body));
      }
    } else {
      diagnose("lambda without ':'");
    }
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
        consume();  // keyword argument name
        consume();  // =
      }
      if (peek().is_ident("for") || peek().is_ident("async")) {
        args.push_back(skip_comprehension_tail(")"));
        break;
      }
      if (auto arg = parse_expr(/*allow_in=*/true)) {
        args.push_back(std::move(arg));
      } else {
        consume();
      }
    }
    if (!eat_op(")")) diagnose("unterminated argument list");
    return args;
  }

  void skip_balanced_parens() {
    int depth = 0;
    while (!at_end()) {
      const Tok& t = peek();
      if (t.is_op("(") || t.is_op("[") || t.is_op("{")) ++depth;
      if (t.is_op(")") || t.is_op("]") || t.is_op("}")) {
        --depth;
        if (depth <= 0) {
          consume();
          return;
        }
      }
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

ParsedFile parse_python(std::string_view source, std::string path) {
  ParsedFile file;
  file.path = std::move(path);
  file.language = cst::SourceLanguage::kPython;
  file.source_text = std::string(source);

  PythonLexer lexer(file.source_text, file.path, &file.diagnostics);
  lexer.run();
  auto comments = lexer.take_comments();

  PythonParser parser(lexer.take_tokens(), file.source_text, file.path,
                      &file.diagnostics);
  auto root = parser.parse_file();
  detail::attach_comments(root.get(), comments);
  root->relink_parents();
  file.root = std::move(root);
  return file;
}

}  // namespace constat::frontend
