// Copyright 2026 The searchcomb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Recursive descent parser for search specifications.
//
//   program  := { "def" ident "(" [ident {"," ident}] ")" "=" term ";" } [term [";"]]
//   term     := or
//   or       := and { "or" and }
//   and      := not { "and" not }
//   not      := "not" not | cmp
//   cmp      := concat [ ("=" | "!=" | "<" | "<=" | ">" | ">=") concat ]
//   concat   := sum { "++" sum }
//   sum      := product { ("+" | "-") product }
//   product  := unary { ("*" | "/") unary }
//   unary    := "-" unary | postfix
//   postfix  := primary { "[" term "]" }
//   primary  := number | "inf" | ident [ "(" args ")" ] | "(" term ")"
//             | "[" [ term ( "|" ident "in" term ".." term | { "," term } ) ] "]"
//
// The unicode forms ∞ ≤ ≥ ≠ × are accepted as synonyms.

#pragma once

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "searchcomb/errors.hpp"
#include "searchcomb/term.hpp"

namespace searchcomb {

struct ParseOptions {
  // Identifiers containing '$' are reserved for generated names.
  bool allow_reserved = false;
};

namespace detail {

struct Token {
  enum class Kind { kIdent, kNumber, kPunct, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  double number = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view src, ParseOptions opts) : src_(src), opts_(opts) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || (c == '$' && opts_.allow_reserved)) {
        t.kind = Token::Kind::kIdent;
        while (pos_ < src_.size()) {
          char d = src_[pos_];
          if (!(std::isalnum(static_cast<unsigned char>(d)) || d == '_' || (d == '$' && opts_.allow_reserved))) break;
          t.text += d;
          advance(1);
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::kNumber;
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        if (pos_ + 1 < src_.size() && src_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
          advance(1);
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance(1);
        }
        t.text = std::string(src_.substr(start, pos_ - start));
        t.number = std::stod(t.text);
      } else {
        t.kind = Token::Kind::kPunct;
        t.text = punct();
        if (t.text.empty()) {
          throw SpecError("unexpected character '" + std::string(1, c) + "'", t.line, t.column);
        }
        if (t.text == "∞") {
          t.kind = Token::Kind::kIdent;
          t.text = "inf";
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && pos_ < src_.size(); ++k, ++pos_) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance(1);
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string punct() {
    static const std::vector<std::pair<std::string_view, std::string_view>> table = {
        {"∞", "∞"}, {"≤", "<="}, {"≥", ">="}, {"≠", "!="}, {"×", "*"},
        {"++", "++"}, {"..", ".."}, {"<=", "<="}, {">=", ">="}, {"!=", "!="}, {"==", "="},
        {"(", "("}, {")", ")"}, {"[", "["}, {"]", "]"}, {",", ","}, {";", ";"}, {"|", "|"},
        {"+", "+"}, {"-", "-"}, {"*", "*"}, {"/", "/"}, {"<", "<"}, {">", ">"}, {"=", "="},
    };
    for (const auto& [spelling, canonical] : table) {
      if (src_.substr(pos_, spelling.size()) == spelling) {
        advance(spelling.size());
        return std::string(canonical);
      }
    }
    return "";
  }

  std::string_view src_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Accepted argument counts of the primitives and builtin functions.
inline const std::map<std::string, std::pair<int, int>>& primitive_arity() {
  static const std::map<std::string, std::pair<int, int>> table = {
      {"prune", {0, 0}},       {"and", {1, 1}},          {"or", {1, 1}},
      {"portfolio", {1, 1}},   {"ifthenelse", {3, 3}},   {"restart", {2, 2}},
      {"let", {3, 3}},         {"assign", {2, 2}},       {"post", {1, 2}},
      {"base_search", {3, 3}}, {"print", {2, 2}},        {"solution_count", {2, 2}},
      {"failure_count", {2, 2}}, {"node_count", {2, 2}}, {"depth_count", {2, 2}},
      {"discrepancy_count", {2, 2}}, {"time_count", {2, 2}}, {"apply", {3, 3}},
      {"ceil", {1, 1}},        {"floor", {1, 1}},        {"abs", {1, 1}},
      {"min", {2, 2}},         {"max", {2, 2}},          {"alldifferent", {1, 1}},
  };
  return table;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program program() {
    Program p;
    while (peek_ident("def")) p.defs.push_back(definition());
    if (!at_end()) {
      p.body = term();
      accept(";");
    }
    if (!at_end()) fail("unexpected '" + cur().text + "' after the search term");
    return p;
  }

  TermPtr single_term() {
    TermPtr t = term();
    if (!at_end()) fail("unexpected '" + cur().text + "'");
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k = 1) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return cur().kind == Token::Kind::kEnd; }
  bool peek(std::string_view p) const { return cur().kind == Token::Kind::kPunct && cur().text == p; }
  bool peek_ident(std::string_view w) const { return cur().kind == Token::Kind::kIdent && cur().text == w; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError(at_end() ? what + " (at end of input)" : what, cur().line, cur().column);
  }

  bool accept(std::string_view p) {
    if (!peek(p)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'" + (at_end() ? "" : " but found '" + cur().text + "'"));
  }
  std::string identifier() {
    if (cur().kind != Token::Kind::kIdent) fail("expected an identifier");
    return toks_[pos_++].text;
  }

  MacroDef definition() {
    MacroDef d;
    d.line = cur().line;
    ++pos_;
    d.name = identifier();
    expect("(");
    if (!peek(")")) {
      do {
        d.params.push_back(identifier());
      } while (accept(","));
    }
    expect(")");
    expect("=");
    d.body = term();
    expect(";");
    return d;
  }

  TermPtr term() { return disjunction(); }

  TermPtr disjunction() {
    TermPtr t = conjunction();
    while (peek_ident("or")) {
      const Token& op = toks_[pos_++];
      t = make_binary("or", t, conjunction(), op.line, op.column);
    }
    return t;
  }

  TermPtr conjunction() {
    TermPtr t = negation();
    while (peek_ident("and")) {
      const Token& op = toks_[pos_++];
      t = make_binary("and", t, negation(), op.line, op.column);
    }
    return t;
  }

  TermPtr negation() {
    if (peek_ident("not")) {
      const Token& op = toks_[pos_++];
      return make_term(Term::Kind::kUnary, "not", {negation()}, op.line, op.column);
    }
    return comparison();
  }

  TermPtr comparison() {
    TermPtr t = concat();
    static const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
    for (const char* op : ops) {
      if (peek(op)) {
        const Token& tok = toks_[pos_++];
        t = make_binary(op, t, concat(), tok.line, tok.column);
        for (const char* again : ops) {
          if (peek(again)) fail("comparisons do not chain; use 'and'");
        }
        break;
      }
    }
    return t;
  }

  TermPtr concat() {
    TermPtr t = sum();
    while (peek("++")) {
      const Token& op = toks_[pos_++];
      t = make_binary("++", t, sum(), op.line, op.column);
    }
    return t;
  }

  TermPtr sum() {
    TermPtr t = product();
    while ((peek("+") || peek("-")) && !symbol_argument()) {
      const Token& op = toks_[pos_++];
      t = make_binary(op.text, t, product(), op.line, op.column);
    }
    return t;
  }

  TermPtr product() {
    TermPtr t = unary();
    while ((peek("*") || peek("/")) && !symbol_argument()) {
      const Token& op = toks_[pos_++];
      t = make_binary(op.text, t, unary(), op.line, op.column);
    }
    return t;
  }

  TermPtr unary() {
    if (peek("-")) {
      const Token& op = toks_[pos_++];
      TermPtr inner = unary();
      if (inner->kind == Term::Kind::kNumber) return make_number(-inner->number, op.line, op.column);
      return make_term(Term::Kind::kUnary, "-", {inner}, op.line, op.column);
    }
    return postfix();
  }

  TermPtr postfix() {
    TermPtr t = primary();
    while (peek("[")) {
      const Token& open = toks_[pos_++];
      TermPtr index = term();
      expect("]");
      t = make_term(Term::Kind::kIndex, "", {t, index}, open.line, open.column);
    }
    return t;
  }

  // A bare + or * directly followed by ',' or ')' is an operator symbol
  // passed as an argument, as in ir(depth, 0, +, 1, inf, s).
  bool symbol_argument() const {
    if (!(peek("+") || peek("*"))) return false;
    const Token& next = ahead();
    return next.kind == Token::Kind::kPunct && (next.text == "," || next.text == ")");
  }

  TermPtr argument() {
    if (symbol_argument()) {
      const Token& t = toks_[pos_++];
      return make_term(Term::Kind::kSymbol, t.text, {}, t.line, t.column);
    }
    return term();
  }

  TermPtr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Token::Kind::kNumber:
        ++pos_;
        return make_number(t.number, t.line, t.column);
      case Token::Kind::kIdent: {
        ++pos_;
        if (t.text == "inf") return make_number(std::numeric_limits<double>::infinity(), t.line, t.column);
        if (t.text == "def" || t.text == "in") fail("unexpected keyword '" + t.text + "'");
        if (!peek("(")) return make_name(t.text, t.line, t.column);
        ++pos_;
        std::vector<TermPtr> args;
        if (!peek(")")) {
          do {
            args.push_back(argument());
          } while (accept(","));
        }
        expect(")");
        check_arity(t, args.size());
        return make_call(t.text, std::move(args), t.line, t.column);
      }
      case Token::Kind::kPunct:
        if (t.text == "(") {
          ++pos_;
          TermPtr inner = term();
          expect(")");
          return inner;
        }
        if (t.text == "[") return list();
        break;
      case Token::Kind::kEnd:
        break;
    }
    fail(t.kind == Token::Kind::kEnd ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  TermPtr list() {
    const Token& open = toks_[pos_++];
    std::vector<TermPtr> items;
    if (accept("]")) return make_list({}, open.line, open.column);
    items.push_back(term());
    if (accept("|")) {
      std::string var = identifier();
      if (!peek_ident("in")) fail("expected 'in'");
      ++pos_;
      TermPtr lo = term();
      expect("..");
      TermPtr hi = term();
      expect("]");
      return make_term(Term::Kind::kComprehension, var, {items[0], lo, hi}, open.line, open.column);
    }
    while (accept(",")) items.push_back(term());
    expect("]");
    return make_list(std::move(items), open.line, open.column);
  }

  void check_arity(const Token& callee, std::size_t n) const {
    const auto& table = primitive_arity();
    auto it = table.find(callee.text);
    if (it == table.end()) return;
    auto [lo, hi] = it->second;
    if (static_cast<int>(n) < lo || static_cast<int>(n) > hi) {
      std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " or " + std::to_string(hi);
      throw SpecError("'" + callee.text + "' takes " + want + " argument" + (hi == 1 ? "" : "s") + ", got " +
                          std::to_string(n),
                      callee.line, callee.column);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Program parse_program(std::string_view text, ParseOptions opts = {}) {
  return detail::Parser(detail::Lexer(text, opts).run()).program();
}

inline TermPtr parse_term(std::string_view text, ParseOptions opts = {}) {
  return detail::Parser(detail::Lexer(text, opts).run()).single_term();
}

}  // namespace searchcomb
