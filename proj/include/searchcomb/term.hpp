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
// Syntax trees of the search specification language. One node type covers
// combinator terms and the expressions inside them; the two only separate
// during elaboration.

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace searchcomb {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind {
    kNumber,  // 3, 1.5, inf
    kName,    // identifiers, true, false
    kSymbol,  // a bare + or * passed as an argument
    kCall,    // name(args...)
    kList,    // [a, b, ...]
    kIndex,   // name[index]
    kBinary,  // a op b, including ++
    kUnary,   // -a, not a
    kComprehension,  // [body | var in lo..hi]
  };

  Kind kind = Kind::kNumber;
  double number = 0;
  // identifier, callee, operator or comprehension variable
  std::string text;
  std::vector<TermPtr> args;
  int line = 0;
  int column = 0;

  bool is_name(std::string_view n) const { return kind == Kind::kName && text == n; }
  bool is_call(std::string_view n) const { return kind == Kind::kCall && text == n; }
};

inline TermPtr make_number(double v, int line = 0, int col = 0) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::kNumber;
  t->number = v;
  t->line = line;
  t->column = col;
  return t;
}

inline TermPtr make_term(Term::Kind kind, std::string text, std::vector<TermPtr> args = {}, int line = 0,
                         int col = 0) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->text = std::move(text);
  t->args = std::move(args);
  t->line = line;
  t->column = col;
  return t;
}

inline TermPtr make_name(std::string n, int line = 0, int col = 0) {
  return make_term(Term::Kind::kName, std::move(n), {}, line, col);
}
inline TermPtr make_call(std::string callee, std::vector<TermPtr> args, int line = 0, int col = 0) {
  return make_term(Term::Kind::kCall, std::move(callee), std::move(args), line, col);
}
inline TermPtr make_list(std::vector<TermPtr> items, int line = 0, int col = 0) {
  return make_term(Term::Kind::kList, "", std::move(items), line, col);
}
inline TermPtr make_binary(std::string op, TermPtr a, TermPtr b, int line = 0, int col = 0) {
  return make_term(Term::Kind::kBinary, std::move(op), {std::move(a), std::move(b)}, line, col);
}

// Structural equality; source positions are ignored.
inline bool same(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size()) return false;
  if (a.kind == Term::Kind::kNumber && a.number != b.number) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!same(*a.args[k], *b.args[k])) return false;
  }
  return true;
}

inline std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<std::int64_t>(v));
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Canonical text: binary and unary operations fully parenthesised, lists
// and calls with ", " separators. Parsing the output gives back the tree.
inline void print_term(std::ostream& os, const Term& t) {
  auto join = [&os](const std::vector<TermPtr>& items, std::size_t from) {
    for (std::size_t k = from; k < items.size(); ++k) {
      if (k > from) os << ", ";
      print_term(os, *items[k]);
    }
  };
  switch (t.kind) {
    case Term::Kind::kNumber:
      if (t.number < 0 && !std::isinf(t.number)) {
        os << '(' << format_number(t.number) << ')';
      } else {
        os << format_number(t.number);
      }
      return;
    case Term::Kind::kName:
    case Term::Kind::kSymbol:
      os << t.text;
      return;
    case Term::Kind::kCall:
      os << t.text << '(';
      join(t.args, 0);
      os << ')';
      return;
    case Term::Kind::kList:
      os << '[';
      join(t.args, 0);
      os << ']';
      return;
    case Term::Kind::kIndex:
      print_term(os, *t.args[0]);
      os << '[';
      print_term(os, *t.args[1]);
      os << ']';
      return;
    case Term::Kind::kBinary:
      os << '(';
      print_term(os, *t.args[0]);
      os << ' ' << t.text << ' ';
      print_term(os, *t.args[1]);
      os << ')';
      return;
    case Term::Kind::kUnary:
      os << '(' << t.text << (t.text == "not" ? " " : "");
      print_term(os, *t.args[0]);
      os << ')';
      return;
    case Term::Kind::kComprehension:
      os << '[';
      print_term(os, *t.args[0]);
      os << " | " << t.text << " in ";
      print_term(os, *t.args[1]);
      os << "..";
      print_term(os, *t.args[2]);
      os << ']';
      return;
  }
}

inline std::string to_text(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  print_term(os, t);
  return os;
}

struct MacroDef {
  std::string name;
  std::vector<std::string> params;
  TermPtr body;
  int line = 0;
};

struct Program {
  std::vector<MacroDef> defs;
  TermPtr body;  // may be null when only definitions were given
};

}  // namespace searchcomb
