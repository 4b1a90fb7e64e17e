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
// Macro expansion: replaces macro calls by their bodies until only
// primitive combinators remain, and resolves list comprehensions and ++.

#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "searchcomb/errors.hpp"
#include "searchcomb/stdlib.hpp"
#include "searchcomb/term.hpp"

namespace searchcomb {

class MacroTable {
 public:
  MacroTable() = default;

  static MacroTable with_stdlib() {
    MacroTable t;
    for (MacroDef& d : load_stdlib()) t.define(std::move(d));
    return t;
  }

  void define(MacroDef def) {
    if (detail::primitive_arity().count(def.name)) {
      throw SpecError("'" + def.name + "' is a primitive and cannot be redefined", def.line, 1);
    }
    if (defs_.count(def.name)) throw SpecError("macro '" + def.name + "' is already defined", def.line, 1);
    std::set<std::string> seen;
    for (const std::string& p : def.params) {
      if (!seen.insert(p).second) throw SpecError("duplicate parameter '" + p + "' in '" + def.name + "'", def.line, 1);
    }
    std::string name = def.name;
    defs_.emplace(name, std::move(def));
    check_cycles(name);
  }

  const MacroDef* find(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return defs_.size(); }

 private:
  void check_cycles(const std::string& from) const {
    std::vector<std::string> path;
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
      for (const std::string& p : path) {
        if (p == name) {
          std::string chain;
          for (const std::string& q : path) chain += q + " -> ";
          throw SpecError("recursive macro: " + chain + name, defs_.at(from).line, 1);
        }
      }
      const MacroDef* d = find(name);
      if (!d) return;
      path.push_back(name);
      std::set<std::string> callees;
      collect_calls(*d->body, callees);
      for (const std::string& c : callees) visit(c);
      path.pop_back();
    };
    visit(from);
  }

  static void collect_calls(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::kCall) out.insert(t.text);
    // a macro passed by name and applied inside the body is not supported,
    // so plain names never create call edges
    for (const TermPtr& a : t.args) collect_calls(*a, out);
  }

  std::map<std::string, MacroDef> defs_;
};

namespace detail {

// Evaluates a constant integer expression (comprehension bounds).
inline double constant_value(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kNumber:
      return t.number;
    case Term::Kind::kUnary:
      if (t.text == "-") return -constant_value(*t.args[0]);
      break;
    case Term::Kind::kBinary: {
      double a = constant_value(*t.args[0]);
      double b = constant_value(*t.args[1]);
      if (t.text == "+") return a + b;
      if (t.text == "-") return a - b;
      if (t.text == "*") return a * b;
      if (t.text == "/") return a / b;
      break;
    }
    default:
      break;
  }
  throw SpecError("expected a constant expression, got " + to_text(t), t.line, t.column);
}

// Replaces names according to `map`. Comprehension variables shadow.
inline TermPtr substitute(const TermPtr& t, const std::map<std::string, TermPtr>& map) {
  if (t->kind == Term::Kind::kName) {
    auto it = map.find(t->text);
    return it == map.end() ? t : it->second;
  }
  if (t->args.empty()) return t;
  const std::map<std::string, TermPtr>* inner = &map;
  std::map<std::string, TermPtr> narrowed;
  if (t->kind == Term::Kind::kComprehension && map.count(t->text)) {
    narrowed = map;
    narrowed.erase(t->text);
    inner = &narrowed;
  }
  auto copy = std::make_shared<Term>(*t);
  for (std::size_t k = 0; k < copy->args.size(); ++k) {
    bool bound_part = t->kind == Term::Kind::kComprehension && k == 0;
    copy->args[k] = substitute(t->args[k], bound_part ? *inner : map);
  }
  return copy;
}

inline void let_binders(const Term& t, std::set<std::string>& out) {
  if (t.is_call("let") && !t.args.empty() && t.args[0]->kind == Term::Kind::kName) out.insert(t.args[0]->text);
  for (const TermPtr& a : t.args) let_binders(*a, out);
}

}  // namespace detail

class Expander {
 public:
  explicit Expander(const MacroTable& table) : table_(table) {}

  TermPtr expand(const TermPtr& t) {
    TermPtr out = walk(t);
    check_shadowing(*out, {});
    return out;
  }

 private:
  // With macros_only, comprehensions and ++ are left for later: inside a
  // macro body their operands may still be formals.
  TermPtr walk(const TermPtr& t, bool macros_only = false) {
    switch (t->kind) {
      case Term::Kind::kCall:
        if (const MacroDef* def = table_.find(t->text)) return call(*t, *def, macros_only);
        break;
      case Term::Kind::kComprehension:
        if (!macros_only) return comprehension(*t);
        break;
      case Term::Kind::kBinary:
        if (t->text == "++" && !macros_only) return concat(*t);
        break;
      default:
        break;
    }
    if (t->args.empty()) return t;
    auto copy = std::make_shared<Term>(*t);
    for (TermPtr& a : copy->args) a = walk(a, macros_only);
    return copy;
  }

  TermPtr call(const Term& site, const MacroDef& def, bool macros_only) {
    if (site.args.size() != def.params.size()) {
      throw SpecError("macro '" + def.name + "' takes " + std::to_string(def.params.size()) + " arguments, got " +
                          std::to_string(site.args.size()),
                      site.line, site.column);
    }
    if (++depth_ > 200) throw SpecError("macro expansion too deep at '" + def.name + "'", site.line, site.column);
    std::map<std::string, TermPtr> map;
    for (std::size_t k = 0; k < def.params.size(); ++k) map[def.params[k]] = walk(site.args[k], macros_only);
    // Expanding the body on its own first exposes the lets that nested
    // macros introduce (lds passes its counter to for, which binds it).
    // Every let-bound name that is not a formal then gets a fresh suffix
    // so that it cannot capture names in the arguments.
    TermPtr body = walk(def.body, true);
    std::set<std::string> binders;
    detail::let_binders(*body, binders);
    std::size_t stamp = ++expansions_;
    for (const std::string& b : binders) {
      if (!map.count(b)) map[b] = make_name(b + "$" + std::to_string(stamp), site.line, site.column);
    }
    TermPtr out = walk(detail::substitute(body, map), macros_only);
    --depth_;
    return out;
  }

  TermPtr comprehension(const Term& t) {
    double lo = detail::constant_value(*walk(t.args[1]));
    double hi = detail::constant_value(*walk(t.args[2]));
    if (lo != std::floor(lo) || hi != std::floor(hi)) {
      throw SpecError("comprehension bounds must be integers", t.line, t.column);
    }
    std::vector<TermPtr> items;
    for (double i = lo; i <= hi; ++i) {
      items.push_back(walk(detail::substitute(t.args[0], {{t.text, make_number(i, t.line, t.column)}})));
    }
    return make_list(std::move(items), t.line, t.column);
  }

  TermPtr concat(const Term& t) {
    TermPtr a = walk(t.args[0]);
    TermPtr b = walk(t.args[1]);
    if (a->kind != Term::Kind::kList || b->kind != Term::Kind::kList) {
      throw SpecError("'++' joins two lists", t.line, t.column);
    }
    std::vector<TermPtr> items = a->args;
    items.insert(items.end(), b->args.begin(), b->args.end());
    return make_list(std::move(items), t.line, t.column);
  }

  static void check_shadowing(const Term& t, std::set<std::string> scope) {
    if (t.is_call("let") && t.args.size() == 3 && t.args[0]->kind == Term::Kind::kName) {
      const std::string& name = t.args[0]->text;
      if (!scope.insert(name).second) {
        throw SpecError("let '" + name + "' shadows an enclosing let of the same name", t.line, t.column);
      }
    }
    for (const TermPtr& a : t.args) check_shadowing(*a, scope);
  }

  const MacroTable& table_;
  std::size_t expansions_ = 0;
  int depth_ = 0;
};

// Expands `program` against the standard library plus its own definitions.
inline TermPtr expand_program(const Program& program) {
  MacroTable table = MacroTable::with_stdlib();
  for (const MacroDef& d : program.defs) table.define(d);
  if (!program.body) throw SpecError("no search term given", 1, 1);
  return Expander(table).expand(program.body);
}

inline TermPtr expand(const TermPtr& t, const MacroTable& table) { return Expander(table).expand(t); }

}  // namespace searchcomb
