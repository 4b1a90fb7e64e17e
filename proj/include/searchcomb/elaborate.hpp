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

// Elaboration: turns a lowered core term into a wired combinator tree over
// a model, resolving names and checking scopes.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "searchcomb/combinators.hpp"
#include "searchcomb/errors.hpp"
#include "searchcomb/lower.hpp"
#include "searchcomb/model.hpp"
#include "searchcomb/term.hpp"

namespace searchcomb {

struct ElaborateOptions {
  // Seed of random strategies that do not give their own.
  std::uint64_t seed = 0;
};

namespace detail {

inline const std::map<std::string, Statistic>& collector_statistics() {
  static const std::map<std::string, Statistic> table = {
      {"solution_count", Statistic::kSolutions}, {"failure_count", Statistic::kFailures},
      {"node_count", Statistic::kNodes},         {"depth_count", Statistic::kDepth},
      {"discrepancy_count", Statistic::kDiscrepancies}, {"time_count", Statistic::kTime},
  };
  return table;
}

}  // namespace detail

class Elaborator {
 public:
  Elaborator(const Model& model, ElaborateOptions opts) : model_(model), opts_(opts) {}

  CombinatorPtr combinator(const Term& t) {
    if (t.is_name("prune")) return make_prune();
    if (t.kind != Term::Kind::kCall) fail(t, "expected a combinator, got " + to_text(t));
    const std::string& f = t.text;
    const auto& a = t.args;
    if (f == "prune") return make_prune();
    if (f == "and" || f == "or" || f == "portfolio") {
      std::vector<CombinatorPtr> kids = combinator_list(*a[0], f);
      if (f == "and") return make_and(std::move(kids));
      return f == "or" ? make_or(std::move(kids)) : make_portfolio(std::move(kids));
    }
    if (f == "ifthenelse") {
      ConditionPtr c = make_condition(expr(*a[0]));
      CombinatorPtr s1 = combinator(*a[1]);
      return make_ifthenelse(std::move(c), std::move(s1), combinator(*a[2]));
    }
    if (f == "restart") {
      ConditionPtr c = make_condition(expr(*a[0]));
      return make_restart(std::move(c), combinator(*a[1]));
    }
    if (f == "let") return let(t);
    if (f == "assign") return std::make_shared<Assign>(bound(*a[0], "assign"), expr(*a[1]));
    if (f == "post") {
      ExprPtr c = expr(*a[0]);
      return std::make_shared<Post>(std::move(c), a.size() == 2 ? combinator(*a[1]) : nullptr);
    }
    if (f == "base_search") return base_search(t);
    if (f == "print") {
      std::vector<VarId> vars = variables(*a[0]);
      return std::make_shared<Print>(std::move(vars), combinator(*a[1]));
    }
    if (auto it = detail::collector_statistics().find(f); it != detail::collector_statistics().end()) {
      BindingPtr b = bound(*a[0], f);
      return std::make_shared<Collector>(it->second, std::move(b), combinator(*a[1]));
    }
    fail(t, "unknown combinator '" + f + "'");
  }

  ExprPtr expr(const Term& t) {
    switch (t.kind) {
      case Term::Kind::kNumber:
        return Expr::constant(t.number);
      case Term::Kind::kName: {
        if (t.text == "true") return Expr::constant(1);
        if (t.text == "false") return Expr::constant(0);
        if (BindingPtr b = lookup(t.text)) return Expr::search_var(std::move(b));
        if (auto v = model_.scalar(t.text)) return Expr::model_var(*v, t.text);
        if (model_.array(t.text)) fail(t, "array '" + t.text + "' used where a number is expected");
        if (is_statistic(t.text)) fail(t, "statistic '" + t.text + "' outside an ifthenelse condition");
        fail(t, "unknown name '" + t.text + "'");
      }
      case Term::Kind::kIndex: {
        VarId v = model_var(t);
        return Expr::model_var(v, to_text(t));
      }
      case Term::Kind::kUnary:
        return Expr::apply(t.text == "not" ? Op::kNot : Op::kNeg, {expr(*t.args[0])});
      case Term::Kind::kBinary: {
        static const std::map<std::string, Op> ops = {
            {"+", Op::kAdd}, {"-", Op::kSub}, {"*", Op::kMul}, {"/", Op::kDiv}, {"=", Op::kEq},
            {"!=", Op::kNe}, {"<", Op::kLt},  {"<=", Op::kLe}, {">", Op::kGt},  {">=", Op::kGe},
            {"and", Op::kAnd}, {"or", Op::kOr},
        };
        auto it = ops.find(t.text);
        if (it == ops.end()) fail(t, "operator '" + t.text + "' is not allowed in expressions");
        return Expr::apply(it->second, {expr(*t.args[0]), expr(*t.args[1])});
      }
      case Term::Kind::kCall: {
        static const std::map<std::string, Op> fns = {
            {"ceil", Op::kCeil}, {"floor", Op::kFloor}, {"abs", Op::kAbs}, {"min", Op::kMin}, {"max", Op::kMax},
        };
        if (auto it = fns.find(t.text); it != fns.end()) {
          std::vector<ExprPtr> args;
          for (const TermPtr& a : t.args) args.push_back(expr(*a));
          return Expr::apply(it->second, std::move(args));
        }
        if (t.text == "apply") {
          const Term& sym = *t.args[0];
          if (sym.kind != Term::Kind::kSymbol) fail(sym, "apply expects + or * as its first argument");
          return Expr::apply(sym.text == "+" ? Op::kAdd : Op::kMul, {expr(*t.args[1]), expr(*t.args[2])});
        }
        fail(t, "'" + t.text + "' is not a function");
      }
      case Term::Kind::kList:
      case Term::Kind::kComprehension:
        fail(t, "list used where a number is expected");
      case Term::Kind::kSymbol:
        fail(t, "operator symbol '" + t.text + "' used where a number is expected");
    }
    fail(t, "bad expression");
  }

 private:
  [[noreturn]] static void fail(const Term& t, const std::string& what) { throw SpecError(what, t.line, t.column); }

  BindingPtr lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if ((*it)->name == name) return *it;
    }
    return nullptr;
  }

  BindingPtr bound(const Term& name, const std::string& user) {
    if (name.kind != Term::Kind::kName) fail(name, user + " expects a search variable name");
    BindingPtr b = lookup(name.text);
    if (!b) fail(name, user + " to '" + name.text + "' outside the scope of a let binding it");
    return b;
  }

  // depth and discrepancies are per node, so a let feeding such a collector
  // keeps its variable in node locals rather than in a shared frame.
  static bool feeds_local_collector(const Term& t, const std::string& name) {
    if ((t.is_call("depth_count") || t.is_call("discrepancy_count")) && t.args[0]->is_name(name)) return true;
    for (const TermPtr& a : t.args) {
      if (feeds_local_collector(*a, name)) return true;
    }
    return false;
  }

  CombinatorPtr let(const Term& t) {
    const Term& name = *t.args[0];
    if (name.kind != Term::Kind::kName) fail(name, "let expects a variable name");
    if (lookup(name.text)) fail(name, "let '" + name.text + "' shadows an enclosing let of the same name");
    if (model_.has_name(name.text)) fail(name, "let '" + name.text + "' shadows a model variable");
    if (is_statistic(name.text)) fail(name, "'" + name.text + "' is a statistic and cannot be let-bound");
    ExprPtr init = expr(*t.args[1]);
    auto b = std::make_shared<Binding>(Binding{name.text, feeds_local_collector(*t.args[2], name.text)});
    scope_.push_back(b);
    CombinatorPtr body = combinator(*t.args[2]);
    scope_.pop_back();
    return std::make_shared<Let>(std::move(b), std::move(init), std::move(body));
  }

  std::vector<CombinatorPtr> combinator_list(const Term& t, const std::string& user) {
    if (t.kind != Term::Kind::kList) fail(t, user + " expects a list of searches");
    if (t.args.empty()) fail(t, user + " needs at least one search");
    std::vector<CombinatorPtr> out;
    for (const TermPtr& item : t.args) out.push_back(combinator(*item));
    return out;
  }

  VarId model_var(const Term& t) {
    try {
      return model_.resolve(t);
    } catch (const ModelError& e) {
      fail(t, e.what());
    }
  }

  std::vector<VarId> variables(const Term& t) {
    try {
      return model_.var_list(t);
    } catch (const ModelError& e) {
      fail(t, e.what());
    }
  }

  // Strategy arguments: a name, or random(seed).
  std::pair<std::string, std::uint64_t> strategy(const Term& t) {
    if (t.kind == Term::Kind::kName) return {t.text, opts_.seed};
    if (t.is_call("random") && t.args.size() <= 1) {
      if (t.args.empty()) return {"random", opts_.seed};
      double seed = detail::constant_value(*t.args[0]);
      if (seed < 0 || seed != std::floor(seed)) fail(t, "random seeds are non-negative integers");
      return {"random", static_cast<std::uint64_t>(seed)};
    }
    fail(t, "expected a strategy name, got " + to_text(t));
  }

  CombinatorPtr base_search(const Term& t) {
    static const std::map<std::string, VarSelect> selects = {
        {"input_order", VarSelect::kInputOrder}, {"firstfail", VarSelect::kFirstFail},
        {"first_fail", VarSelect::kFirstFail},   {"smallest", VarSelect::kSmallest},
        {"random", VarSelect::kRandom},
    };
    static const std::map<std::string, DomainSplit> splits = {
        {"min", DomainSplit::kMin},       {"max", DomainSplit::kMax},     {"median", DomainSplit::kMedian},
        {"split", DomainSplit::kSplit},   {"random", DomainSplit::kRandom},
    };
    std::vector<VarId> vars = variables(*t.args[0]);
    auto [sel_name, sel_seed] = strategy(*t.args[1]);
    auto [split_name, split_seed] = strategy(*t.args[2]);
    auto sel = selects.find(sel_name);
    if (sel == selects.end()) fail(*t.args[1], "unknown variable selection '" + sel_name + "'");
    auto split = splits.find(split_name);
    if (split == splits.end()) fail(*t.args[2], "unknown domain split '" + split_name + "'");
    // one generator drives both choices; mix the seeds when both are random
    std::uint64_t seed = sel->second == VarSelect::kRandom ? sel_seed : split_seed;
    if (sel->second == VarSelect::kRandom && split->second == DomainSplit::kRandom) {
      seed = sel_seed * 1000003u + split_seed;
    }
    return make_base_search(std::move(vars), sel->second, split->second, seed);
  }

  const Model& model_;
  ElaborateOptions opts_;
  std::vector<BindingPtr> scope_;
};

inline Heuristic elaborate(const TermPtr& core, const Model& model, ElaborateOptions opts = {}) {
  return Heuristic(Elaborator(model, opts).combinator(*core));
}

}  // namespace searchcomb
