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

// Statistic lowering. A condition of ifthenelse that mentions a statistic
// reads a fresh let-bound variable instead, and the then-branch is wrapped
// in the collector that keeps that variable up to date:
//
//   ifthenelse(solutions < 1, s, prune)
//     => let($solutions1, 0, ifthenelse($solutions1 < 1,
//                                       solution_count($solutions1, s), prune))

#pragma once

#include <map>
#include <string>
#include <vector>

#include "searchcomb/errors.hpp"
#include "searchcomb/term.hpp"

namespace searchcomb {

// Statistic name in conditions -> collector primitive.
inline const std::map<std::string, std::string>& statistic_collectors() {
  static const std::map<std::string, std::string> table = {
      {"solutions", "solution_count"}, {"failures", "failure_count"},
      {"nodes", "node_count"},         {"depth", "depth_count"},
      {"discrepancies", "discrepancy_count"}, {"time", "time_count"},
  };
  return table;
}

inline bool is_statistic(const std::string& name) { return statistic_collectors().count(name) > 0; }

class Lowering {
 public:
  TermPtr run(const TermPtr& t) { return lower(t); }

 private:
  TermPtr lower(const TermPtr& t) {
    if (t->is_call("ifthenelse") && t->args.size() == 3) return lower_ite(*t);
    if (t->is_call("let") && !t->args.empty() && t->args[0]->kind == Term::Kind::kName &&
        is_statistic(t->args[0]->text)) {
      throw SpecError("'" + t->args[0]->text + "' is a statistic and cannot be let-bound", t->line, t->column);
    }
    if (t->kind == Term::Kind::kName && is_statistic(t->text)) {
      throw SpecError("statistic '" + t->text + "' may only appear in an ifthenelse condition", t->line,
                      t->column);
    }
    if (t->args.empty()) return t;
    auto copy = std::make_shared<Term>(*t);
    for (TermPtr& a : copy->args) a = lower(a);
    return copy;
  }

  TermPtr lower_ite(const Term& ite) {
    std::vector<std::string> stats;
    find_statistics(*ite.args[0], stats);
    std::map<std::string, TermPtr> fresh;
    for (const std::string& s : stats) {
      fresh[s] = make_name("$" + s + std::to_string(++counter_), ite.line, ite.column);
    }
    TermPtr cond = rename(ite.args[0], fresh);
    TermPtr then_branch = lower(ite.args[1]);
    TermPtr else_branch = lower(ite.args[2]);
    for (const std::string& s : stats) {
      then_branch = make_call(statistic_collectors().at(s), {fresh[s], then_branch}, ite.line, ite.column);
    }
    TermPtr out = make_call("ifthenelse", {cond, then_branch, else_branch}, ite.line, ite.column);
    for (auto it = stats.rbegin(); it != stats.rend(); ++it) {
      out = make_call("let", {fresh[*it], make_number(0), out}, ite.line, ite.column);
    }
    return out;
  }

  // Distinct statistic names of a condition, in order of first appearance.
  static void find_statistics(const Term& t, std::vector<std::string>& out) {
    if (t.kind == Term::Kind::kName && is_statistic(t.text)) {
      for (const std::string& s : out) {
        if (s == t.text) return;
      }
      out.push_back(t.text);
    }
    for (const TermPtr& a : t.args) find_statistics(*a, out);
  }

  static TermPtr rename(const TermPtr& t, const std::map<std::string, TermPtr>& fresh) {
    if (t->kind == Term::Kind::kName) {
      auto it = fresh.find(t->text);
      return it == fresh.end() ? t : it->second;
    }
    if (t->args.empty()) return t;
    auto copy = std::make_shared<Term>(*t);
    for (TermPtr& a : copy->args) a = rename(a, fresh);
    return copy;
  }

  int counter_ = 0;
};

inline TermPtr lower_statistics(const TermPtr& t) { return Lowering().run(t); }

}  // namespace searchcomb
