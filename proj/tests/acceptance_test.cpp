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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "searchcomb.hpp"

namespace {

using namespace searchcomb;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string sample(const std::string& name) { return read_file(std::string(SAMPLES_DIR) + "/" + name); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::set<Assignment> as_set(const EngineResult& r) { return {r.solutions.begin(), r.solutions.end()}; }

// 1. dfs over stress(7,7) with base_search(input_order, min).
Outcome stress_tree() {
  Model m = parse_model(stress_model(7, 7));
  auto t0 = std::chrono::steady_clock::now();
  EngineResult r = solve(m, "base_search(x, input_order, min)");
  double secs = seconds_since(t0);
  const std::uint64_t published = 1647085;
  std::uint64_t recomputed = oracle::min_split_tree_size(7, 7);
  Outcome o;
  o.pass = r.nodes_entered == published && recomputed == published && secs < 30;
  o.detail = std::to_string(r.nodes_entered) + " nodes (expected " + std::to_string(published) + "), " +
             std::to_string(secs) + " s";
  return o;
}

// 2. Layered portfolio([..., prune]) stacks on stress(6,6).
Outcome overhead() {
  std::vector<OverheadRow> rows = stress_overhead({0, 1, 2, 5, 10, 20}, 6, 6, 7);
  Outcome o;
  std::ostringstream os;
  for (const OverheadRow& r : rows) {
    if (r.nodes != rows[0].nodes || r.solutions != rows[0].solutions) o.pass = false;
    os << "n=" << r.layers << ":" << r.nodes << "/" << static_cast<int>(r.millis * 10) / 10.0 << "ms ";
  }
  double c = overhead_per_layer(rows);
  if (c > 0.25) o.pass = false;
  os << "c=" << c;
  o.detail = os.str();
  return o;
}

// 3. Exhaustiveness rules over the combinator templates.
Outcome exhaustiveness() {
  Model m = parse_model("var x in 0..1\nvar y in 0..1\n");
  auto e = [](const std::string& vs) { return "base_search(" + vs + ", input_order, min)"; };
  // prunes below every node it handles
  auto p = [&](const std::string& vs) { return "and([" + e(vs) + ", prune])"; };
  struct Case {
    std::string spec;
    bool expected;
  };
  std::vector<Case> cases;
  for (bool a : {true, false}) {
    for (bool b : {true, false}) {
      auto pick = [&](bool exh, const std::string& vs) { return exh ? e(vs) : p(vs); };
      std::string xy = "[x, y]";
      cases.push_back({"and([" + pick(a, "x") + ", " + pick(b, "y") + "])", a && b});
      cases.push_back({"or([" + pick(a, xy) + ", " + pick(b, xy) + "])", a && b});
      cases.push_back({"portfolio([" + pick(a, xy) + ", " + pick(b, xy) + "])", a || b});
      cases.push_back({"ifthenelse(discrepancies < 1, " + pick(a, xy) + ", " + pick(b, xy) + ")", a && b});
    }
  }
  std::string E = e("[x, y]");
  std::string P = p("[x, y]");
  cases.push_back({"restart(true, " + E + ")", true});
  cases.push_back({"restart(false, " + E + ")", true});
  cases.push_back({"restart(false, " + P + ")", false});
  cases.push_back({"let(k, 0, restart(k < 2, and([assign(k, k + 1), " + P + "])))", false});
  cases.push_back({"let(k, 0, restart(true, and([assign(k, k + 1), ifthenelse(k < 2, " + P + ", " + E + ")])))", true});
  Outcome o;
  int ok = 0;
  for (const Case& c : cases) {
    EngineResult r = solve(m, c.spec);
    if (r.exhaustive == c.expected) {
      ++ok;
    } else {
      o.pass = false;
      o.detail += "[mismatch: " + c.spec + "] ";
    }
  }
  o.detail += std::to_string(ok) + "/" + std::to_string(cases.size()) + " combinations agree";
  return o;
}

// 4. once and exh_once on a three-solution model.
Outcome once_variants() {
  Model m = parse_model("var x in 0..2\n");
  Outcome o;
  std::size_t all = solve(m, "base_search(x, input_order, min)").solutions.size();
  EngineResult once = solve(m, "once(base_search(x, input_order, min))");
  EngineResult exh = solve(m, "exh_once(base_search(x, input_order, min))");
  o.pass = all == 3 && once.solutions.size() == 1 && !once.exhaustive && exh.solutions.size() == 1 && exh.exhaustive;
  o.detail = "model has " + std::to_string(all) + " solutions; once: " + std::to_string(once.solutions.size()) +
             (once.exhaustive ? " exhaustive" : " non-exhaustive") + "; exh_once: " +
             std::to_string(exh.solutions.size()) + (exh.exhaustive ? " exhaustive" : " non-exhaustive");
  return o;
}

// 5. bab and dicho on golomb(4) and golomb(5).
Outcome optimisation() {
  Outcome o;
  for (int marks : {4, 5}) {
    int expected = oracle::golomb_optimum(marks, marks * marks);
    Model m = parse_model(golomb_model(marks));
    std::string last = "x[" + std::to_string(marks) + "]";
    std::string bs = "base_search(x, input_order, min)";
    for (const std::string& spec :
         {"bab(" + last + ", " + bs + ")", "dicho(" + bs + ", " + last + ", 0, " + std::to_string(marks * marks) + ")"}) {
      auto t0 = std::chrono::steady_clock::now();
      EngineResult r = solve(m, spec);
      double secs = seconds_since(t0);
      long found = r.solutions.empty() ? -1 : static_cast<long>(*r.solutions.back().values[marks - 1]);
      if (found != expected || secs >= 10) o.pass = false;
      o.detail += "golomb" + std::to_string(marks) + " " + spec.substr(0, spec.find('(')) + "=" +
                  std::to_string(found) + " ";
    }
    o.detail += "(optimum " + std::to_string(expected) + ") ";
  }
  return o;
}

// Nodes of the binary stress(vars, 2) tree whose discrepancy is <= budget.
std::uint64_t nodes_within(int vars, int budget) {
  if (budget < 0) return 0;
  if (vars == 0) return 1;
  return 1 + nodes_within(vars - 1, budget) + nodes_within(vars - 1, budget - 1);
}

// 6. lds(inf, bs) on stress(3,2), checked on the message trace.
Outcome lds_order() {
  Model m = parse_model(stress_model(3, 2));
  CompiledSpec spec = compile("lds(inf, base_search(x, input_order, min))", m);
  Engine engine({.trace = true});
  EngineResult r = engine.run(spec.heuristic, m.root_state());
  EngineResult plain = solve(m, "base_search(x, input_order, min)");

  // let(n) / restart / portfolio / let / ifthenelse / collector / base_search
  const std::string loop = "0.0.0";
  const std::string searched = "0.0.0.0.0.0.0";
  const std::string pruned = "0.0.0.0.0.1";
  std::map<std::uint64_t, std::uint64_t> discrepancy;
  std::map<std::uint64_t, std::uint64_t> children_seen;
  std::vector<std::vector<std::uint64_t>> searched_by_group;
  std::vector<std::vector<std::uint64_t>> pruned_by_group;
  for (const TraceEvent& e : r.trace) {
    if (e.event == Message::kInit && e.path == "0") {
      std::uint64_t rank = children_seen[*e.parent]++;
      discrepancy[e.node] = discrepancy[*e.parent] + rank;
    } else if (e.event == Message::kStart && e.path == loop) {
      searched_by_group.emplace_back();
      pruned_by_group.emplace_back();
    } else if (e.event == Message::kEnter && e.path == searched) {
      searched_by_group.back().push_back(discrepancy[e.node]);
    } else if (e.event == Message::kEnter && e.path == pruned) {
      pruned_by_group.back().push_back(discrepancy[e.node]);
    }
  }
  Outcome o;
  std::ostringstream os;
  std::uint64_t previous_bound = 0;
  for (std::size_t k = 0; k < searched_by_group.size(); ++k) {
    const auto& g = searched_by_group[k];
    std::uint64_t bound = g.empty() ? 0 : *std::max_element(g.begin(), g.end());
    bool ok = bound == k && bound >= previous_bound && g.size() == nodes_within(3, static_cast<int>(k));
    for (std::uint64_t d : pruned_by_group[k]) ok = ok && d > k;
    o.pass = o.pass && ok;
    previous_bound = bound;
    os << "group " << k << ": " << g.size() << " nodes, max discrepancy " << bound << "; ";
  }
  bool same_solutions = as_set(r) == as_set(plain);
  o.pass = o.pass && searched_by_group.size() == 4 && same_solutions && r.exhaustive;
  os << (same_solutions ? "solution set equals base_search" : "solution sets differ");
  o.detail = os.str();
  return o;
}

// 7. geom_restart against a single failure-limited run.
Outcome geometric_restarts() {
  Model m = parse_model(sample("pigeon.model"));
  const std::string bs = "base_search([y, p], input_order, min)";
  std::uint64_t failures_first_branch = solve(m, "post(y = 0, " + bs + ")").exits(ExitStatus::kFailure);
  EngineResult limited = solve(m, "limit(failures < 100, " + bs + ")");
  EngineResult restarted = solve(m, read_file(std::string(SAMPLES_DIR) + "/pigeon.search"), {.mode = SearchMode::kFirst});
  Outcome o;
  o.pass = failures_first_branch > 100 && limited.solutions.empty() && !restarted.solutions.empty();
  o.detail = std::to_string(failures_first_branch) + " failures before the first solution; limit: " +
             std::to_string(limited.solutions.size()) + " solutions; geom_restart: " +
             std::to_string(restarted.solutions.size()) + " solution after " +
             std::to_string(restarted.nodes_entered) + " nodes";
  return o;
}

// 8. Size and depth of the expanded job-shop heuristic.
Outcome jobshop_shape() {
  TermPtr t = expand_program(parse_program(sample("jobshop.search")));
  TreeShape s = shape(*t);
  // depth is counted from the engine, which sits on top of every stack
  int depth = s.depth + 1;
  Outcome o;
  o.pass = s.combinators == 17 && depth == 11;
  o.detail = std::to_string(s.combinators) + " combinators, " + std::to_string(depth) + " deep";
  return o;
}

// Renames let-bound variables to v1, v2, ... in order of appearance.
TermPtr normalise_names(const TermPtr& t, std::map<std::string, std::string>& names) {
  if (t->is_call("let") && t->args[0]->kind == Term::Kind::kName && !names.count(t->args[0]->text)) {
    names[t->args[0]->text] = "v" + std::to_string(names.size() + 1);
  }
  if (t->kind == Term::Kind::kName) {
    auto it = names.find(t->text);
    return it == names.end() ? t : make_name(it->second);
  }
  auto copy = std::make_shared<Term>(*t);
  for (TermPtr& a : copy->args) a = normalise_names(a, names);
  return copy;
}

// 9. Lowering of once(s) against the golden core term.
Outcome lowering_golden() {
  TermPtr lowered = lower_statistics(expand_program(parse_program(sample("once.search"))));
  TermPtr golden = parse_term(sample("golden/once_core.txt"));
  std::map<std::string, std::string> a_names;
  std::map<std::string, std::string> b_names;
  bool equal = same(*normalise_names(lowered, a_names), *normalise_names(golden, b_names));
  Outcome o;
  o.pass = equal;
  o.detail = to_text(*lowered);
  return o;
}

// 10. Queens solution counts under several exhaustive heuristics.
Outcome queens_counts() {
  struct Variant {
    std::string spec;
    QueueKind queue;
  };
  std::vector<Variant> variants = {
      {"base_search(q, input_order, min)", QueueKind::kDfs},
      {"base_search(q, firstfail, median)", QueueKind::kDfs},
      {"base_search(q, smallest, split)", QueueKind::kBfs},
      {"and([base_search([q[1], q[2]], input_order, max), base_search(q, firstfail, min)])", QueueKind::kDfs},
      {"or([post(false), base_search(q, random(3), random(5))])", QueueKind::kDfs},
      {"portfolio([base_search(q, input_order, split), prune])", QueueKind::kBfs},
  };
  Outcome o;
  for (int n : {4, 5, 6}) {
    int expected = oracle::queens_count(n);
    Model m = parse_model(queens_model(n));
    int agree = 0;
    for (const Variant& v : variants) {
      EngineResult r = solve(m, v.spec, {.queue = v.queue});
      if (static_cast<int>(r.solutions.size()) == expected && r.exhaustive) {
        ++agree;
      } else {
        o.pass = false;
        o.detail += "[queens" + std::to_string(n) + " " + v.spec + ": " + std::to_string(r.solutions.size()) + "] ";
      }
    }
    o.detail += "queens" + std::to_string(n) + "=" + std::to_string(expected) + " (" + std::to_string(agree) + "/" +
                std::to_string(variants.size()) + " variants) ";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {1, "stress tree node count", stress_tree},
      {2, "portfolio layer overhead", overhead},
      {3, "exhaustiveness rules", exhaustiveness},
      {4, "once / exh_once", once_variants},
      {5, "bab and dicho optima", optimisation},
      {6, "lds discrepancy order", lds_order},
      {7, "geom_restart completeness", geometric_restarts},
      {8, "job-shop macro shape", jobshop_shape},
      {9, "once lowering golden", lowering_golden},
      {10, "queens solution counts", queens_counts},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
