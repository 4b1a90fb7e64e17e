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

// Brute-force reference implementations used as test oracles. Nothing in
// here calls into the propagation or search code it is checking.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "searchcomb/kernel.hpp"

namespace searchcomb::oracle {

using Assignment = std::vector<Value>;

inline bool satisfies(const Constraint& c, const Assignment& a) {
  if (std::holds_alternative<False>(c)) return false;
  if (const auto* ad = std::get_if<AllDifferent>(&c)) {
    std::set<Value> seen;
    for (VarId v : ad->vars) {
      if (!seen.insert(a[v.index]).second) return false;
    }
    return true;
  }
  const auto& lin = std::get<Linear>(c);
  Value sum = 0;
  for (const LinearTerm& t : lin.terms) sum += t.coeff * a[t.var.index];
  switch (lin.rel) {
    case Relation::kEq: return sum == lin.rhs;
    case Relation::kLe: return sum <= lin.rhs;
    case Relation::kLt: return sum < lin.rhs;
    case Relation::kNe: return sum != lin.rhs;
  }
  return false;
}

// Calls f on every assignment drawn from `domains` (lists of values).
inline void enumerate(const std::vector<std::vector<Value>>& domains,
                      const std::function<void(const Assignment&)>& f) {
  Assignment a(domains.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == domains.size()) {
      f(a);
      return;
    }
    for (Value v : domains[k]) {
      a[k] = v;
      rec(k + 1);
    }
  };
  if (std::all_of(domains.begin(), domains.end(), [](const auto& d) { return !d.empty(); })) rec(0);
}

inline std::vector<Assignment> solutions(const std::vector<std::vector<Value>>& domains,
                                         const std::vector<Constraint>& cs) {
  std::vector<Assignment> out;
  enumerate(domains, [&](const Assignment& a) {
    for (const Constraint& c : cs) {
      if (!satisfies(c, a)) return;
    }
    out.push_back(a);
  });
  return out;
}

// Per-variable set of values that appear in some solution.
inline std::vector<std::set<Value>> supports(const std::vector<std::vector<Value>>& domains,
                                             const std::vector<Constraint>& cs) {
  std::vector<std::set<Value>> sup(domains.size());
  for (const Assignment& a : solutions(domains, cs)) {
    for (std::size_t k = 0; k < a.size(); ++k) sup[k].insert(a[k]);
  }
  return sup;
}

// Number of nodes of the binary min-split tree (x = min | x > min) over
// `vars` unconstrained variables of `size` values each, counted by
// recursion on the tree shape.
inline std::uint64_t min_split_tree_size(int vars, int size) {
  std::function<std::uint64_t(int, int)> subtree = [&](int remaining, int current) -> std::uint64_t {
    if (remaining == 0) return 1;
    if (current == 1) return subtree(remaining - 1, size);
    return 1 + subtree(remaining - 1, size) + subtree(remaining, current - 1);
  };
  return subtree(vars, size);
}

// Sorted mark positions of every Golomb ruler with `marks` marks and
// length <= max_len; returns the minimum length (or -1).
inline int golomb_optimum(int marks, int max_len) {
  int best = -1;
  std::vector<int> ruler{0};
  std::function<void()> rec = [&]() {
    if (static_cast<int>(ruler.size()) == marks) {
      int len = ruler.back();
      if (best < 0 || len < best) best = len;
      return;
    }
    for (int next = ruler.back() + 1; next <= max_len; ++next) {
      if (best >= 0 && next >= best) break;
      std::set<int> diffs;
      bool ok = true;
      ruler.push_back(next);
      for (std::size_t i = 0; i < ruler.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < ruler.size() && ok; ++j) ok = diffs.insert(ruler[j] - ruler[i]).second;
      }
      if (ok) rec();
      ruler.pop_back();
    }
  };
  rec();
  return best;
}

inline int queens_count(int n) {
  int count = 0;
  std::vector<int> q(n);
  std::function<void(int)> rec = [&](int row) {
    if (row == n) {
      ++count;
      return;
    }
    for (int c = 0; c < n; ++c) {
      bool ok = true;
      for (int r = 0; r < row && ok; ++r) ok = q[r] != c && std::abs(q[r] - c) != row - r;
      if (ok) {
        q[row] = c;
        rec(row + 1);
      }
    }
  };
  rec(0);
  return count;
}

}  // namespace searchcomb::oracle
