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
// The built-in macro library, written in the specification language itself.

#pragma once

#include <string_view>
#include <vector>

#include "searchcomb/parser.hpp"

namespace searchcomb {

inline constexpr std::string_view kStdlibSource = R"(
def limit(c, s) = ifthenelse(c, s, prune);
def once(s) = limit(solutions < 1, s);
def exh_once(s) = ifthenelse(solutions < 1, s, post(false));
def hotstart(c, s1, s2) = portfolio([limit(c, s1), s2]);

// assign is exhaustive, so the growth step and prune share one and()
// to keep prune reachable from the portfolio.
def geom_restart(s) =
  let(maxfails, 100,
      restart(true, portfolio([limit(failures < maxfails, s),
                               and([assign(maxfails, maxfails * 1.5), prune])])));

def bab(obj, s) = let(best, inf, post(obj < best, and([s, assign(best, obj)])));

def restart_bab(obj, s) =
  let(best, inf, restart(true, and([post(obj < best), once(s), assign(best, obj)])));

def for(v, l, u, s) =
  let(v, l, restart(v <= u, portfolio([s, and([assign(v, v + 1), prune])])));

def lds(l, s) = for(n, 0, l, limit(discrepancies <= n, s));

def ir(p, l, op, i, u, s) =
  let(n, l, restart(n <= u, and([assign(n, apply(op, n, i)), limit(p <= n, s)])));

def id(s) = ir(depth, 0, +, 1, inf, s);

def restart_flip(p, l, i, u, s1, s2) =
  let(flip, 1, ir(p, l, *, i, u, and([assign(flip, 1 - flip), ifthenelse(flip = 1, s1, s2)])));

def probe(c, obj, s1, s2) =
  let(best1, inf, let(best2, inf,
      portfolio([limit(c, and([s1, assign(best1, obj)])),
                 limit(c, and([s2, assign(best2, obj)])),
                 ifthenelse(best1 <= best2, s1, s2)])));

// Bisection on [lb, ub]. The loop runs while the interval is non-empty and
// only raises the lower bound when the lower half had no solution.
def dicho(s, obj, lb, ub) =
  let(l, lb, let(u, ub,
      restart(l <= u,
        let(h, l + ceil((u - l) / 2),
          once(or([and([post(l <= obj and obj <= h), s, assign(u, obj - 1)]),
                   ifthenelse(u >= h, and([assign(l, h + 1), prune]), prune)]))))));
)";

inline std::vector<MacroDef> load_stdlib() { return parse_program(kStdlibSource).defs; }

}  // namespace searchcomb
