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
// Small helpers shared by the unit tests.

#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "searchcomb/combinators.hpp"
#include "searchcomb/engine.hpp"

namespace searchcomb::testing {

inline State stress_state(int vars, int size) {
  std::vector<VarSpec> specs;
  for (int k = 0; k < vars; ++k) specs.push_back({"x" + std::to_string(k), 0, size - 1});
  return new_state(specs);
}

inline std::vector<VarId> var_range(std::uint32_t from, std::uint32_t to) {
  std::vector<VarId> out;
  for (std::uint32_t v = from; v < to; ++v) out.push_back(VarId{v});
  return out;
}

inline std::vector<VarId> all_vars(const State& s) { return var_range(0, static_cast<std::uint32_t>(s.num_vars())); }

inline EngineResult run(CombinatorPtr root, State s, EngineOptions opts = {}) {
  Heuristic h(std::move(root));
  Engine engine(opts);
  return engine.run(h, std::move(s));
}

inline std::set<Assignment> solution_set(const EngineResult& r) {
  return std::set<Assignment>(r.solutions.begin(), r.solutions.end());
}

// One line per event: "<event> <node>[<parent] <path>[ <status>]".
inline std::string format_trace(const std::vector<TraceEvent>& trace) {
  std::ostringstream os;
  for (const TraceEvent& e : trace) {
    os << to_string(e.event) << ' ' << e.node;
    if (e.parent) os << '<' << *e.parent;
    os << ' ' << e.path;
    if (e.status) os << ' ' << to_string(*e.status);
    os << '\n';
  }
  return os.str();
}

}  // namespace searchcomb::testing
