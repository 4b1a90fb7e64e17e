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

// The layered portfolio stress harness: base_search wrapped in n levels of
// portfolio([..., prune]), run over an unconstrained model.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "searchcomb/combinators.hpp"
#include "searchcomb/model.hpp"

namespace searchcomb {

struct OverheadRow {
  int layers = 0;
  std::uint64_t nodes = 0;
  std::size_t solutions = 0;
  double millis = 0;  // best of the repetitions
};

inline std::string layered_spec(int layers) {
  std::string s = "base_search(x, input_order, min)";
  for (int k = 0; k < layers; ++k) s = "portfolio([" + s + ", prune])";
  return s;
}

inline CombinatorPtr layered_heuristic(const std::vector<VarId>& vars, int layers) {
  CombinatorPtr h = make_base_search(vars);
  for (int k = 0; k < layers; ++k) h = make_portfolio({h, make_prune()});
  return h;
}

// Repetitions are interleaved across layer counts, after one warm-up run,
// so that cache and frequency effects do not favour any layer count.
inline std::vector<OverheadRow> stress_overhead(const std::vector<int>& layer_counts, int vars, int size,
                                                int repeats = 3) {
  Model model = parse_model(stress_model(vars, size));
  std::vector<OverheadRow> rows;
  std::vector<Heuristic> heuristics;
  for (int layers : layer_counts) {
    rows.push_back({layers, 0, 0, 0});
    heuristics.emplace_back(layered_heuristic(model.array("x")->vars, layers));
  }
  if (!heuristics.empty()) Engine().run(heuristics[0], model.root_state());
  for (int rep = 0; rep < std::max(1, repeats); ++rep) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Engine engine;
      auto t0 = std::chrono::steady_clock::now();
      EngineResult r = engine.run(heuristics[k], model.root_state());
      std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
      rows[k].nodes = r.nodes_entered;
      rows[k].solutions = r.solutions.size();
      rows[k].millis = rep == 0 ? dt.count() : std::min(rows[k].millis, dt.count());
    }
  }
  return rows;
}

// Least-squares slope c of runtime(n) / runtime(0) - 1 = c * n through the
// origin.
inline double overhead_per_layer(const std::vector<OverheadRow>& rows) {
  double base = 0;
  for (const OverheadRow& r : rows) {
    if (r.layers == 0) base = r.millis;
  }
  double num = 0;
  double den = 0;
  for (const OverheadRow& r : rows) {
    num += r.layers * (r.millis / base - 1);
    den += static_cast<double>(r.layers) * r.layers;
  }
  return den == 0 ? 0 : num / den;
}

}  // namespace searchcomb
