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

// Umbrella header and the text-to-heuristic pipeline:
// parse, expand macros, lower statistics, elaborate over a model.

#pragma once

#include <string_view>

#include "searchcomb/bench.hpp"
#include "searchcomb/combinators.hpp"
#include "searchcomb/domain.hpp"
#include "searchcomb/elaborate.hpp"
#include "searchcomb/engine.hpp"
#include "searchcomb/errors.hpp"
#include "searchcomb/expand.hpp"
#include "searchcomb/kernel.hpp"
#include "searchcomb/lower.hpp"
#include "searchcomb/model.hpp"
#include "searchcomb/parser.hpp"
#include "searchcomb/shape.hpp"
#include "searchcomb/stdlib.hpp"
#include "searchcomb/term.hpp"

namespace searchcomb {

struct CompiledSpec {
  TermPtr expanded;  // after macro expansion
  TermPtr core;      // after statistic lowering
  Heuristic heuristic;
};

inline CompiledSpec compile(std::string_view spec_text, const Model& model, ElaborateOptions opts = {}) {
  CompiledSpec out;
  out.expanded = expand_program(parse_program(spec_text));
  out.core = lower_statistics(out.expanded);
  out.heuristic = elaborate(out.core, model, opts);
  return out;
}

// Compiles and runs a specification against a model.
inline EngineResult solve(const Model& model, std::string_view spec_text, EngineOptions engine_opts = {},
                          ElaborateOptions opts = {}) {
  CompiledSpec spec = compile(spec_text, model, opts);
  Engine engine(engine_opts);
  return engine.run(spec.heuristic, model.root_state());
}

}  // namespace searchcomb
