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

// Size and depth of a core term, counted in combinators.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "searchcomb/term.hpp"

namespace searchcomb {

struct TreeShape {
  int combinators = 0;
  // longest chain of nested combinators, leaves included
  int depth = 0;
};

namespace detail {

// Positions of a primitive's arguments that hold sub-searches.
inline std::vector<std::size_t> search_arguments(const Term& t) {
  const std::string& f = t.text;
  if (f == "and" || f == "or" || f == "portfolio") return {0};
  if (f == "ifthenelse") return {1, 2};
  if (f == "restart" || f == "print") return {1};
  if (f == "let") return {2};
  if (f == "post") return t.args.size() == 2 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{};
  if (f.size() > 6 && f.compare(f.size() - 6, 6, "_count") == 0) return {1};
  return {};
}

}  // namespace detail

inline TreeShape shape(const Term& t) {
  TreeShape out{1, 1};
  if (t.kind != Term::Kind::kCall) return out;
  for (std::size_t k : detail::search_arguments(t)) {
    const Term& arg = *t.args[k];
    std::vector<const Term*> kids;
    if (arg.kind == Term::Kind::kList) {
      for (const TermPtr& item : arg.args) kids.push_back(item.get());
    } else {
      kids.push_back(&arg);
    }
    for (const Term* kid : kids) {
      TreeShape s = shape(*kid);
      out.combinators += s.combinators;
      out.depth = std::max(out.depth, s.depth + 1);
    }
  }
  return out;
}

}  // namespace searchcomb
