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

// Model files and the benchmark generators.
//
// A model file is line oriented:
//
//   # comment
//   var x in 0..6
//   array q[1..4] in 1..4
//   constraint q[1] + 2 * x != 3
//   constraint alldifferent(q)
//   objective x
//
// Constraints are linear comparisons, alldifferent over an array or a list
// of variables, `false`, and conjunctions of those.

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "searchcomb/errors.hpp"
#include "searchcomb/expand.hpp"
#include "searchcomb/kernel.hpp"
#include "searchcomb/parser.hpp"

namespace searchcomb {

struct ModelArray {
  std::string name;
  Value first_index = 1;
  std::vector<VarId> vars;
};

class Model {
 public:
  const std::vector<VarSpec>& vars() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::map<std::string, ModelArray>& arrays() const { return arrays_; }
  // Expression naming the objective, if the model declares one.
  const TermPtr& objective() const { return objective_; }

  std::optional<VarId> scalar(const std::string& name) const {
    auto it = scalars_.find(name);
    if (it == scalars_.end()) return std::nullopt;
    return it->second;
  }
  const ModelArray* array(const std::string& name) const {
    auto it = arrays_.find(name);
    return it == arrays_.end() ? nullptr : &it->second;
  }
  bool has_name(const std::string& name) const { return scalars_.count(name) || arrays_.count(name); }

  VarId add_var(const std::string& name, Value lo, Value hi) {
    if (has_name(name)) throw ModelError("duplicate name '" + name + "'");
    if (lo > hi) throw ModelError("empty domain " + std::to_string(lo) + ".." + std::to_string(hi) + " for '" + name + "'");
    VarId v{static_cast<std::uint32_t>(vars_.size())};
    vars_.push_back({name, lo, hi});
    scalars_[name] = v;
    return v;
  }

  void add_array(const std::string& name, Value first, Value last, Value lo, Value hi) {
    if (has_name(name)) throw ModelError("duplicate name '" + name + "'");
    if (lo > hi) throw ModelError("empty domain " + std::to_string(lo) + ".." + std::to_string(hi) + " for '" + name + "'");
    ModelArray a{name, first, {}};
    for (Value i = first; i <= last; ++i) {
      VarId v{static_cast<std::uint32_t>(vars_.size())};
      vars_.push_back({name + "[" + std::to_string(i) + "]", lo, hi});
      a.vars.push_back(v);
    }
    arrays_.emplace(name, std::move(a));
  }

  // Resolves a variable reference: a scalar name or name[constant].
  VarId resolve(const Term& t) const {
    if (t.kind == Term::Kind::kName) {
      if (auto v = scalar(t.text)) return *v;
      if (array(t.text)) throw ModelError("array '" + t.text + "' used where a variable is expected");
      throw ModelError("unknown variable '" + t.text + "'");
    }
    if (t.kind == Term::Kind::kIndex && t.args[0]->kind == Term::Kind::kName) {
      const ModelArray* a = array(t.args[0]->text);
      if (!a) throw ModelError("unknown array '" + t.args[0]->text + "'");
      double idx = detail::constant_value(*t.args[1]);
      auto k = static_cast<std::int64_t>(idx) - a->first_index;
      if (idx != std::floor(idx) || k < 0 || k >= static_cast<std::int64_t>(a->vars.size())) {
        throw ModelError("index " + format_number(idx) + " out of range for '" + a->name + "'");
      }
      return a->vars[static_cast<std::size_t>(k)];
    }
    throw ModelError("expected a variable, got " + to_text(t));
  }

  // Adds the constraints denoted by a constraint expression.
  void add_constraint(const Term& t) {
    if (t.is_name("true")) return;
    if (t.is_name("false")) {
      constraints_.push_back(False{});
      return;
    }
    if (t.kind == Term::Kind::kBinary && t.text == "and") {
      add_constraint(*t.args[0]);
      add_constraint(*t.args[1]);
      return;
    }
    if (t.is_call("alldifferent")) {
      constraints_.push_back(AllDifferent{var_list(*t.args[0])});
      return;
    }
    static const std::map<std::string, std::pair<Relation, bool>> rels = {
        {"=", {Relation::kEq, false}}, {"!=", {Relation::kNe, false}}, {"<", {Relation::kLt, false}},
        {"<=", {Relation::kLe, false}}, {">", {Relation::kLt, true}},  {">=", {Relation::kLe, true}},
    };
    auto it = t.kind == Term::Kind::kBinary ? rels.find(t.text) : rels.end();
    if (it == rels.end()) throw ModelError("unsupported constraint " + to_text(t));
    auto [rel, flip] = it->second;
    std::map<std::uint32_t, Value> coeffs;
    Value constant = 0;
    // lhs - rhs rel 0, or rhs - lhs for > and >=
    linear(*t.args[0], flip ? -1 : 1, coeffs, constant);
    linear(*t.args[1], flip ? 1 : -1, coeffs, constant);
    Linear lin{{}, rel, -constant};
    for (auto [v, c] : coeffs) {
      if (c != 0) lin.terms.push_back({c, VarId{v}});
    }
    constraints_.push_back(std::move(lin));
  }

  void set_objective(TermPtr t) {
    resolve(*t);
    objective_ = std::move(t);
  }

  std::vector<VarId> var_list(const Term& t) const {
    if (t.kind == Term::Kind::kName) {
      if (const ModelArray* a = array(t.text)) return a->vars;
    }
    if (t.kind == Term::Kind::kList) {
      std::vector<VarId> out;
      for (const TermPtr& item : t.args) {
        std::vector<VarId> part = var_list(*item);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    return {resolve(t)};
  }

  // Fresh solver state with every constraint posted (not yet propagated).
  State root_state() const {
    State s = new_state(vars_);
    for (const Constraint& c : constraints_) s.post(c);
    return s;
  }

 private:
  void linear(const Term& t, Value sign, std::map<std::uint32_t, Value>& coeffs, Value& constant) const {
    switch (t.kind) {
      case Term::Kind::kNumber:
        if (t.number != std::floor(t.number) || std::isinf(t.number)) {
          throw ModelError("constraint constants must be integers, got " + to_text(t));
        }
        constant += sign * static_cast<Value>(t.number);
        return;
      case Term::Kind::kName:
      case Term::Kind::kIndex:
        coeffs[resolve(t).index] += sign;
        return;
      case Term::Kind::kUnary:
        if (t.text == "-") {
          linear(*t.args[0], -sign, coeffs, constant);
          return;
        }
        break;
      case Term::Kind::kBinary:
        if (t.text == "+" || t.text == "-") {
          linear(*t.args[0], sign, coeffs, constant);
          linear(*t.args[1], t.text == "+" ? sign : -sign, coeffs, constant);
          return;
        }
        if (t.text == "*") {
          if (t.args[0]->kind == Term::Kind::kNumber) {
            linear(*t.args[1], sign * integer(*t.args[0]), coeffs, constant);
            return;
          }
          if (t.args[1]->kind == Term::Kind::kNumber) {
            linear(*t.args[0], sign * integer(*t.args[1]), coeffs, constant);
            return;
          }
          throw ModelError("non-linear product " + to_text(t));
        }
        break;
      default:
        break;
    }
    throw ModelError("unsupported term " + to_text(t) + " in a constraint");
  }

  static Value integer(const Term& t) {
    if (t.number != std::floor(t.number) || std::isinf(t.number)) {
      throw ModelError("coefficients must be integers, got " + to_text(t));
    }
    return static_cast<Value>(t.number);
  }

  std::vector<VarSpec> vars_;
  std::map<std::string, VarId> scalars_;
  std::map<std::string, ModelArray> arrays_;
  std::vector<Constraint> constraints_;
  TermPtr objective_;
};

namespace detail {

inline Value constant_integer(const std::string& text, int line) {
  try {
    double v = constant_value(*parse_term(text));
    if (v != std::floor(v) || std::isinf(v)) throw ModelError("");
    return static_cast<Value>(v);
  } catch (const Error&) {
    throw ModelError("line " + std::to_string(line) + ": expected an integer, got '" + text + "'");
  }
}

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits "lo..hi" into its two halves.
inline std::pair<Value, Value> range(const std::string& text, int line) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw ModelError("line " + std::to_string(line) + ": expected lo..hi");
  return {constant_integer(trim(text.substr(0, dots)), line), constant_integer(trim(text.substr(dots + 2)), line)};
}

}  // namespace detail

inline Model parse_model(std::string_view text) {
  Model m;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = detail::trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    auto space = s.find_first_of(" \t");
    std::string keyword = s.substr(0, space);
    std::string rest = space == std::string::npos ? "" : detail::trim(s.substr(space));
    auto where = [line](const std::string& what) { return "line " + std::to_string(line) + ": " + what; };
    try {
      if (keyword == "var" || keyword == "array") {
        auto in_pos = rest.find(" in ");
        if (in_pos == std::string::npos) throw ModelError("expected 'in'");
        std::string decl = detail::trim(rest.substr(0, in_pos));
        auto [lo, hi] = detail::range(detail::trim(rest.substr(in_pos + 4)), line);
        if (keyword == "var") {
          m.add_var(decl, lo, hi);
        } else {
          auto open = decl.find('[');
          if (open == std::string::npos || decl.back() != ']') throw ModelError("expected name[first..last]");
          auto [first, last] = detail::range(decl.substr(open + 1, decl.size() - open - 2), line);
          m.add_array(detail::trim(decl.substr(0, open)), first, last, lo, hi);
        }
      } else if (keyword == "constraint") {
        m.add_constraint(*parse_term(rest));
      } else if (keyword == "objective") {
        m.set_objective(parse_term(rest));
      } else {
        throw ModelError("unknown declaration '" + keyword + "'");
      }
    } catch (const ModelError& e) {
      std::string msg = e.what();
      throw ModelError(msg.rfind("line ", 0) == 0 ? msg : where(msg));
    } catch (const SpecError& e) {
      throw ModelError(where(e.what()));
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Benchmark generators. Each returns model file text.

inline std::string queens_model(int n) {
  std::ostringstream os;
  os << "# " << n << " queens, one per row, q[i] is the column\n";
  os << "array q[1.." << n << "] in 1.." << n << "\n";
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      os << "constraint q[" << i << "] != q[" << j << "]\n";
      os << "constraint q[" << i << "] - q[" << j << "] != " << j - i << "\n";
      os << "constraint q[" << i << "] - q[" << j << "] != " << i - j << "\n";
    }
  }
  return os.str();
}

// Marks x[1] = 0 < x[2] < ... < x[m]; d holds every pairwise difference.
// The first difference is kept below the last one to break the mirror
// symmetry.
inline std::string golomb_model(int m) {
  std::ostringstream os;
  int limit = m * m;
  os << "# golomb ruler with " << m << " marks\n";
  os << "array x[1.." << m << "] in 0.." << limit << "\n";
  int pairs = m * (m - 1) / 2;
  if (pairs > 0) os << "array d[1.." << pairs << "] in 1.." << limit << "\n";
  os << "constraint x[1] = 0\n";
  for (int i = 1; i < m; ++i) os << "constraint x[" << i << "] < x[" << i + 1 << "]\n";
  int k = 0;
  int first = 0;
  int last = 0;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      ++k;
      os << "constraint d[" << k << "] = x[" << j << "] - x[" << i << "]\n";
      if (i == 1 && j == 2) first = k;
      if (i == m - 1 && j == m) last = k;
    }
  }
  if (pairs > 1) os << "constraint alldifferent(d)\n";
  if (m >= 3) os << "constraint d[" << first << "] < d[" << last << "]\n";
  os << "objective x[" << m << "]\n";
  return os.str();
}

inline std::string stress_model(int vars, int size) {
  std::ostringstream os;
  os << "# " << vars << " unconstrained variables over " << size << " values\n";
  os << "array x[1.." << vars << "] in 0.." << size - 1 << "\n";
  return os.str();
}

}  // namespace searchcomb
