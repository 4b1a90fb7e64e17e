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

// A deliberately small finite-domain solver: bounds consistency for linear
// constraints, value elimination for alldifferent, copy-based state.

#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "searchcomb/domain.hpp"
#include "searchcomb/errors.hpp"

namespace searchcomb {

struct VarId {
  std::uint32_t index = 0;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

// Kernel-level relations; > and >= are normalised away by negation.
enum class Relation { kEq, kLe, kLt, kNe };

struct LinearTerm {
  Value coeff;
  VarId var;
};

struct Linear {
  std::vector<LinearTerm> terms;
  Relation rel;
  Value rhs;
};

struct AllDifferent {
  std::vector<VarId> vars;
};

struct False {};

using Constraint = std::variant<Linear, AllDifferent, False>;

enum class Status { kUnknown, kStable, kFailed };

struct VarSpec {
  std::string name;
  Value lo;
  Value hi;
};

struct DomainQuery {
  Value min;
  Value max;
  std::uint64_t size;
  bool is_fixed;
  friend bool operator==(const DomainQuery&, const DomainQuery&) = default;
};

namespace detail {

inline Value floor_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Value ceil_div(Value a, Value b) {
  Value q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

// Persistent list of registered propagators; copies of a State share it.
struct PropagatorCell {
  Constraint constraint;
  std::shared_ptr<const PropagatorCell> next;
};

}  // namespace detail

class State {
 public:
  State() = default;

  explicit State(const std::vector<VarSpec>& vars) {
    std::unordered_set<std::string> seen;
    auto names = std::make_shared<std::vector<std::string>>();
    for (const VarSpec& v : vars) {
      if (!seen.insert(v.name).second) throw ModelError("duplicate variable name '" + v.name + "'");
      if (v.lo > v.hi) throw ModelError("empty initial domain for '" + v.name + "'");
      names->push_back(v.name);
      domains_.emplace_back(v.lo, v.hi);
    }
    names_ = std::move(names);
  }

  std::size_t num_vars() const { return domains_.size(); }
  const std::string& name(VarId v) const { return (*names_)[v.index]; }
  const Domain& domain(VarId v) const { return domains_[v.index]; }
  Status status() const { return status_; }

  DomainQuery query(VarId v) const {
    const Domain& d = domains_[v.index];
    if (d.empty()) return {0, -1, 0, false};
    return {d.min(), d.max(), d.size(), d.is_fixed()};
  }

  // Registers a constraint; the work happens in propagate().
  void post(Constraint c) {
    pending_.push_back(std::move(c));
    if (status_ != Status::kFailed) status_ = Status::kUnknown;
  }

  std::size_t num_propagators() const {
    std::size_t n = pending_.size();
    for (auto* cell = propagators_.get(); cell; cell = cell->next.get()) ++n;
    return n;
  }

  Status propagate() {
    if (status_ == Status::kFailed) return status_;
    for (Constraint& c : pending_) {
      if (!absorb(std::move(c))) return fail();
    }
    pending_.clear();
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto* cell = propagators_.get(); cell; cell = cell->next.get()) {
        bool touched = false;
        if (!run(cell->constraint, touched)) return fail();
        changed = changed || touched;
      }
    }
    status_ = Status::kStable;
    return status_;
  }

  // Direct domain surgery, used by tests and by the model loader.
  Domain& mutable_domain(VarId v) { return domains_[v.index]; }

 private:
  Status fail() {
    pending_.clear();
    status_ = Status::kFailed;
    return status_;
  }

  // Unary constraints are applied once and dropped (they are entailed
  // afterwards); everything else joins the persistent propagator list.
  bool absorb(Constraint c) {
    if (std::holds_alternative<False>(c)) return false;
    if (auto* lin = std::get_if<Linear>(&c); lin && lin->terms.size() == 1) {
      bool touched = false;
      return run(c, touched);
    }
    bool touched = false;
    if (!run(c, touched)) return false;
    propagators_ = std::make_shared<const detail::PropagatorCell>(
        detail::PropagatorCell{std::move(c), std::move(propagators_)});
    return true;
  }

  bool run(const Constraint& c, bool& touched) {
    if (const auto* lin = std::get_if<Linear>(&c)) return run_linear(*lin, touched);
    if (const auto* ad = std::get_if<AllDifferent>(&c)) return run_alldifferent(*ad, touched);
    return false;
  }

  // sum(terms) <= rhs, with the coefficients optionally negated.
  bool bound_le(const std::vector<LinearTerm>& terms, Value sign, Value rhs, bool& touched) {
    Value min_sum = 0;
    for (const LinearTerm& t : terms) {
      Value a = sign * t.coeff;
      const Domain& d = domains_[t.var.index];
      min_sum += a > 0 ? a * d.min() : a * d.max();
    }
    if (min_sum > rhs) return false;
    for (const LinearTerm& t : terms) {
      Value a = sign * t.coeff;
      Domain& d = domains_[t.var.index];
      Value own = a > 0 ? a * d.min() : a * d.max();
      Value slack = rhs - (min_sum - own);
      bool changed = a > 0 ? d.restrict_max(detail::floor_div(slack, a))
                           : d.restrict_min(detail::ceil_div(slack, a));
      if (d.empty()) return false;
      if (changed) {
        touched = true;
        Value now = a > 0 ? a * d.min() : a * d.max();
        min_sum += now - own;
      }
    }
    return true;
  }

  bool run_linear(const Linear& lin, bool& touched) {
    for (const LinearTerm& t : lin.terms) {
      if (domains_[t.var.index].empty()) return false;
    }
    switch (lin.rel) {
      case Relation::kLe:
        return bound_le(lin.terms, 1, lin.rhs, touched);
      case Relation::kLt:
        return bound_le(lin.terms, 1, lin.rhs - 1, touched);
      case Relation::kEq: {
        // alternate both directions until the bounds settle
        bool again = true;
        while (again) {
          bool a = false;
          bool b = false;
          if (!bound_le(lin.terms, 1, lin.rhs, a)) return false;
          if (!bound_le(lin.terms, -1, -lin.rhs, b)) return false;
          again = a || b;
          touched = touched || again;
        }
        return true;
      }
      case Relation::kNe: {
        const LinearTerm* open = nullptr;
        Value fixed_sum = 0;
        for (const LinearTerm& t : lin.terms) {
          const Domain& d = domains_[t.var.index];
          if (d.is_fixed()) {
            fixed_sum += t.coeff * d.min();
          } else if (open) {
            return true;  // two unfixed variables: nothing to do
          } else {
            open = &t;
          }
        }
        Value rest = lin.rhs - fixed_sum;
        if (!open) return rest != 0;
        if (rest % open->coeff != 0) return true;
        Domain& d = domains_[open->var.index];
        if (d.remove(rest / open->coeff)) touched = true;
        return !d.empty();
      }
    }
    return true;
  }

  bool run_alldifferent(const AllDifferent& ad, bool& touched) {
    bool again = true;
    while (again) {
      again = false;
      for (VarId v : ad.vars) {
        const Domain& dv = domains_[v.index];
        if (dv.empty()) return false;
        if (!dv.is_fixed()) continue;
        Value val = dv.min();
        for (VarId w : ad.vars) {
          if (w == v) continue;
          Domain& dw = domains_[w.index];
          if (dw.is_fixed() && dw.min() == val) return false;
          if (dw.remove(val)) {
            if (dw.empty()) return false;
            touched = true;
            again = true;
          }
        }
      }
    }
    return true;
  }

  std::shared_ptr<const std::vector<std::string>> names_;
  std::vector<Domain> domains_;
  std::shared_ptr<const detail::PropagatorCell> propagators_;
  std::vector<Constraint> pending_;
  Status status_ = Status::kUnknown;
};

inline State new_state(const std::vector<VarSpec>& vars) { return State(vars); }

inline void post_constraint(State& s, Constraint c) { s.post(std::move(c)); }

inline Status propagate(State& s) { return s.propagate(); }

inline State copy_state(const State& s) { return s; }

inline DomainQuery query(const State& s, VarId v) { return s.query(v); }

// Comparison operators as they appear in search specifications.
enum class Comparison { kEq, kNe, kLt, kLe, kGt, kGe };

// Posts `sum(terms) cmp rhs` where rhs may be fractional or infinite.
// Infinite bounds that are vacuously true post nothing; infinite bounds that
// can never hold post False.
inline void post_comparison(State& s, std::vector<LinearTerm> terms, Comparison cmp, double rhs) {
  std::erase_if(terms, [](const LinearTerm& t) { return t.coeff == 0; });
  if (cmp == Comparison::kGt || cmp == Comparison::kGe) {
    for (LinearTerm& t : terms) t.coeff = -t.coeff;
    rhs = -rhs;
    cmp = cmp == Comparison::kGt ? Comparison::kLt : Comparison::kLe;
  }
  if (terms.empty()) {
    bool holds = false;
    switch (cmp) {
      case Comparison::kEq: holds = rhs == 0; break;
      case Comparison::kNe: holds = rhs != 0; break;
      case Comparison::kLt: holds = 0 < rhs; break;
      case Comparison::kLe: holds = 0 <= rhs; break;
      default: break;
    }
    if (!holds) s.post(False{});
    return;
  }
  if (std::isinf(rhs)) {
    bool vacuous = cmp == Comparison::kNe || ((cmp == Comparison::kLt || cmp == Comparison::kLe) && rhs > 0);
    if (!vacuous) s.post(False{});
    return;
  }
  bool integral = rhs == std::floor(rhs);
  switch (cmp) {
    case Comparison::kEq:
      if (!integral) {
        s.post(False{});
      } else {
        s.post(Linear{std::move(terms), Relation::kEq, static_cast<Value>(rhs)});
      }
      return;
    case Comparison::kNe:
      if (integral) s.post(Linear{std::move(terms), Relation::kNe, static_cast<Value>(rhs)});
      return;
    case Comparison::kLt:
      if (integral) {
        s.post(Linear{std::move(terms), Relation::kLt, static_cast<Value>(rhs)});
      } else {
        s.post(Linear{std::move(terms), Relation::kLe, static_cast<Value>(std::floor(rhs))});
      }
      return;
    case Comparison::kLe:
      s.post(Linear{std::move(terms), Relation::kLe, static_cast<Value>(std::floor(rhs))});
      return;
    default:
      return;
  }
}

}  // namespace searchcomb
