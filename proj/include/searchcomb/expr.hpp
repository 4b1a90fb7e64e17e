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

// Resolved expressions: conditions, let initialisers, assign right-hand
// sides and posted constraints, all evaluated against a search node.

#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "searchcomb/errors.hpp"
#include "searchcomb/protocol.hpp"

namespace searchcomb {

// Where a search variable lives. Filled in by the owning let when the
// heuristic is wired; a let over a local statistic stores per node.
struct Binding {
  std::string name;
  bool local = false;
  std::size_t slot = kNoSlot;
};

using BindingPtr = std::shared_ptr<Binding>;

class ValueFrame : public GlobalFrame {
 public:
  ValueFrame(std::uint64_t id, std::uint32_t owner, NumericValue v)
      : GlobalFrame(id, owner), value(v) {}
  NumericValue value;
};

inline NumericValue& storage(const Binding& b, Node& n) {
  if (b.local) return n.locals[b.slot];
  return n.frame<ValueFrame>(b.slot).value;
}

inline NumericValue read(const Binding& b, const Node& n) {
  if (b.local) return n.locals[b.slot];
  if (!n.frames[b.slot]) throw RunError("search variable '" + b.name + "' read outside its let");
  return n.frame<ValueFrame>(b.slot).value;
}

enum class Op {
  kAdd, kSub, kMul, kDiv,
  kEq, kNe, kLt, kLe, kGt, kGe,
  kAnd, kOr, kNot, kNeg,
  kCeil, kFloor, kAbs, kMin, kMax,
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { kConst, kSearchVar, kModelVar, kApply };

  static ExprPtr constant(NumericValue v) {
    auto e = std::make_shared<Expr>(Kind::kConst);
    e->value_ = v;
    return e;
  }
  static ExprPtr search_var(BindingPtr b) {
    auto e = std::make_shared<Expr>(Kind::kSearchVar);
    e->binding_ = std::move(b);
    return e;
  }
  static ExprPtr model_var(VarId v, std::string name) {
    auto e = std::make_shared<Expr>(Kind::kModelVar);
    e->var_ = v;
    e->name_ = std::move(name);
    return e;
  }
  static ExprPtr apply(Op op, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>(Kind::kApply);
    e->op_ = op;
    e->args_ = std::move(args);
    return e;
  }

  explicit Expr(Kind k) : kind_(k) {}

  Kind kind() const { return kind_; }
  Op op() const { return op_; }
  const std::vector<ExprPtr>& args() const { return args_; }
  VarId var() const { return var_; }
  const std::string& name() const { return name_; }
  const BindingPtr& binding() const { return binding_; }

  NumericValue eval(const Node& n) const {
    switch (kind_) {
      case Kind::kConst:
        return value_;
      case Kind::kSearchVar:
        return read(*binding_, n);
      case Kind::kModelVar: {
        const Domain& d = n.state.domain(var_);
        if (!d.is_fixed()) throw RunError("model variable '" + name_ + "' is not fixed");
        return static_cast<NumericValue>(d.min());
      }
      case Kind::kApply:
        break;
    }
    auto arg = [&](std::size_t k) { return args_[k]->eval(n); };
    switch (op_) {
      case Op::kAdd: return arg(0) + arg(1);
      case Op::kSub: return arg(0) - arg(1);
      case Op::kMul: return arg(0) * arg(1);
      case Op::kDiv: return arg(0) / arg(1);
      case Op::kEq: return arg(0) == arg(1);
      case Op::kNe: return arg(0) != arg(1);
      case Op::kLt: return arg(0) < arg(1);
      case Op::kLe: return arg(0) <= arg(1);
      case Op::kGt: return arg(0) > arg(1);
      case Op::kGe: return arg(0) >= arg(1);
      case Op::kAnd: return arg(0) != 0 && arg(1) != 0;
      case Op::kOr: return arg(0) != 0 || arg(1) != 0;
      case Op::kNot: return arg(0) == 0;
      case Op::kNeg: return -arg(0);
      case Op::kCeil: return std::ceil(arg(0));
      case Op::kFloor: return std::floor(arg(0));
      case Op::kAbs: return std::fabs(arg(0));
      case Op::kMin: return std::fmin(arg(0), arg(1));
      case Op::kMax: return std::fmax(arg(0), arg(1));
    }
    return 0;
  }

 private:
  Kind kind_;
  Op op_ = Op::kAdd;
  NumericValue value_ = 0;
  VarId var_{};
  std::string name_;
  BindingPtr binding_;
  std::vector<ExprPtr> args_;
};

class ExprCondition final : public Condition {
 public:
  explicit ExprCondition(ExprPtr e) : expr_(std::move(e)) {}
  bool eval(const Node& n) const override { return expr_->eval(n) != 0; }

 private:
  ExprPtr expr_;
};

// sum(coeff * var) + constant, with search variables already read.
struct LinearForm {
  std::map<std::uint32_t, double> coeffs;
  double constant = 0;
};

inline LinearForm linearize(const Expr& e, const Node& n) {
  switch (e.kind()) {
    case Expr::Kind::kConst:
    case Expr::Kind::kSearchVar:
      return LinearForm{{}, e.eval(n)};
    case Expr::Kind::kModelVar:
      return LinearForm{{{e.var().index, 1.0}}, 0};
    case Expr::Kind::kApply:
      break;
  }
  auto scale = [](LinearForm f, double k) {
    for (auto& [v, c] : f.coeffs) c *= k;
    f.constant *= k;
    return f;
  };
  auto combine = [](LinearForm a, const LinearForm& b, double sign) {
    for (const auto& [v, c] : b.coeffs) a.coeffs[v] += sign * c;
    a.constant += sign * b.constant;
    return a;
  };
  const auto& args = e.args();
  switch (e.op()) {
    case Op::kAdd: return combine(linearize(*args[0], n), linearize(*args[1], n), 1);
    case Op::kSub: return combine(linearize(*args[0], n), linearize(*args[1], n), -1);
    case Op::kNeg: return scale(linearize(*args[0], n), -1);
    case Op::kMul: {
      LinearForm a = linearize(*args[0], n);
      LinearForm b = linearize(*args[1], n);
      if (a.coeffs.empty()) return scale(std::move(b), a.constant);
      if (b.coeffs.empty()) return scale(std::move(a), b.constant);
      throw RunError("non-linear product in posted constraint");
    }
    default: {
      // anything else must not mention model variables
      return LinearForm{{}, e.eval(n)};
    }
  }
}

// Posts a constraint expression: `true`, `false`, a comparison between
// linear terms, or a conjunction of those.
inline void post_expr(const Expr& e, Node& n) {
  if (e.kind() == Expr::Kind::kApply) {
    if (e.op() == Op::kAnd) {
      post_expr(*e.args()[0], n);
      post_expr(*e.args()[1], n);
      return;
    }
    Comparison cmp;
    bool is_cmp = true;
    switch (e.op()) {
      case Op::kEq: cmp = Comparison::kEq; break;
      case Op::kNe: cmp = Comparison::kNe; break;
      case Op::kLt: cmp = Comparison::kLt; break;
      case Op::kLe: cmp = Comparison::kLe; break;
      case Op::kGt: cmp = Comparison::kGt; break;
      case Op::kGe: cmp = Comparison::kGe; break;
      default: is_cmp = false; break;
    }
    if (is_cmp) {
      LinearForm lhs = linearize(*e.args()[0], n);
      LinearForm rhs = linearize(*e.args()[1], n);
      std::vector<LinearTerm> terms;
      for (const auto& [v, c] : rhs.coeffs) lhs.coeffs[v] -= c;
      for (const auto& [v, c] : lhs.coeffs) {
        if (c != std::floor(c)) throw RunError("fractional coefficient in posted constraint");
        if (c != 0) terms.push_back({static_cast<Value>(c), VarId{v}});
      }
      double bound = rhs.constant - lhs.constant;
      if (std::isnan(bound)) throw RunError("undefined bound in posted constraint");
      post_comparison(n.state, std::move(terms), cmp, bound);
      return;
    }
  }
  if (e.kind() == Expr::Kind::kModelVar) throw RunError("cannot post a bare model variable");
  if (e.eval(n) == 0) n.state.post(False{});
}

}  // namespace searchcomb
