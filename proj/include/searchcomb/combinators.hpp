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

// Primitive search combinators. Each one is an independent participant in
// the message protocol: it only talks to its parent, its children and the
// engine, and only reads the node information it owns.

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "searchcomb/engine.hpp"
#include "searchcomb/expr.hpp"

namespace searchcomb {

// Forwards every message to its single child.
class Unary : public Combinator {
 public:
  explicit Unary(CombinatorPtr child) : kids_{std::move(child)} {}
  std::span<const CombinatorPtr> children() const override { return kids_; }

 protected:
  Combinator& child() const { return *kids_[0]; }
  void on_start(Node& root) override { child().start(root); }
  void on_enter(Node& n) override { child().enter(n); }
  void on_init(Node& p, Node& c) override { child().init(p, c); }

 private:
  std::vector<CombinatorPtr> kids_;
};

// Bottom-of-stack heuristics never receive exit and have nothing to init.
class Leaf : public Combinator {
 protected:
  void on_start(Node&) override {}
  void on_init(Node&, Node&) override {}
};

// ---------------------------------------------------------------------------
// base_search

enum class VarSelect { kInputOrder, kFirstFail, kSmallest, kRandom };
enum class DomainSplit { kMin, kMax, kMedian, kSplit, kRandom };

class BaseSearch final : public Leaf {
 public:
  BaseSearch(std::vector<VarId> vars, VarSelect select, DomainSplit split, std::uint64_t seed = 0)
      : vars_(std::move(vars)), select_(select), split_(split), rng_(seed) {}

  std::string_view kind() const override { return "base_search"; }
  const std::vector<VarId>& vars() const { return vars_; }

  // Index into vars() of the variable to branch on, or -1 if all fixed.
  std::ptrdiff_t select(const State& s) {
    std::ptrdiff_t best = -1;
    std::vector<std::ptrdiff_t> open;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      const Domain& d = s.domain(vars_[k]);
      if (d.is_fixed()) continue;
      auto i = static_cast<std::ptrdiff_t>(k);
      switch (select_) {
        case VarSelect::kInputOrder:
          return i;
        case VarSelect::kFirstFail:
          if (best < 0 || d.size() < s.domain(vars_[best]).size()) best = i;
          break;
        case VarSelect::kSmallest:
          if (best < 0 || d.min() < s.domain(vars_[best]).min()) best = i;
          break;
        case VarSelect::kRandom:
          open.push_back(i);
          break;
      }
    }
    if (select_ == VarSelect::kRandom && !open.empty()) {
      return open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng_)];
    }
    return best;
  }

  // The alternatives for one branching step, in creation order.
  std::vector<Constraint> branches(const Domain& d, VarId x) {
    auto eq = [x](Value v) { return Linear{{{1, x}}, Relation::kEq, v}; };
    auto ne = [x](Value v) { return Linear{{{1, x}}, Relation::kNe, v}; };
    auto le = [x](Value v) { return Linear{{{1, x}}, Relation::kLe, v}; };
    auto ge = [x](Value v) { return Linear{{{-1, x}}, Relation::kLe, -v}; };
    switch (split_) {
      case DomainSplit::kMin:
        return {eq(d.min()), ge(d.min() + 1)};
      case DomainSplit::kMax:
        return {eq(d.max()), le(d.max() - 1)};
      case DomainSplit::kMedian: {
        Value med = d.nth((d.size() - 1) / 2);
        return {eq(med), ne(med)};
      }
      case DomainSplit::kSplit: {
        Value mid = detail::floor_div(d.min() + d.max(), 2);
        return {le(mid), ge(mid + 1)};
      }
      case DomainSplit::kRandom: {
        Value r = d.nth(std::uniform_int_distribution<std::uint64_t>(0, d.size() - 1)(rng_));
        return {eq(r), ne(r)};
      }
    }
    return {};
  }

 protected:
  void on_enter(Node& c) override {
    if (c.state.propagate() == Status::kFailed) {
      parent()->exit(c, ExitStatus::kFailure);
      return;
    }
    std::ptrdiff_t pos = select(c.state);
    if (pos < 0) {
      parent()->exit(c, ExitStatus::kSuccess);
      return;
    }
    VarId x = vars_[pos];
    std::vector<Constraint> alts = branches(c.state.domain(x), x);
    std::vector<Node> kids;
    kids.reserve(alts.size());
    for (std::size_t k = 0; k < alts.size(); ++k) {
      kids.push_back(make_child(top(), c, std::move(alts[k]), static_cast<std::uint32_t>(k)));
    }
    for (Node& kid : kids) top().init(c, kid);
    top().push_children(kids);
  }

 private:
  std::vector<VarId> vars_;
  VarSelect select_;
  DomainSplit split_;
  std::mt19937_64 rng_;
};

class Prune final : public Leaf {
 public:
  std::string_view kind() const override { return "prune"; }

 protected:
  void on_enter(Node& c) override { parent()->exit(c, ExitStatus::kAbort); }
};

// ---------------------------------------------------------------------------
// and: one local slot holding the index of the child handling the node.

class And final : public Combinator {
 public:
  explicit And(std::vector<CombinatorPtr> kids) : kids_(std::move(kids)) {}
  std::string_view kind() const override { return "and"; }
  std::span<const CombinatorPtr> children() const override { return kids_; }
  std::size_t local_slots() const override { return 1; }

 protected:
  void on_start(Node& root) override {
    local(root) = 0;
    kids_[0]->start(root);
  }
  void on_enter(Node& c) override { kids_[active(c)]->enter(c); }
  void on_exit(Node& c, ExitStatus s) override {
    std::size_t k = active(c);
    if (s == ExitStatus::kSuccess && k + 1 < kids_.size()) {
      local(c) = static_cast<NumericValue>(k + 1);
      kids_[k + 1]->start(c);
      kids_[k + 1]->enter(c);
    } else {
      parent()->exit(c, s);
    }
  }
  void on_init(Node& p, Node& c) override {
    local(c) = local(p);
    kids_[active(c)]->init(p, c);
  }

 private:
  std::size_t active(const Node& n) const { return static_cast<std::size_t>(local(n)); }
  std::vector<CombinatorPtr> kids_;
};

// ---------------------------------------------------------------------------
// portfolio and or: run the children one after another, each on a fresh
// copy of the start node. A global reference count of initialised but not
// yet entered nodes tells when a child has processed its whole subtree.
//
// portfolio stops at the first exhaustive child; or always runs every child
// and is exhaustive only if all of them were. Each node remembers, in a
// local slot, which child it belongs to; exits from a child that is no
// longer active pass straight through.

class SequenceFrame final : public GlobalFrame {
 public:
  SequenceFrame(std::uint64_t id, std::uint32_t owner, Node root)
      : GlobalFrame(id, owner), saved(std::move(root)) {}
  Node saved;
  std::size_t active = 0;
  std::int64_t ref = 1;
  bool exhaustive = true;
  bool all_exhaustive = true;
  bool finished = false;
};

class Sequence final : public Combinator {
 public:
  enum class Policy { kPortfolio, kOr };

  Sequence(Policy policy, std::vector<CombinatorPtr> kids)
      : policy_(policy), kids_(std::move(kids)) {}

  std::string_view kind() const override { return policy_ == Policy::kPortfolio ? "portfolio" : "or"; }
  std::span<const CombinatorPtr> children() const override { return kids_; }
  std::size_t local_slots() const override { return 1; }
  bool needs_frame() const override { return true; }

 protected:
  void on_start(Node& root) override {
    Node saved = top().copy_node(root);
    clear_subtree_frames(saved);
    root.frames[frame_slot()] =
        make_frame<SequenceFrame>(top().next_frame_id(), instance_id(), std::move(saved));
    local(root) = 0;
    kids_[0]->start(root);
  }

  void on_enter(Node& c) override {
    SequenceFrame& f = own_frame<SequenceFrame>(c);
    std::size_t k = member(c);
    if (counts(f, k)) --f.ref;
    kids_[k]->enter(c);
  }

  void on_init(Node& p, Node& c) override {
    SequenceFrame& f = own_frame<SequenceFrame>(p);
    std::size_t k = member(p);
    if (counts(f, k)) ++f.ref;
    local(c) = local(p);
    kids_[k]->init(p, c);
  }

  void on_exit(Node& c, ExitStatus s) override {
    SequenceFrame& f = own_frame<SequenceFrame>(c);
    std::size_t k = member(c);
    if (!counts(f, k)) {
      parent()->exit(c, s);
      return;
    }
    bool last = k + 1 == kids_.size();
    if (s == ExitStatus::kAbort) {
      f.exhaustive = false;
      s = ExitStatus::kFailure;
    }
    if (f.ref > 0) {
      parent()->exit(c, s);
      return;
    }
    f.all_exhaustive = f.all_exhaustive && f.exhaustive;
    if (policy_ == Policy::kPortfolio && f.exhaustive) {
      f.finished = true;
      parent()->exit(c, s);
      return;
    }
    if (last) {
      // only reachable for or: its last child decides the final status
      f.finished = true;
      finish(c, s, f.all_exhaustive, f);
      return;
    }
    f.active = k + 1;
    f.exhaustive = true;
    f.ref = 1;
    Node next = top().copy_node(f.saved);
    next.frames[frame_slot()] = c.frames[frame_slot()];
    local(next) = static_cast<NumericValue>(k + 1);
    kids_[k + 1]->start(next);
    top().note_reentry();
    enter(next);
    // a success that closed the previous child is still a solution
    if (s == ExitStatus::kSuccess) parent()->exit(c, s);
  }

 private:
  std::size_t member(const Node& n) const { return static_cast<std::size_t>(local(n)); }

  // Whether exits/enters of child k still drive the reference count.
  bool counts(const SequenceFrame& f, std::size_t k) const {
    if (f.finished || k != f.active) return false;
    return policy_ == Policy::kOr || k + 1 < kids_.size();
  }

  void finish(Node& c, ExitStatus s, bool exhaustive, const SequenceFrame& f) {
    if (exhaustive) {
      parent()->exit(c, s);
    } else if (s == ExitStatus::kSuccess) {
      parent()->exit(c, s);
      Node marker = top().copy_node(f.saved);
      marker.frames[frame_slot()] = c.frames[frame_slot()];
      parent()->exit(marker, ExitStatus::kAbort);
    } else {
      parent()->exit(c, ExitStatus::kAbort);
    }
  }

  Policy policy_;
  std::vector<CombinatorPtr> kids_;
};

// ---------------------------------------------------------------------------
// restart(cond, s): rerun s from a copy of the start node while iterations
// end non-exhaustive and cond (checked between iterations) holds.

class RestartFrame final : public GlobalFrame {
 public:
  RestartFrame(std::uint64_t id, std::uint32_t owner, Node root)
      : GlobalFrame(id, owner), saved(std::move(root)) {}
  Node saved;
  std::int64_t ref = 1;
  std::uint64_t iteration = 0;
  bool exhaustive = true;
  bool finished = false;
};

class Restart final : public Unary {
 public:
  Restart(ConditionPtr cond, CombinatorPtr child) : Unary(std::move(child)), cond_(std::move(cond)) {}
  std::string_view kind() const override { return "restart"; }
  std::size_t local_slots() const override { return 1; }
  bool needs_frame() const override { return true; }

 protected:
  void on_start(Node& root) override {
    Node saved = top().copy_node(root);
    clear_subtree_frames(saved);
    root.frames[frame_slot()] =
        make_frame<RestartFrame>(top().next_frame_id(), instance_id(), std::move(saved));
    local(root) = 0;
    child().start(root);
  }

  void on_enter(Node& c) override {
    RestartFrame& f = own_frame<RestartFrame>(c);
    if (current(f, c)) --f.ref;
    child().enter(c);
  }

  void on_init(Node& p, Node& c) override {
    RestartFrame& f = own_frame<RestartFrame>(p);
    if (current(f, p)) ++f.ref;
    local(c) = local(p);
    child().init(p, c);
  }

  void on_exit(Node& c, ExitStatus s) override {
    RestartFrame& f = own_frame<RestartFrame>(c);
    if (!current(f, c)) {
      parent()->exit(c, s);
      return;
    }
    if (s == ExitStatus::kAbort) {
      f.exhaustive = false;
      s = ExitStatus::kFailure;
    }
    if (f.ref > 0) {
      parent()->exit(c, s);
      return;
    }
    if (f.exhaustive) {
      f.finished = true;
      parent()->exit(c, s);
      return;
    }
    if (cond_->eval(f.saved)) {
      ++f.iteration;
      f.ref = 1;
      f.exhaustive = true;
      Node next = top().copy_node(f.saved);
      next.frames[frame_slot()] = c.frames[frame_slot()];
      local(next) = static_cast<NumericValue>(f.iteration);
      child().start(next);
      top().note_reentry();
      enter(next);
      if (s == ExitStatus::kSuccess) parent()->exit(c, s);
      return;
    }
    f.finished = true;
    if (s == ExitStatus::kSuccess) {
      parent()->exit(c, s);
      Node marker = top().copy_node(f.saved);
      marker.frames[frame_slot()] = c.frames[frame_slot()];
      parent()->exit(marker, ExitStatus::kAbort);
    } else {
      parent()->exit(c, ExitStatus::kAbort);
    }
  }

 private:
  bool current(const RestartFrame& f, const Node& n) const {
    return !f.finished && static_cast<std::uint64_t>(local(n)) == f.iteration;
  }

  ConditionPtr cond_;
};

// ---------------------------------------------------------------------------
// ifthenelse(cond, s1, s2): s1 while cond holds; once it fails at a node,
// s2 takes over that node and its whole subtree.

class IfThenElse final : public Combinator {
 public:
  IfThenElse(ConditionPtr cond, CombinatorPtr then_branch, CombinatorPtr else_branch)
      : cond_(std::move(cond)), kids_{std::move(then_branch), std::move(else_branch)} {}

  std::string_view kind() const override { return "ifthenelse"; }
  std::span<const CombinatorPtr> children() const override { return kids_; }
  std::size_t local_slots() const override { return 1; }

 protected:
  void on_start(Node& root) override {
    local(root) = 1;
    kids_[0]->start(root);
  }
  void on_enter(Node& c) override {
    if (local(c) == 0) {
      kids_[1]->enter(c);
    } else if (cond_->eval(c)) {
      kids_[0]->enter(c);
    } else {
      local(c) = 0;
      kids_[1]->start(c);
      kids_[1]->enter(c);
    }
  }
  void on_init(Node& p, Node& c) override {
    local(c) = local(p);
    kids_[local(c) != 0 ? 0 : 1]->init(p, c);
  }

 private:
  ConditionPtr cond_;
  std::vector<CombinatorPtr> kids_;
};

// ---------------------------------------------------------------------------
// State access: let, assign, post.

class Let final : public Unary {
 public:
  Let(BindingPtr binding, ExprPtr init, CombinatorPtr child)
      : Unary(std::move(child)), binding_(std::move(binding)), init_(std::move(init)) {}

  std::string_view kind() const override { return "let"; }
  std::size_t local_slots() const override { return binding_->local ? 1 : 0; }
  bool needs_frame() const override { return !binding_->local; }
  const BindingPtr& binding() const { return binding_; }

 protected:
  void on_wired() override { binding_->slot = binding_->local ? local_base() : frame_slot(); }

  void on_start(Node& root) override {
    NumericValue v = init_->eval(root);
    if (binding_->local) {
      root.locals[binding_->slot] = v;
    } else {
      root.frames[binding_->slot] = make_frame<ValueFrame>(top().next_frame_id(), instance_id(), v);
    }
    child().start(root);
  }

 private:
  BindingPtr binding_;
  ExprPtr init_;
};

class Assign final : public Leaf {
 public:
  Assign(BindingPtr binding, ExprPtr value) : binding_(std::move(binding)), value_(std::move(value)) {}
  std::string_view kind() const override { return "assign"; }

 protected:
  void on_enter(Node& c) override {
    storage(*binding_, c) = value_->eval(c);
    parent()->exit(c, ExitStatus::kSuccess);
  }

 private:
  BindingPtr binding_;
  ExprPtr value_;
};

// post(c, s) posts at every node s handles; post(c) posts once and
// succeeds or fails with propagation.
class Post final : public Combinator {
 public:
  explicit Post(ExprPtr constraint, CombinatorPtr child = nullptr) : constraint_(std::move(constraint)) {
    if (child) kids_.push_back(std::move(child));
  }
  std::string_view kind() const override { return "post"; }
  std::span<const CombinatorPtr> children() const override { return kids_; }

 protected:
  void on_start(Node& root) override {
    if (!kids_.empty()) kids_[0]->start(root);
  }
  void on_enter(Node& c) override {
    post_expr(*constraint_, c);
    if (!kids_.empty()) {
      kids_[0]->enter(c);
      return;
    }
    Status st = c.state.propagate();
    parent()->exit(c, st == Status::kFailed ? ExitStatus::kFailure : ExitStatus::kSuccess);
  }
  void on_init(Node& p, Node& c) override {
    if (!kids_.empty()) kids_[0]->init(p, c);
  }

 private:
  ExprPtr constraint_;
  std::vector<CombinatorPtr> kids_;
};

class Print final : public Unary {
 public:
  Print(std::vector<VarId> vars, CombinatorPtr child) : Unary(std::move(child)), vars_(std::move(vars)) {}
  std::string_view kind() const override { return "print"; }

 protected:
  void on_exit(Node& c, ExitStatus s) override {
    if (s == ExitStatus::kSuccess) {
      if (std::ostream* os = top().output()) {
        for (std::size_t k = 0; k < vars_.size(); ++k) {
          if (k) *os << ' ';
          *os << c.state.name(vars_[k]) << '=';
          const Domain& d = c.state.domain(vars_[k]);
          if (d.is_fixed()) {
            *os << d.min();
          } else {
            *os << d;
          }
        }
        *os << '\n';
      }
    }
    parent()->exit(c, s);
  }

 private:
  std::vector<VarId> vars_;
};

// ---------------------------------------------------------------------------
// Statistics collectors. Each writes into a let-bound search variable.

enum class Statistic { kSolutions, kFailures, kNodes, kDepth, kDiscrepancies, kTime };

inline bool is_local(Statistic s) { return s == Statistic::kDepth || s == Statistic::kDiscrepancies; }

class TimeFrame final : public GlobalFrame {
 public:
  TimeFrame(std::uint64_t id, std::uint32_t owner, std::uint64_t nodes)
      : GlobalFrame(id, owner), started(std::chrono::steady_clock::now()), nodes_at_start(nodes) {}
  std::chrono::steady_clock::time_point started;
  std::uint64_t nodes_at_start;
};

class Collector final : public Unary {
 public:
  Collector(Statistic stat, BindingPtr target, CombinatorPtr child)
      : Unary(std::move(child)), stat_(stat), target_(std::move(target)) {}

  std::string_view kind() const override {
    switch (stat_) {
      case Statistic::kSolutions: return "solution_count";
      case Statistic::kFailures: return "failure_count";
      case Statistic::kNodes: return "node_count";
      case Statistic::kDepth: return "depth_count";
      case Statistic::kDiscrepancies: return "discrepancy_count";
      case Statistic::kTime: return "time_count";
    }
    return "?";
  }
  bool needs_frame() const override { return stat_ == Statistic::kTime; }
  Statistic statistic() const { return stat_; }

 protected:
  void on_start(Node& root) override {
    storage(*target_, root) = 0;
    if (stat_ == Statistic::kTime) {
      root.frames[frame_slot()] =
          make_frame<TimeFrame>(top().next_frame_id(), instance_id(), top().nodes_entered());
    }
    child().start(root);
  }

  void on_enter(Node& c) override {
    if (stat_ == Statistic::kNodes) storage(*target_, c) += 1;
    if (stat_ == Statistic::kTime) {
      const TimeFrame& f = own_frame<TimeFrame>(c);
      if (top().virtual_time()) {
        storage(*target_, c) = static_cast<NumericValue>(top().nodes_entered() - f.nodes_at_start);
      } else {
        std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - f.started;
        storage(*target_, c) = dt.count();
      }
    }
    child().enter(c);
  }

  void on_exit(Node& c, ExitStatus s) override {
    if (stat_ == Statistic::kSolutions && s == ExitStatus::kSuccess) storage(*target_, c) += 1;
    if (stat_ == Statistic::kFailures && s == ExitStatus::kFailure) storage(*target_, c) += 1;
    parent()->exit(c, s);
  }

  void on_init(Node& p, Node& c) override {
    if (stat_ == Statistic::kDepth) storage(*target_, c) = storage(*target_, p) + 1;
    if (stat_ == Statistic::kDiscrepancies) storage(*target_, c) = storage(*target_, p) + c.rank;
    child().init(p, c);
  }

 private:
  Statistic stat_;
  BindingPtr target_;
};

// The monolithic-decomposition building block: counts the solutions of its
// child in a global frame and, as a condition, holds while fewer than
// `cutoff` were found. ifthenelse(l, l, prune) with l = SolutionsLimit
// shares one instance along both edges.
class CountFrame final : public GlobalFrame {
 public:
  using GlobalFrame::GlobalFrame;
  std::uint64_t count = 0;
};

class SolutionsLimit final : public Unary, public Condition {
 public:
  SolutionsLimit(std::uint64_t cutoff, CombinatorPtr child) : Unary(std::move(child)), cutoff_(cutoff) {}
  std::string_view kind() const override { return "solutionslimit"; }
  bool needs_frame() const override { return true; }

  bool eval(const Node& n) const override { return own_frame<CountFrame>(n).count < cutoff_; }

 protected:
  void on_start(Node& root) override {
    root.frames[frame_slot()] = make_frame<CountFrame>(top().next_frame_id(), instance_id());
    child().start(root);
  }
  void on_exit(Node& c, ExitStatus s) override {
    if (s == ExitStatus::kSuccess) ++own_frame<CountFrame>(c).count;
    parent()->exit(c, s);
  }

 private:
  std::uint64_t cutoff_;
};

// ---------------------------------------------------------------------------
// Construction helpers for composing heuristics from C++.

inline CombinatorPtr make_base_search(std::vector<VarId> vars, VarSelect sel = VarSelect::kInputOrder,
                                      DomainSplit split = DomainSplit::kMin, std::uint64_t seed = 0) {
  return std::make_shared<BaseSearch>(std::move(vars), sel, split, seed);
}
inline CombinatorPtr make_prune() { return std::make_shared<Prune>(); }
inline CombinatorPtr make_and(std::vector<CombinatorPtr> kids) { return std::make_shared<And>(std::move(kids)); }
inline CombinatorPtr make_or(std::vector<CombinatorPtr> kids) {
  return std::make_shared<Sequence>(Sequence::Policy::kOr, std::move(kids));
}
inline CombinatorPtr make_portfolio(std::vector<CombinatorPtr> kids) {
  return std::make_shared<Sequence>(Sequence::Policy::kPortfolio, std::move(kids));
}
inline CombinatorPtr make_restart(ConditionPtr cond, CombinatorPtr s) {
  return std::make_shared<Restart>(std::move(cond), std::move(s));
}
inline CombinatorPtr make_ifthenelse(ConditionPtr cond, CombinatorPtr s1, CombinatorPtr s2) {
  return std::make_shared<IfThenElse>(std::move(cond), std::move(s1), std::move(s2));
}
inline ConditionPtr make_condition(ExprPtr e) { return std::make_shared<ExprCondition>(std::move(e)); }
inline ConditionPtr constant_condition(bool v) { return make_condition(Expr::constant(v ? 1 : 0)); }

}  // namespace searchcomb
