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
#include "searchcomb/kernel.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace searchcomb {
namespace {

constexpr VarId kX{0};
constexpr VarId kY{1};

Linear lin(std::vector<LinearTerm> terms, Relation rel, Value rhs) { return Linear{std::move(terms), rel, rhs}; }

std::vector<std::vector<Value>> domains_of(const State& s) {
  std::vector<std::vector<Value>> out;
  for (std::uint32_t v = 0; v < s.num_vars(); ++v) out.push_back(s.domain(VarId{v}).values());
  return out;
}

TEST(KernelTest, NewStateFullDomains) {
  State s = new_state({{"x", 0, 6}});
  EXPECT_EQ(s.domain(kX), Domain(0, 6));
  EXPECT_EQ(s.status(), Status::kUnknown);
  EXPECT_EQ(s.num_propagators(), 0u);
}

TEST(KernelTest, SingletonIsFixed) {
  State s = new_state({{"x", 3, 3}});
  EXPECT_TRUE(query(s, kX).is_fixed);
}

TEST(KernelTest, StressRoot) {
  std::vector<VarSpec> vars;
  for (int k = 0; k < 7; ++k) vars.push_back({"x" + std::to_string(k), 0, 6});
  State s = new_state(vars);
  EXPECT_EQ(s.num_vars(), 7u);
  for (std::uint32_t v = 0; v < 7; ++v) EXPECT_EQ(query(s, VarId{v}), (DomainQuery{0, 6, 7, false}));
}

TEST(KernelTest, DuplicateNameRejected) {
  EXPECT_THROW(new_state({{"x", 0, 1}, {"x", 0, 2}}), ModelError);
}

TEST(KernelTest, PostFalseFails) {
  State s = new_state({{"x", 0, 6}});
  post_constraint(s, False{});
  EXPECT_EQ(s.status(), Status::kUnknown);
  EXPECT_EQ(propagate(s), Status::kFailed);
}

TEST(KernelTest, PostLessThanMatchesBruteForce) {
  State s = new_state({{"x", 0, 6}});
  Constraint c = lin({{1, kX}}, Relation::kLt, 5);
  auto sup = oracle::supports(domains_of(s), {c});
  post_constraint(s, c);
  EXPECT_EQ(propagate(s), Status::kStable);
  std::vector<Value> got = s.domain(kX).values();
  EXPECT_EQ(std::set<Value>(got.begin(), got.end()), sup[0]);
  EXPECT_EQ(s.domain(kX), Domain(0, 4));
}

TEST(KernelTest, InfiniteBoundIsVacuous) {
  State s = new_state({{"obj", 0, 6}});
  post_comparison(s, {{1, kX}}, Comparison::kLt, std::numeric_limits<double>::infinity());
  EXPECT_EQ(propagate(s), Status::kStable);
  EXPECT_EQ(s.domain(kX), Domain(0, 6));
  post_comparison(s, {{1, kX}}, Comparison::kGt, std::numeric_limits<double>::infinity());
  EXPECT_EQ(propagate(s), Status::kFailed);
}

TEST(KernelTest, FractionalBoundsRound) {
  State s = new_state({{"x", 0, 6}});
  post_comparison(s, {{1, kX}}, Comparison::kLt, 2.5);
  post_comparison(s, {{1, kX}}, Comparison::kGe, 0.5);
  EXPECT_EQ(propagate(s), Status::kStable);
  EXPECT_EQ(s.domain(kX), Domain(1, 2));
}

TEST(KernelTest, LessThanPairMatchesProjection) {
  State s = new_state({{"x", 0, 2}, {"y", 0, 2}});
  Constraint c = lin({{1, kX}, {-1, kY}}, Relation::kLt, 0);
  auto sup = oracle::supports(domains_of(s), {c});
  post_constraint(s, c);
  EXPECT_EQ(propagate(s), Status::kStable);
  EXPECT_EQ(s.domain(kX), Domain(0, 1));
  EXPECT_EQ(s.domain(kY), Domain(1, 2));
  EXPECT_EQ(sup[0], (std::set<Value>{0, 1}));
  EXPECT_EQ(sup[1], (std::set<Value>{1, 2}));
}

TEST(KernelTest, AllDifferentRemovesFixedValue) {
  State s = new_state({{"x", 1, 1}, {"y", 1, 2}});
  post_constraint(s, AllDifferent{{kX, kY}});
  EXPECT_EQ(propagate(s), Status::kStable);
  EXPECT_EQ(s.domain(kY), Domain::singleton(2));
}

TEST(KernelTest, NotEqualBothFixedFails) {
  State s = new_state({{"x", 1, 1}, {"y", 1, 1}});
  post_constraint(s, lin({{1, kX}, {-1, kY}}, Relation::kNe, 0));
  EXPECT_EQ(propagate(s), Status::kFailed);
}

TEST(KernelTest, CopyIsIndependent) {
  State s = new_state({{"x", 0, 6}});
  State c = copy_state(s);
  post_constraint(c, lin({{1, kX}}, Relation::kEq, 0));
  propagate(c);
  EXPECT_TRUE(c.domain(kX).is_fixed());
  EXPECT_EQ(s.domain(kX), Domain(0, 6));
}

TEST(KernelTest, CopyOfFailedIsFailed) {
  State s = new_state({{"x", 0, 6}});
  post_constraint(s, False{});
  propagate(s);
  EXPECT_EQ(copy_state(s).status(), Status::kFailed);
}

TEST(KernelTest, QueryExamples) {
  State s = new_state({{"x", 0, 6}, {"y", 3, 3}});
  EXPECT_EQ(query(s, kX), (DomainQuery{0, 6, 7, false}));
  EXPECT_EQ(query(s, kY), (DomainQuery{3, 3, 1, true}));
  s.mutable_domain(kX).remove(2);
  s.mutable_domain(kX).remove(3);
  // size counted by enumerating the remaining values
  EXPECT_EQ(query(s, kX), (DomainQuery{0, 6, s.domain(kX).values().size(), false}));
  EXPECT_EQ(query(s, kX).size, 5u);
}

// Random small models: linear constraints with coefficients in [-2, 2]
// and occasional alldifferent.
struct RandomModel {
  std::vector<VarSpec> vars;
  std::vector<Constraint> constraints;
};

RandomModel random_model(std::mt19937& rng) {
  RandomModel m;
  int n = 2 + static_cast<int>(rng() % 3);
  for (int k = 0; k < n; ++k) {
    Value lo = static_cast<Value>(rng() % 3);
    Value hi = lo + static_cast<Value>(rng() % 5);
    m.vars.push_back({"v" + std::to_string(k), lo, hi});
  }
  int nc = 1 + static_cast<int>(rng() % 3);
  for (int c = 0; c < nc; ++c) {
    if (rng() % 4 == 0) {
      std::vector<VarId> vs;
      for (int k = 0; k < n; ++k) {
        if (rng() % 2) vs.push_back(VarId{static_cast<std::uint32_t>(k)});
      }
      if (vs.size() >= 2) m.constraints.push_back(AllDifferent{vs});
      continue;
    }
    std::vector<LinearTerm> terms;
    for (int k = 0; k < n; ++k) {
      Value a = static_cast<Value>(rng() % 5) - 2;
      if (a != 0 && rng() % 3 != 0) terms.push_back({a, VarId{static_cast<std::uint32_t>(k)}});
    }
    if (terms.empty()) terms.push_back({1, VarId{0}});
    auto rel = static_cast<Relation>(rng() % 4);
    Value rhs = static_cast<Value>(rng() % 9) - 2;
    m.constraints.push_back(Linear{terms, rel, rhs});
  }
  return m;
}

TEST(KernelPropertyTest, PropagationIsSound) {
  std::mt19937 rng(2026);
  for (int round = 0; round < 2000; ++round) {
    RandomModel m = random_model(rng);
    State s = new_state(m.vars);
    auto sols = oracle::solutions(domains_of(s), m.constraints);
    for (const Constraint& c : m.constraints) post_constraint(s, c);
    Status st = propagate(s);
    if (sols.empty()) continue;
    ASSERT_EQ(st, Status::kStable) << "round " << round;
    for (const auto& a : sols) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        ASSERT_TRUE(s.domain(VarId{static_cast<std::uint32_t>(k)}).contains(a[k])) << "round " << round;
      }
    }
  }
}

TEST(KernelPropertyTest, FailureOnlyWithoutSolutions) {
  std::mt19937 rng(99);
  for (int round = 0; round < 2000; ++round) {
    RandomModel m = random_model(rng);
    State s = new_state(m.vars);
    auto sols = oracle::solutions(domains_of(s), m.constraints);
    for (const Constraint& c : m.constraints) post_constraint(s, c);
    if (propagate(s) == Status::kFailed) ASSERT_TRUE(sols.empty());
  }
}

TEST(KernelPropertyTest, PropagateIsIdempotent) {
  std::mt19937 rng(5);
  for (int round = 0; round < 1000; ++round) {
    RandomModel m = random_model(rng);
    State s = new_state(m.vars);
    for (const Constraint& c : m.constraints) post_constraint(s, c);
    Status first = propagate(s);
    auto before = domains_of(s);
    Status second = propagate(s);
    ASSERT_EQ(first, second);
    ASSERT_EQ(before, domains_of(s));
  }
}

TEST(KernelPropertyTest, AllDifferentKeepsSupportedValues) {
  std::mt19937 rng(11);
  for (int round = 0; round < 1000; ++round) {
    int n = 2 + static_cast<int>(rng() % 3);
    std::vector<VarSpec> vars;
    std::vector<VarId> ids;
    for (int k = 0; k < n; ++k) {
      Value lo = static_cast<Value>(rng() % 4);
      Value hi = lo + static_cast<Value>(rng() % 3);
      if (rng() % 3 == 0) hi = lo;
      vars.push_back({"v" + std::to_string(k), lo, hi});
      ids.push_back(VarId{static_cast<std::uint32_t>(k)});
    }
    State s = new_state(vars);
    Constraint c = AllDifferent{ids};
    auto sup = oracle::supports(domains_of(s), {c});
    post_constraint(s, c);
    if (propagate(s) == Status::kFailed) {
      for (const auto& vs : sup) ASSERT_TRUE(vs.empty());
      continue;
    }
    for (int k = 0; k < n; ++k) {
      for (Value v : sup[k]) ASSERT_TRUE(s.domain(ids[k]).contains(v));
    }
  }
}

TEST(KernelPropertyTest, CopiesNeverCrossContaminate) {
  std::mt19937 rng(3);
  for (int round = 0; round < 300; ++round) {
    State a = new_state({{"x", 0, 9}, {"y", 0, 9}, {"z", 0, 9}});
    post_constraint(a, lin({{1, kX}, {1, kY}}, Relation::kLe, 12));
    propagate(a);
    State b = copy_state(a);
    auto snapshot_a = domains_of(a);
    auto snapshot_b = domains_of(b);
    for (int step = 0; step < 6; ++step) {
      bool on_a = rng() % 2 == 0;
      State& target = on_a ? a : b;
      VarId v{static_cast<std::uint32_t>(rng() % 3)};
      post_constraint(target, lin({{1, v}}, Relation::kNe, static_cast<Value>(rng() % 10)));
      propagate(target);
      auto& untouched = on_a ? snapshot_b : snapshot_a;
      ASSERT_EQ(domains_of(on_a ? b : a), untouched);
      (on_a ? snapshot_a : snapshot_b) = domains_of(target);
    }
  }
}

}  // namespace
}  // namespace searchcomb
