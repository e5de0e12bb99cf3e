// Copyright 2026 The bnbptas Authors
//
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

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "bnbptas/knapsack.hpp"
#include "bnbptas/oracle.hpp"
#include "support/oracles.hpp"

namespace bnbptas {
namespace {

KnapsackInstance make(std::vector<std::int64_t> w, std::vector<std::int64_t> p,
                      std::vector<std::int64_t> c) {
  KnapsackInstance inst;
  for (auto v : w) inst.weights.emplace_back(v);
  for (auto v : p) inst.profits.emplace_back(v);
  for (auto v : c) inst.capacities.emplace_back(v);
  return inst;
}

// The ordering claim assumes strictly decreasing unit profits.
bool distinct_ratios(const KnapsackInstance& inst) {
  std::vector<Rational> r;
  for (std::size_t j = 0; j < inst.n(); ++j) r.push_back(inst.profits[j] / inst.weights[j]);
  std::sort(r.begin(), r.end());
  return std::adjacent_find(r.begin(), r.end()) == r.end();
}

KnapsackInstance worked() { return make({6, 5, 4}, {60, 40, 20}, {5, 5}); }

// Best of floor(x*) and every critical item placed alone wherever it fits,
// enumerated independently of dantzig_solve's own selection.
Rational best_candidate(const KnapsackInstance& inst, const FracKnapSolution& frac) {
  Rational floor_value;
  for (std::size_t j = 0; j < inst.n(); ++j) {
    for (std::size_t i = 0; i < inst.m(); ++i) {
      if (frac.x[j][i] == Rational(1)) floor_value += inst.profits[j];
    }
  }
  Rational best = floor_value;
  for (std::size_t s : frac.critical_items) {
    for (std::size_t i = 0; i < inst.m(); ++i) {
      if (inst.weights[s] <= inst.capacities[i]) best = max(best, inst.profits[s]);
    }
  }
  return best;
}

TEST(Dantzig, WorkedInstance) {
  const auto inst = worked();
  const DantzigResult r = dantzig_solve(inst);
  EXPECT_EQ(r.frac.order, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.frac.x[0][0], Rational(5, 6));
  EXPECT_EQ(r.frac.x[0][1], Rational(1, 6));
  EXPECT_EQ(r.frac.x[1][1], Rational(4, 5));
  EXPECT_EQ(r.frac.sub_value, Rational(92));
  EXPECT_EQ(r.frac.critical_items, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.frac.j_star, std::optional<std::size_t>{0});
  EXPECT_EQ(testing::knapsack_lp_by_vertices(inst), Rational(92));
  // Item 0 (w = 6) fits neither knapsack alone, so the best candidate is
  // item 1 on its own.
  EXPECT_EQ(r.rounded.value, Rational(40));
  EXPECT_EQ(r.rounded.value, best_candidate(inst, r.frac));
  EXPECT_TRUE(is_feasible(inst, r.rounded));
  EXPECT_GE(r.rounded.value * Rational(3), r.frac.sub_value);
}

TEST(Dantzig, SingleFittingItemIsIntegral) {
  const auto inst = make({3}, {7}, {5});
  const DantzigResult r = dantzig_solve(inst);
  EXPECT_TRUE(r.frac.critical_items.empty());
  EXPECT_FALSE(r.frac.j_star);
  EXPECT_EQ(r.frac.x[0][0], Rational(1));
  EXPECT_EQ(r.rounded.value, Rational(7));
  EXPECT_EQ(r.rounded.assignment[0], std::optional<std::size_t>{0});
}

TEST(Dantzig, WeightsAboveEveryCapacity) {
  const auto inst = make({4, 5}, {8, 5}, {3, 3});
  const DantzigResult r = dantzig_solve(inst);
  // 3/4 of item 0 in knapsack 0, the last quarter plus 2/5 of item 1 in 1.
  EXPECT_EQ(r.frac.sub_value, Rational(10));
  EXPECT_EQ(testing::knapsack_lp_by_vertices(inst), Rational(10));
  EXPECT_EQ(r.frac.critical_items, (std::vector<std::size_t>{0, 1}));
  // Neither critical item fits alone: every candidate has value 0.
  EXPECT_EQ(r.rounded.value, Rational(0));
  EXPECT_EQ(best_candidate(inst, r.frac), Rational(0));
  // The adapter removes both items first, so the root is closed.
  const auto run = solve_knapsack(inst, KnapsackRunConfig{Rational(1, 2)});
  EXPECT_EQ(run.best_value, Rational(0));
  EXPECT_EQ(run.nodes_explored, 1u);
}

TEST(Dantzig, ZeroWeightItemsAreFree) {
  const auto inst = make({0, 2, 3}, {5, 4, 3}, {2});
  const DantzigResult r = dantzig_solve(inst);
  EXPECT_EQ(r.frac.x[0][0], Rational(1));
  EXPECT_EQ(r.frac.sub_value, Rational(9));
  EXPECT_EQ(r.rounded.value, Rational(9));
}

TEST(Dantzig, EmptyInstance) {
  const auto r = dantzig_solve(make({}, {}, {4}));
  EXPECT_EQ(r.frac.sub_value, Rational(0));
  EXPECT_EQ(r.rounded.value, Rational(0));
}

// The greedy value equals the relaxation optimum: vertex enumeration on the
// smaller instances and a matching dual solution on all of them.
TEST(Dantzig, MatchesRelaxationOptimum) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 120; ++round) {
    const std::size_t n = 1 + rng() % 8, m = 1 + rng() % 3;
    const auto inst = generate_knapsack(n, m, rng());
    const auto r = dantzig_solve(inst);
    EXPECT_EQ(r.frac.sub_value, testing::knapsack_dual_bound(inst)) << "round " << round;
    if (n * m + n + m <= 16) {
      EXPECT_EQ(r.frac.sub_value, testing::knapsack_lp_by_vertices(inst)) << "round " << round;
    }
    EXPECT_TRUE(testing::knapsack_relaxation(inst).satisfied_by([&] {
      std::vector<Rational> flat;
      for (const auto& row : r.frac.x) flat.insert(flat.end(), row.begin(), row.end());
      return flat;
    }()));
  }
}

TEST(Branching, WorkedInstanceKeepsOnlyExclusion) {
  const auto inst = worked();
  const auto kids = branch_children(inst, dantzig_solve(inst), BranchRule::kCE);
  ASSERT_EQ(kids.size(), 1u);
  EXPECT_EQ(kids[0].pivot, 0u);
  EXPECT_EQ(kids[0].target, 2u);
  EXPECT_TRUE(kids[0].right_turn);
  EXPECT_EQ(kids[0].capacities, inst.capacities);
}

TEST(Branching, InclusionChildrenReduceCapacity) {
  const auto inst = make({4, 5, 3}, {40, 40, 9}, {6, 6});
  const auto solved = dantzig_solve(inst);
  const auto kids = branch_children(inst, solved, BranchRule::kCE);
  ASSERT_EQ(kids.size(), 3u);
  const std::size_t pivot = kids[0].pivot;
  EXPECT_EQ(kids[0].capacities[0], Rational(6) - inst.weights[pivot]);
  EXPECT_FALSE(kids[0].right_turn);
  EXPECT_EQ(kids[1].capacities[1], Rational(6) - inst.weights[pivot]);
  EXPECT_TRUE(kids[2].right_turn);
}

TEST(Branching, PpwAndCeDifferSomewhere) {
  bool found = false;
  for (std::uint64_t seed = 1; seed < 500 && !found; ++seed) {
    const auto inst = generate_knapsack(8, 3, seed);
    const auto solved = dantzig_solve(inst);
    const auto ce = select_pivot(solved, BranchRule::kCE);
    const auto ppw = select_pivot(solved, BranchRule::kPPW);
    if (ce && ppw && *ce != *ppw) {
      found = true;
      EXPECT_EQ(*ce, *solved.frac.j_star);
      EXPECT_EQ(*ppw, solved.frac.critical_items.front());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Branching, NoPivotThrows) {
  const auto inst = make({3}, {7}, {5});
  EXPECT_THROW(branch_children(inst, dantzig_solve(inst), BranchRule::kCE), std::invalid_argument);
}

// Single knapsack: the critical items of the inclusion and exclusion
// children bracket the parent's in unit-profit order.
TEST(Branching, SingleKnapsackPivotOrdering) {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int round = 0; round < 2000 && checked < 100; ++round) {
    const auto inst = generate_knapsack(4 + rng() % 9, 1, rng());
    const auto solved = dantzig_solve(inst);
    if (!solved.frac.j_star || !distinct_ratios(inst)) continue;
    const auto kids = branch_children(inst, solved, BranchRule::kCE);
    if (kids.size() != 2) continue;
    const auto& order = solved.frac.order;
    auto rank = [&](std::size_t item) {
      return std::find(order.begin(), order.end(), item) - order.begin();
    };
    std::vector<std::ptrdiff_t> child_rank;
    for (const auto& kid : kids) {
      KnapsackInstance child;
      child.capacities = kid.capacities;
      std::vector<std::size_t> back;
      for (std::size_t j = 0; j < inst.n(); ++j) {
        if (j == kid.pivot) continue;
        child.weights.push_back(inst.weights[j]);
        child.profits.push_back(inst.profits[j]);
        back.push_back(j);
      }
      const auto r = dantzig_solve(child);
      if (!r.frac.j_star) break;
      child_rank.push_back(rank(back[*r.frac.j_star]));
    }
    if (child_rank.size() != 2) continue;
    ++checked;
    const auto star = rank(*solved.frac.j_star);
    EXPECT_LT(child_rank[0], star) << "round " << round;
    EXPECT_GT(child_rank[1], star) << "round " << round;
  }
  EXPECT_EQ(checked, 100);
}

TEST(LeftTurnBound, Formula) {
  // 1 + max{2 * 1/2 / (1/4), 3 / (1/2)} = 1 + max{4, 6}
  EXPECT_EQ(left_turn_bound(Rational(1, 2), 2), Rational(7));
  EXPECT_EQ(left_turn_bound(Rational(97, 100), 5), Rational(48509, 9));
}

TEST(Adapter, WorkedInstanceStopsAtRoot) {
  const auto run = solve_knapsack(worked(), KnapsackRunConfig{Rational(1, 2)});
  EXPECT_EQ(run.best_value, Rational(60));
  EXPECT_EQ(run.nodes_explored, 1u);
  EXPECT_EQ(run.termination, Termination::kRatioMet);
  EXPECT_EQ(exact_knapsack(worked()).optimum, Rational(60));
}

// Approximation guarantee on random instances, with every solved node
// checked for the rounding inequalities.
TEST(Adapter, GuaranteeAndNodeInequalities) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 3 + rng() % 8, m = 2 + rng() % 2;
    const auto inst = generate_knapsack(n, m, rng());
    const Rational alpha = round % 2 ? Rational(9, 10) : Rational(4, 5);
    for (auto rule : {BranchRule::kCE, BranchRule::kPPW, BranchRule::kK}) {
      KnapsackRunConfig config{alpha, Selection::kBestFirst, rule};
      std::size_t solves = 0;
      const auto run = solve_knapsack(inst, config, [&](const KnapsackInstance& sub, const DantzigResult& r) {
        ++solves;
        const Rational& sub_value = r.frac.sub_value;
        EXPECT_GE(r.rounded.value * Rational(static_cast<std::int64_t>(sub.m() + 1)), sub_value);
        EXPECT_TRUE(is_feasible(sub, r.rounded));
        if (r.frac.j_star && sub_value.sign() > 0) {
          const Rational lhs = sub.profits[*r.frac.j_star] / sub_value;
          const Rational rhs = min(Rational(1, static_cast<std::int64_t>(sub.m() + 1)),
                                   (Rational(1) - r.rounded.value / sub_value) /
                                       Rational(static_cast<std::int64_t>(sub.m())));
          EXPECT_GE(lhs, rhs);
        }
      });
      EXPECT_GE(solves, 1u);
      const Rational opt = testing::brute_knapsack(inst);
      if (run.termination == Termination::kRatioMet || run.termination == Termination::kFrontierEmpty) {
        EXPECT_GE(run.best_value, alpha * opt) << "round " << round;
      }
      ASSERT_TRUE(run.left_turn_max);
      EXPECT_LE(Rational(static_cast<std::int64_t>(*run.left_turn_max)), left_turn_bound(alpha, m));
      ASSERT_TRUE(run.best_solution);
      Rational value;
      std::vector<Rational> load(m);
      for (std::size_t j = 0; j < n; ++j) {
        if (const auto k = run.best_solution->assignment[j]) {
          load[*k] += inst.weights[j];
          value += inst.profits[j];
        }
      }
      EXPECT_EQ(value, run.best_value);
      for (std::size_t k = 0; k < m; ++k) EXPECT_LE(load[k], inst.capacities[k]);
    }
  }
}

}  // namespace
}  // namespace bnbptas
