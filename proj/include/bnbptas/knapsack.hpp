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

#ifndef BNBPTAS_KNAPSACK_HPP_
#define BNBPTAS_KNAPSACK_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnbptas/engine.hpp"
#include "bnbptas/instances.hpp"
#include "bnbptas/rational.hpp"

namespace bnbptas {

// Fractional optimum of the surrogate relaxation, filled greedily.
struct FracKnapSolution {
  std::vector<std::vector<Rational>> x;  // x[j][i], item j in knapsack i
  Rational sub_value;
  // Items cut by a knapsack boundary, in greedy order (at most m).
  std::vector<std::size_t> critical_items;
  // Most profitable critical item; ties go to the earlier one in greedy order.
  std::optional<std::size_t> j_star;
  // Positive-weight items by decreasing p/w, stable on ties.
  std::vector<std::size_t> order;
};

struct IntKnapSolution {
  std::vector<std::optional<std::size_t>> assignment;  // item -> knapsack
  Rational value;
};

struct DantzigResult {
  FracKnapSolution frac;
  IntKnapSolution rounded;  // best of floor(x*) and the single critical items
};

// Greedy fill through the knapsacks in unit-profit order, carrying the cut
// part of each overflowing item into the next knapsack. Zero-weight items are
// placed in knapsack 0 up front. A critical item that fits no knapsack on its
// own contributes no single-item candidate.
DantzigResult dantzig_solve(const KnapsackInstance& inst);

bool is_feasible(const KnapsackInstance& inst, const IntKnapSolution& solution);

enum class BranchRule { kCE, kPPW, kK };
std::string to_string(BranchRule rule);
BranchRule parse_branch_rule(const std::string& text);

// Pivot under `rule`, or nullopt when nothing is eligible. CE takes j*, PPW
// the first critical item in greedy order, K the first positive-weight item
// in greedy order.
std::optional<std::size_t> select_pivot(const DantzigResult& solved, BranchRule rule);

struct KnapsackBranch {
  std::size_t pivot = 0;   // index into the instance
  std::size_t target = 0;  // knapsack, or m for the exclusion branch
  bool right_turn = false;
  std::vector<Rational> capacities;  // after the decision
};

// Inclusion children for every knapsack the pivot fits, then the exclusion
// child. Throws std::invalid_argument when no pivot is eligible.
std::vector<KnapsackBranch> branch_children(const KnapsackInstance& inst,
                                            const DantzigResult& solved,
                                            BranchRule rule);

// 1 + max{m*alpha/(1-alpha)^2, (m+1)/(1-alpha)}, the left-turn allowance.
Rational left_turn_bound(const Rational& alpha, std::size_t m);

struct KnapsackSolution {
  std::vector<std::optional<std::size_t>> assignment;  // original item -> knapsack
  Rational value;
};

struct KnapsackNode {
  std::vector<std::size_t> items;  // residual items (original indices)
  std::vector<Rational> capacities;
  Rational fixed_profit;
  std::vector<std::pair<std::size_t, std::size_t>> fixed;  // (item, knapsack)
  KnapsackInstance residual;
  DantzigResult solved;
};

// Engine adapter for the multi-knapsack scheme. Every node drops items that
// fit none of its residual capacities before solving, so each critical item
// has a feasible single-item placement.
class KnapsackAdapter {
 public:
  using Payload = KnapsackNode;
  using Solution = KnapsackSolution;
  static constexpr bool kTracksTurns = true;

  explicit KnapsackAdapter(KnapsackInstance inst, BranchRule rule = BranchRule::kCE);

  Sense sense() const { return Sense::kMaximize; }
  Child<Payload, Solution> root();
  Expansion<Payload, Solution> branch(const Payload& node, const NodeInfo& info);

  // Called with every residual instance solved and its Dantzig result.
  std::function<void(const KnapsackInstance&, const DantzigResult&)> on_solve;

 private:
  Child<Payload, Solution> make_node(std::vector<std::size_t> items,
                                     std::vector<Rational> capacities, Rational fixed_profit,
                                     std::vector<std::pair<std::size_t, std::size_t>> fixed);

  KnapsackInstance inst_;
  BranchRule rule_;
};

struct KnapsackRunConfig {
  Rational alpha;
  Selection selection = Selection::kBestFirst;
  BranchRule rule = BranchRule::kCE;
  std::size_t node_limit = 10000;
};

// Requires 0 < alpha < 1.
RunResult<KnapsackSolution> solve_knapsack(
    const KnapsackInstance& inst, const KnapsackRunConfig& config,
    std::function<void(const KnapsackInstance&, const DantzigResult&)> on_solve = {});

}  // namespace bnbptas

#endif  // BNBPTAS_KNAPSACK_HPP_
