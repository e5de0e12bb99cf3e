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

#include "bnbptas/knapsack.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnbptas {

DantzigResult dantzig_solve(const KnapsackInstance& inst) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  DantzigResult out;
  FracKnapSolution& frac = out.frac;
  frac.x.assign(n, std::vector<Rational>(m));
  out.rounded.assignment.assign(n, std::nullopt);

  for (std::size_t j = 0; j < n; ++j) {
    if (inst.weights[j].sign() > 0) frac.order.push_back(j);
  }
  std::stable_sort(frac.order.begin(), frac.order.end(), [&](std::size_t a, std::size_t b) {
    return inst.profits[a] * inst.weights[b] > inst.profits[b] * inst.weights[a];
  });
  if (m == 0) return out;

  // Zero-weight items ride along for free.
  Rational free_profit;
  std::vector<std::optional<std::size_t>> free_assignment(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.weights[j].sign() == 0) {
      frac.x[j][0] = Rational(1);
      free_assignment[j] = 0;
      free_profit += inst.profits[j];
    }
  }
  frac.sub_value = free_profit;

  std::size_t i = 0;
  Rational room = inst.capacities[0];
  for (std::size_t j : frac.order) {
    const Rational& w = inst.weights[j];
    const Rational& p = inst.profits[j];
    Rational need = w;
    bool cut = false;
    while (need.sign() > 0 && i < m) {
      if (room.is_zero()) {
        if (++i < m) room = inst.capacities[i];
        continue;
      }
      if (need <= room) {
        const Rational share = need / w;
        frac.x[j][i] += share;
        frac.sub_value += p * share;
        room -= need;
        need = Rational();
      } else {
        const Rational share = room / w;
        frac.x[j][i] += share;
        frac.sub_value += p * share;
        need -= room;
        room = Rational();
        cut = true;
        if (++i < m) room = inst.capacities[i];
      }
    }
    if (cut) frac.critical_items.push_back(j);
    if (i == m) break;
  }

  for (std::size_t s : frac.critical_items) {
    if (!frac.j_star || inst.profits[s] > inst.profits[*frac.j_star]) frac.j_star = s;
  }

  // Candidate 1: floor(x*).
  IntKnapSolution best;
  best.assignment = free_assignment;
  best.value = free_profit;
  for (std::size_t j : frac.order) {
    for (std::size_t k = 0; k < m; ++k) {
      if (frac.x[j][k] == Rational(1)) {
        best.assignment[j] = k;
        best.value += inst.profits[j];
      }
    }
  }
  // Candidates 2..: each critical item alone in the first knapsack that fits.
  for (std::size_t s : frac.critical_items) {
    for (std::size_t k = 0; k < m; ++k) {
      if (inst.weights[s] > inst.capacities[k]) continue;
      const Rational value = free_profit + inst.profits[s];
      if (value > best.value) {
        best.assignment = free_assignment;
        best.assignment[s] = k;
        best.value = value;
      }
      break;
    }
  }
  out.rounded = std::move(best);
  return out;
}

bool is_feasible(const KnapsackInstance& inst, const IntKnapSolution& solution) {
  if (solution.assignment.size() != inst.n()) return false;
  std::vector<Rational> load(inst.m());
  Rational value;
  for (std::size_t j = 0; j < inst.n(); ++j) {
    if (!solution.assignment[j]) continue;
    const std::size_t k = *solution.assignment[j];
    if (k >= inst.m()) return false;
    load[k] += inst.weights[j];
    value += inst.profits[j];
  }
  for (std::size_t k = 0; k < inst.m(); ++k) {
    if (load[k] > inst.capacities[k]) return false;
  }
  return value == solution.value;
}

std::string to_string(BranchRule rule) {
  switch (rule) {
    case BranchRule::kCE:
      return "CE";
    case BranchRule::kPPW:
      return "PPW";
    case BranchRule::kK:
      return "K";
  }
  return "unknown";
}

BranchRule parse_branch_rule(const std::string& text) {
  if (text == "CE") return BranchRule::kCE;
  if (text == "PPW") return BranchRule::kPPW;
  if (text == "K") return BranchRule::kK;
  throw std::invalid_argument("unknown knapsack branching rule '" + text + "'");
}

std::optional<std::size_t> select_pivot(const DantzigResult& solved, BranchRule rule) {
  const FracKnapSolution& frac = solved.frac;
  switch (rule) {
    case BranchRule::kCE:
      return frac.j_star;
    case BranchRule::kPPW:
      if (frac.critical_items.empty()) return std::nullopt;
      return frac.critical_items.front();
    case BranchRule::kK:
      if (frac.order.empty()) return std::nullopt;
      return frac.order.front();
  }
  return std::nullopt;
}

std::vector<KnapsackBranch> branch_children(const KnapsackInstance& inst,
                                            const DantzigResult& solved, BranchRule rule) {
  const auto pivot = select_pivot(solved, rule);
  if (!pivot) {
    throw std::invalid_argument("branch_children: no eligible pivot under rule " +
                                to_string(rule));
  }
  std::vector<KnapsackBranch> out;
  const Rational& w = inst.weights[*pivot];
  for (std::size_t k = 0; k < inst.m(); ++k) {
    if (w > inst.capacities[k]) continue;
    KnapsackBranch b{*pivot, k, false, inst.capacities};
    b.capacities[k] -= w;
    out.push_back(std::move(b));
  }
  out.push_back(KnapsackBranch{*pivot, inst.m(), true, inst.capacities});
  return out;
}

Rational left_turn_bound(const Rational& alpha, std::size_t m) {
  const Rational gap = Rational(1) - alpha;
  const Rational mm(static_cast<std::int64_t>(m));
  const Rational by_gap_squared = mm * alpha / (gap * gap);
  const Rational by_gap = (mm + Rational(1)) / gap;
  return Rational(1) + max(by_gap_squared, by_gap);
}

KnapsackAdapter::KnapsackAdapter(KnapsackInstance inst, BranchRule rule)
    : inst_(std::move(inst)), rule_(rule) {
  inst_.validate();
}

Child<KnapsackNode, KnapsackSolution> KnapsackAdapter::make_node(
    std::vector<std::size_t> items, std::vector<Rational> capacities, Rational fixed_profit,
    std::vector<std::pair<std::size_t, std::size_t>> fixed) {
  Rational room;
  for (const auto& c : capacities) room = max(room, c);
  std::vector<std::size_t> usable;
  for (std::size_t j : items) {
    if (inst_.weights[j] <= room) usable.push_back(j);
  }

  KnapsackNode node;
  node.items = std::move(usable);
  node.capacities = std::move(capacities);
  node.fixed_profit = std::move(fixed_profit);
  node.fixed = std::move(fixed);
  node.residual.capacities = node.capacities;
  for (std::size_t j : node.items) {
    node.residual.weights.push_back(inst_.weights[j]);
    node.residual.profits.push_back(inst_.profits[j]);
  }
  node.solved = dantzig_solve(node.residual);
  if (on_solve) on_solve(node.residual, node.solved);

  Child<KnapsackNode, KnapsackSolution> child;
  child.ub = node.fixed_profit + node.solved.frac.sub_value;
  child.lb = node.fixed_profit + node.solved.rounded.value;
  KnapsackSolution solution;
  solution.assignment.assign(inst_.n(), std::nullopt);
  for (const auto& [item, knapsack] : node.fixed) solution.assignment[item] = knapsack;
  for (std::size_t r = 0; r < node.items.size(); ++r) {
    if (node.solved.rounded.assignment[r]) {
      solution.assignment[node.items[r]] = node.solved.rounded.assignment[r];
    }
  }
  solution.value = child.lb;
  child.solution = std::move(solution);
  child.solution_value = child.lb;
  child.terminal = node.solved.frac.critical_items.empty();
  child.payload = std::move(node);
  return child;
}

Child<KnapsackNode, KnapsackSolution> KnapsackAdapter::root() {
  std::vector<std::size_t> items(inst_.n());
  for (std::size_t j = 0; j < items.size(); ++j) items[j] = j;
  return make_node(std::move(items), inst_.capacities, Rational(), {});
}

Expansion<KnapsackNode, KnapsackSolution> KnapsackAdapter::branch(const KnapsackNode& node,
                                                                  const NodeInfo&) {
  Expansion<KnapsackNode, KnapsackSolution> out;
  for (auto& b : branch_children(node.residual, node.solved, rule_)) {
    const std::size_t item = node.items[b.pivot];
    std::vector<std::size_t> items;
    items.reserve(node.items.size() - 1);
    for (std::size_t j : node.items) {
      if (j != item) items.push_back(j);
    }
    auto fixed = node.fixed;
    Rational profit = node.fixed_profit;
    if (!b.right_turn) {
      fixed.emplace_back(item, b.target);
      profit += inst_.profits[item];
    }
    auto child = make_node(std::move(items), std::move(b.capacities), std::move(profit),
                           std::move(fixed));
    child.decision = Decision{item, b.target};
    child.right_turn = b.right_turn;
    out.children.push_back(std::move(child));
  }
  return out;
}

RunResult<KnapsackSolution> solve_knapsack(
    const KnapsackInstance& inst, const KnapsackRunConfig& config,
    std::function<void(const KnapsackInstance&, const DantzigResult&)> on_solve) {
  if (config.alpha.sign() <= 0 || config.alpha >= Rational(1)) {
    throw std::invalid_argument("knapsack: alpha must lie strictly between 0 and 1");
  }
  KnapsackAdapter adapter(inst, config.rule);
  adapter.on_solve = std::move(on_solve);
  RunOptions options;
  options.selection = config.selection;
  options.target = config.alpha;
  options.node_limit = config.node_limit;
  return run(adapter, options);
}

}  // namespace bnbptas
