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

#ifndef BNBPTAS_ENGINE_HPP_
#define BNBPTAS_ENGINE_HPP_

#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bnbptas/rational.hpp"

namespace bnbptas {

enum class Sense { kMaximize, kMinimize };
enum class Selection { kDfs, kBfs, kBestFirst };

enum class Termination {
  kRatioMet,
  kNodeLimit,
  kFrontierEmpty,
  // Nodes at the depth cap were closed unexpanded and the frontier ran dry.
  kDepthCap,
  // The adapter asked to stop (identical-machine small-job rule).
  kAdapterHalt,
};

std::string to_string(Sense sense);
std::string to_string(Selection selection);
std::string to_string(Termination termination);
Selection parse_selection(const std::string& text);

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DegenerateBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Maximization: best / bound >= target. Minimization: best / bound <= target.
// Exact; throws DegenerateBound when bound is zero.
bool should_stop(const Rational& best_value, const Rational& global_bound,
                 const Rational& target, Sense sense);

// Fixing decision: item or job `index` goes to `target`. For knapsack the
// exclusion branch uses target == m (the "m+1"-th child, zero-based).
struct Decision {
  std::size_t index = 0;
  std::size_t target = 0;
  friend bool operator==(const Decision&, const Decision&) = default;
};

struct FrontierEntry {
  std::size_t id = 0;
  std::size_t depth = 0;
  Rational key;  // local UB when maximizing, local LB when minimizing
};

// Returns the entry the strategy selects. Best-first takes the best key,
// DFS the deepest and then the most recently inserted (largest id), BFS the
// shallowest and then the earliest inserted; remaining ties go to the
// smallest id. Throws std::invalid_argument on an empty frontier.
FrontierEntry select_next(const std::vector<FrontierEntry>& frontier,
                          Selection selection, Sense sense);

// Active set ordered by the selection rule, plus an ordered view of keys so
// the global bound is read in O(1).
class Frontier {
 public:
  Frontier(Selection selection, Sense sense);

  void push(const FrontierEntry& entry);
  FrontierEntry pop();
  bool empty() const { return order_.empty(); }
  std::size_t size() const { return order_.size(); }
  // Max key when maximizing, min key when minimizing.
  const Rational& best_bound() const;

 private:
  struct Before {
    Selection selection;
    Sense sense;
    bool operator()(const FrontierEntry& a, const FrontierEntry& b) const;
  };
  struct ByKey {
    bool operator()(const FrontierEntry& a, const FrontierEntry& b) const;
  };
  Sense sense_;
  std::set<FrontierEntry, Before> order_;
  std::set<FrontierEntry, ByKey> keys_;
};

// What an adapter hands back for every node it creates: the residual
// problem, the decision leading to it, its bounds and a feasible completion.
template <class Payload, class Solution>
struct Child {
  Payload payload;
  std::optional<Decision> decision;
  bool right_turn = false;
  Rational lb;
  Rational ub;
  std::optional<Solution> solution;  // feasible, with value solution_value
  Rational solution_value;
  // No branching possible (bounds closed or nothing left to fix).
  bool terminal = false;
};

template <class Payload, class Solution>
struct Expansion {
  std::vector<Child<Payload, Solution>> children;
  bool halt = false;
};

// Read-only view of a node handed to the adapter.
struct NodeInfo {
  std::size_t id = 0;
  std::size_t depth = 0;
  Rational lb;
  Rational ub;
};

template <class A>
concept BnbAdapter = requires(A& a, const typename A::Payload& payload,
                              const NodeInfo& info) {
  typename A::Payload;
  typename A::Solution;
  { a.sense() } -> std::same_as<Sense>;
  { a.root() } -> std::same_as<Child<typename A::Payload, typename A::Solution>>;
  { a.branch(payload, info) }
      -> std::same_as<Expansion<typename A::Payload, typename A::Solution>>;
};

// Optional hook: a last filter applied to children that survived pruning.
template <class A>
concept AdmitsChildren = requires(A& a, const Child<typename A::Payload, typename A::Solution>& c,
                                  std::size_t depth, std::size_t id) {
  { a.admit(c, depth, id) } -> std::same_as<bool>;
};

// Adapters that distinguish left and right turns (knapsack).
template <class A>
concept TracksTurns = requires { A::kTracksTurns; };

struct RunOptions {
  Selection selection = Selection::kBestFirst;
  Rational target;  // alpha (maximization) or 1 + eps (minimization)
  std::size_t node_limit = 10000;
  // Nodes at this depth are closed without branching.
  std::optional<std::size_t> depth_cap;
};

template <class Solution>
struct RunResult {
  std::optional<Solution> best_solution;
  Rational best_value;
  Rational global_bound;
  std::size_t nodes_explored = 0;
  // Every node the adapter produced, including pruned and filtered ones.
  std::size_t nodes_created = 0;
  // Depth, turn and level metrics cover the nodes kept in the tree.
  std::size_t max_depth = 0;
  std::optional<std::size_t> left_turn_max;
  std::size_t nodes_after_optimum = 0;
  Termination termination = Termination::kFrontierEmpty;
  // Kept nodes per depth, root included.
  std::vector<std::size_t> level_counts;
};

// The generic loop. The root counts as one explored node; every selection
// afterwards adds one. Children are audited for bound monotonicity, offered
// to the incumbent, pruned on "cannot strictly improve", passed through the
// adapter's admit hook and inserted.
template <BnbAdapter A>
RunResult<typename A::Solution> run(A& adapter, const RunOptions& options) {
  using Payload = typename A::Payload;
  using Solution = typename A::Solution;
  const Sense sense = adapter.sense();
  const bool maximize = sense == Sense::kMaximize;

  struct Record {
    std::optional<Payload> payload;
    std::size_t depth = 0;
    std::size_t left_turns = 0;
    Rational lb;
    Rational ub;
  };
  std::vector<Record> records;
  Frontier frontier(options.selection, sense);
  RunResult<Solution> result;
  std::size_t explored_at_improvement = 0;
  bool have_incumbent = false;
  bool depth_cap_hit = false;
  // Best bound among nodes closed by the depth cap; they stay part of the
  // global bound even though they are never expanded.
  std::optional<Rational> capped_bound;

  auto improves = [&](const Rational& value) {
    if (!have_incumbent) return true;
    return maximize ? value > result.best_value : value < result.best_value;
  };
  auto offer = [&](Child<Payload, Solution>& child) {
    if (child.solution && improves(child.solution_value)) {
      result.best_solution = std::move(child.solution);
      result.best_value = child.solution_value;
      have_incumbent = true;
      explored_at_improvement = result.nodes_explored;
    }
  };
  auto hopeless = [&](const Rational& lb, const Rational& ub) {
    if (!have_incumbent) return false;
    return maximize ? ub <= result.best_value : lb >= result.best_value;
  };
  auto note_level = [&](std::size_t depth) {
    if (result.level_counts.size() <= depth) result.level_counts.resize(depth + 1, 0);
    ++result.level_counts[depth];
    if (depth > result.max_depth) result.max_depth = depth;
  };
  auto insert = [&](Child<Payload, Solution>&& child, std::size_t depth, std::size_t left_turns) {
    const std::size_t id = records.size();
    FrontierEntry entry{id, depth, maximize ? child.ub : child.lb};
    records.push_back(Record{std::move(child.payload), depth, left_turns, child.lb, child.ub});
    frontier.push(entry);
  };
  auto turn_metric = [&](std::size_t left_turns) {
    if constexpr (TracksTurns<A>) {
      if (!result.left_turn_max || left_turns > *result.left_turn_max) {
        result.left_turn_max = left_turns;
      }
    }
  };

  Child<Payload, Solution> root = adapter.root();
  result.nodes_explored = 1;
  result.nodes_created = 1;
  note_level(0);
  turn_metric(0);
  offer(root);
  const Rational root_bound = maximize ? root.ub : root.lb;
  const bool root_open = !root.terminal;
  if (root_open) insert(std::move(root), 0, 0);

  auto better_bound = [&](const Rational& a, const Rational& b) {
    return maximize ? max(a, b) : min(a, b);
  };
  // Bound over everything still open, the capped nodes included.
  auto open_bound = [&](const Rational& fallback) {
    Rational bound = frontier.empty() ? fallback : frontier.best_bound();
    if (capped_bound) bound = frontier.empty() ? *capped_bound : better_bound(bound, *capped_bound);
    return have_incumbent ? better_bound(bound, result.best_value) : bound;
  };
  auto finish = [&](Termination why) {
    result.termination = why;
    result.global_bound = open_bound(have_incumbent ? result.best_value : root_bound);
    result.nodes_after_optimum = result.nodes_explored - explored_at_improvement;
    return result;
  };

  while (true) {
    if (have_incumbent) {
      const Rational bound = open_bound(result.best_value);
      if (bound == result.best_value) {
        return finish(frontier.empty() && root_open ? (depth_cap_hit ? Termination::kDepthCap
                                                                     : Termination::kFrontierEmpty)
                                                    : Termination::kRatioMet);
      }
      if (!bound.is_zero() && should_stop(result.best_value, bound, options.target, sense)) {
        return finish(Termination::kRatioMet);
      }
    }
    if (frontier.empty()) {
      return finish(depth_cap_hit ? Termination::kDepthCap : Termination::kFrontierEmpty);
    }
    if (result.nodes_explored >= options.node_limit) return finish(Termination::kNodeLimit);

    const FrontierEntry entry = frontier.pop();
    Record& rec = records[entry.id];
    if (hopeless(rec.lb, rec.ub)) {
      rec.payload.reset();
      continue;
    }
    // The root was already counted when it was bounded.
    if (entry.id != 0) ++result.nodes_explored;
    const Payload payload = std::move(*rec.payload);
    rec.payload.reset();
    const std::size_t depth = rec.depth;
    const std::size_t left_turns = rec.left_turns;
    const Rational parent_lb = rec.lb;
    const Rational parent_ub = rec.ub;
    if (options.depth_cap && depth >= *options.depth_cap) {
      depth_cap_hit = true;
      const Rational own = maximize ? parent_ub : parent_lb;
      capped_bound = capped_bound ? better_bound(*capped_bound, own) : own;
      continue;
    }

    NodeInfo info{entry.id, depth, parent_lb, parent_ub};
    Expansion<Payload, Solution> expansion = adapter.branch(payload, info);
    for (auto& child : expansion.children) {
      if (maximize ? child.ub > parent_ub : child.lb < parent_lb) {
        throw ContractViolation(
            "child bound " + (maximize ? child.ub : child.lb).str() + " is " +
            (maximize ? "above the parent UB " + parent_ub.str()
                      : "below the parent LB " + parent_lb.str()) +
            " at depth " + std::to_string(depth + 1));
      }
      const std::size_t child_depth = depth + 1;
      const std::size_t child_turns = left_turns + (child.right_turn ? 0 : 1);
      ++result.nodes_created;
      offer(child);
      if (!child.terminal && hopeless(child.lb, child.ub)) continue;
      if constexpr (AdmitsChildren<A>) {
        if (!adapter.admit(child, child_depth, records.size())) continue;
      }
      note_level(child_depth);
      turn_metric(child_turns);
      if (!child.terminal) insert(std::move(child), child_depth, child_turns);
    }
    if (expansion.halt) return finish(Termination::kAdapterHalt);
  }
}

}  // namespace bnbptas

#endif  // BNBPTAS_ENGINE_HPP_
