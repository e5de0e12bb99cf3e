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

#ifndef BNBPTAS_PROFILES_HPP_
#define BNBPTAS_PROFILES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bnbptas/engine.hpp"
#include "bnbptas/instances.hpp"
#include "bnbptas/rational.hpp"
#include "bnbptas/scheduling.hpp"

namespace bnbptas {

struct Normalized {
  SchedulingInstance instance;
  Rational scale;  // root t_min of the input
};

// Divides every time by the root t_min. The search grid is scaled along, so
// the normalized root bound is exactly 1. Uniform or identical kinds only.
Normalized normalize(const SchedulingInstance& inst);

// 2(1 + eps)^2, the side of the profile cube.
Rational profile_cap(const Rational& eps);

// floor(profile_i * n / eps) per coordinate, or nullopt when a coordinate
// leaves the cube.
std::optional<std::vector<std::int64_t>> similarity_cell(const std::vector<Rational>& profile,
                                                         const Rational& eps, std::size_t n);

struct LongestFractional {
  Assignment x;
  // False when the eligibility filter blocked every exchange and x was
  // returned unchanged.
  bool applied = true;
};

// Moves fractional mass so that the longest job (largest base time, lowest
// index on ties) becomes fractional while every machine keeps its
// completion time. Identity when a longest job already is fractional.
// Requires a uniform or identical instance and a fractional x feasible at T.
LongestFractional make_longest_fractional(const SchedulingInstance& inst, const Assignment& x,
                                          const Rational& T);

// G(x) is a forest and each of its components holds at most one machine
// finishing strictly before T.
bool uniform_vertex_check(const SchedulingInstance& inst, const Assignment& x, const Rational& T);

// Largest eps (1 + eps)^k <= x over k >= 0. Requires x >= eps > 0.
Rational round_geometric(const Rational& x, const Rational& eps);

// 8 (1/eps)^(log_{1+eps}(2(1+eps)^2/eps)), in floating point.
long double reduced_form_bound(const Rational& eps);

// Order-free machine profile: sorted (rounded completion, machine count).
struct EquivalenceKey {
  std::vector<std::pair<Rational, std::size_t>> counts;
  friend bool operator==(const EquivalenceKey&, const EquivalenceKey&) = default;
};

// Key of a partial schedule on identical machines, or nullopt (the small
// job signal) when a fixed job has p_j < eps.
std::optional<EquivalenceKey> equivalence_key(const SchedulingInstance& inst,
                                              const std::vector<std::optional<std::size_t>>& fixed,
                                              const Rational& eps);
EquivalenceKey equivalence_key(const std::vector<Rational>& rounded_completions);

enum class ProfileRule { kSimilar, kEquivalent };

struct ProfileNode {
  std::size_t level = 0;  // jobs order[0..level) are fixed
  std::vector<Rational> overheads;
  std::vector<Rational> rounded;  // per-machine rounded completions
  std::vector<std::optional<std::size_t>> fixed;
  Assignment x;  // over order[level..n)
  Rational t_min;
};

// Profile-pruned scheme on a normalized uniform or identical instance. Jobs
// are taken longest first, so every level fixes the same job.
class ProfileAdapter {
 public:
  using Payload = ProfileNode;
  using Solution = Schedule;

  // `root_only` closes the root, for eps outside the scheme's range.
  ProfileAdapter(SchedulingInstance normalized, Rational eps, ProfileRule rule,
                 bool root_only = false);

  Sense sense() const { return Sense::kMinimize; }
  Child<Payload, Solution> root();
  Expansion<Payload, Solution> branch(const Payload& node, const NodeInfo& info);
  bool admit(const Child<Payload, Solution>& child, std::size_t depth, std::size_t id);

  const std::vector<std::size_t>& order() const { return order_; }
  std::size_t big_jobs() const;
  std::size_t distinct_rounded_values() const { return rounded_values_.size(); }
  std::size_t cube_rejections() const { return cube_rejections_; }
  std::size_t profile_merges() const { return profile_merges_; }
  std::size_t transforms_blocked() const { return transforms_blocked_; }

 private:
  Child<Payload, Solution> make_node(std::size_t level, std::vector<Rational> overheads,
                                     std::vector<Rational> rounded,
                                     std::vector<std::optional<std::size_t>> fixed);

  SchedulingInstance inst_;
  Rational eps_;
  ProfileRule rule_;
  bool root_only_;
  std::vector<std::size_t> order_;
  std::set<std::pair<std::size_t, std::vector<std::int64_t>>> cells_;
  std::set<std::pair<std::size_t, std::vector<std::pair<Rational, std::size_t>>>> keys_;
  std::unordered_set<Rational> rounded_values_;
  std::size_t cube_rejections_ = 0;
  std::size_t profile_merges_ = 0;
  std::size_t transforms_blocked_ = 0;
};

struct ProfileRunConfig {
  Rational epsilon;
  Selection selection = Selection::kBestFirst;
  std::size_t node_limit = 10000;
};

struct ProfileRunResult {
  // Values and bounds in the input's units; the schedule indexes input jobs.
  RunResult<Schedule> run;
  Rational scale;
  std::size_t big_jobs = 0;
  std::size_t distinct_rounded_values = 0;
  std::size_t transforms_blocked = 0;
};

// Similar-profile pruning on uniform machines; eps >= 1 returns the root
// rounding.
ProfileRunResult solve_sim_prof(const SchedulingInstance& inst, const ProfileRunConfig& config);

// Equivalent-profile pruning on identical machines; eps > 1 returns the root
// rounding.
ProfileRunResult solve_eq_prof(const SchedulingInstance& inst, const ProfileRunConfig& config);

}  // namespace bnbptas

#endif  // BNBPTAS_PROFILES_HPP_
