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

#ifndef BNBPTAS_SCHEDULING_HPP_
#define BNBPTAS_SCHEDULING_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnbptas/engine.hpp"
#include "bnbptas/instances.hpp"
#include "bnbptas/lp.hpp"
#include "bnbptas/rational.hpp"

namespace bnbptas {

// x[j][i]: share of job j on machine i.
using Assignment = std::vector<std::vector<Rational>>;

struct Schedule {
  std::vector<std::size_t> assignment;  // job -> machine
  Rational makespan;
};

// Makespan of an integral assignment, overheads included.
Rational makespan_of(const SchedulingInstance& inst, const std::vector<std::size_t>& assignment);

// The feasibility system at guess T: one variable per pair (j, i) with
// p_{j,i} <= T (every pair when `eligible_only` is false), sum_i x_{j,i} = 1
// per job and t_i + sum_j p_{j,i} x_{j,i} <= T per machine.
struct PartialLp {
  LinearProgram lp;
  std::vector<std::pair<std::size_t, std::size_t>> columns;  // variable -> (job, machine)
};
PartialLp partial_lp(const SchedulingInstance& inst, const Rational& T, bool eligible_only = true);

// Vertex values spread back over the n x m matrix.
Assignment to_assignment(const SchedulingInstance& inst, const PartialLp& system,
                         const Vertex& vertex);

struct TSearchResult {
  Rational t_min;
  Vertex vertex;
  Assignment x;
  std::size_t lp_solves = 0;
};

// Spacing of the makespan grid: the instance's search_step when set, else
// 1/D with D the common denominator of P and t.
Rational search_step(const SchedulingInstance& inst);

// Each job in input order onto the machine that finishes it earliest.
Schedule greedy_schedule(const SchedulingInstance& inst);

// A vertex of the system at T, or nullopt if it is infeasible.
std::optional<TSearchResult> solve_at(const SchedulingInstance& inst, const Rational& T);

// Binary search for the smallest grid T with a feasible system.
TSearchResult min_feasible_T(const SchedulingInstance& inst);

// Smallest grid T for which the plain makespan relaxation (no eligibility
// filter) is feasible; found by bisection with the same vertex solver.
Rational lr_bound(const SchedulingInstance& inst);

enum class Rounding { kAS, kBM, kLstMatch };
std::string to_string(Rounding rounding);
Rounding parse_rounding(const std::string& text);

// Jobs without a unit entry, ascending.
std::vector<std::size_t> fractional_jobs(const Assignment& x);

// Keeps integral jobs and places the fractional ones. AS: cheapest machine.
// LST-match: along an injection into machines with a positive share; throws
// std::logic_error if none exists or the makespan exceeds 2T. BM: the
// placement of the fractional jobs with the smallest makespan (exhaustive).
Schedule round_vertex(const SchedulingInstance& inst, const Assignment& x, Rounding mode,
                      const Rational& T);

// Fractional job with the largest minimal processing time; ties to the
// lowest index. nullopt when x is integral.
std::optional<std::size_t> mmp_pivot(const SchedulingInstance& inst, const Assignment& x);

// The sub-instance on `jobs` (in that order) with the given overheads. Kind,
// speeds and search_step are carried over.
SchedulingInstance residual_instance(const SchedulingInstance& inst,
                                     const std::vector<std::size_t>& jobs,
                                     std::vector<Rational> overheads);

enum class BoundMode { kBS, kLR };
std::string to_string(BoundMode mode);
BoundMode parse_bound_mode(const std::string& text);

struct SchedulingNode {
  std::vector<std::size_t> jobs;  // unfixed, original indices
  std::vector<Rational> overheads;
  std::vector<std::optional<std::size_t>> fixed;  // original job -> machine
  Assignment x;                                   // over `jobs`
  Rational t_min;
};

// What the adapter saw at one expansion.
struct BranchReport {
  std::size_t depth = 0;
  std::size_t pivot = 0;  // original index
  Rational lb;
  Rational ub;
  Rational pivot_min_time;
  std::size_t fractional = 0;
};

// The unrelated-machines scheme: bound by the binary-search vertex (BS) or
// the plain relaxation (LR), round, and branch on the MMP job onto every
// machine.
class UnrelatedAdapter {
 public:
  using Payload = SchedulingNode;
  using Solution = Schedule;

  UnrelatedAdapter(SchedulingInstance inst, BoundMode bound, Rounding rounding);

  Sense sense() const { return Sense::kMinimize; }
  Child<Payload, Solution> root();
  Expansion<Payload, Solution> branch(const Payload& node, const NodeInfo& info);

  std::function<void(const BranchReport&)> on_branch;

 private:
  Child<Payload, Solution> make_node(std::vector<std::size_t> jobs,
                                     std::vector<Rational> overheads,
                                     std::vector<std::optional<std::size_t>> fixed);

  SchedulingInstance inst_;
  BoundMode bound_;
  Rounding rounding_;
};

// floor(m^2 / eps), the depth allowance of the unrelated scheme.
std::size_t depth_allowance(std::size_t m, const Rational& eps);

struct UnrelatedRunConfig {
  Rational epsilon;
  Selection selection = Selection::kBestFirst;
  BoundMode bound = BoundMode::kBS;
  Rounding rounding = Rounding::kAS;
  std::size_t node_limit = 10000;
  // Close nodes at depth floor(m^2/eps) without branching.
  bool cap_depth = false;
};

// Requires eps > 0.
RunResult<Schedule> solve_unrelated(const SchedulingInstance& inst,
                                    const UnrelatedRunConfig& config,
                                    std::function<void(const BranchReport&)> on_branch = {});

}  // namespace bnbptas

#endif  // BNBPTAS_SCHEDULING_HPP_
