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

#include "bnbptas/scheduling.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnbptas {

Rational makespan_of(const SchedulingInstance& inst, const std::vector<std::size_t>& assignment) {
  std::vector<Rational> finish = inst.overheads;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    finish[assignment[j]] += inst.processing[j][assignment[j]];
  }
  Rational makespan;
  for (const auto& f : finish) makespan = max(makespan, f);
  return makespan;
}

PartialLp partial_lp(const SchedulingInstance& inst, const Rational& T, bool eligible_only) {
  const std::size_t n = inst.n(), m = inst.m();
  PartialLp out;
  out.lp.inequalities.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.lp.inequalities[i].rhs = T - inst.overheads[i];
  for (std::size_t j = 0; j < n; ++j) {
    LinearRow row;
    row.rhs = Rational(1);
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& p = inst.processing[j][i];
      if (eligible_only && p > T) continue;
      const std::size_t var = out.columns.size();
      out.columns.emplace_back(j, i);
      row.terms.push_back({var, Rational(1)});
      out.lp.inequalities[i].terms.push_back({var, p});
    }
    out.lp.equalities.push_back(std::move(row));
  }
  out.lp.num_vars = out.columns.size();
  return out;
}

Assignment to_assignment(const SchedulingInstance& inst, const PartialLp& system,
                         const Vertex& vertex) {
  Assignment x(inst.n(), std::vector<Rational>(inst.m()));
  for (std::size_t v = 0; v < system.columns.size(); ++v) {
    const auto [j, i] = system.columns[v];
    x[j][i] = vertex.values[v];
  }
  return x;
}

Rational search_step(const SchedulingInstance& inst) {
  if (inst.search_step) return *inst.search_step;
  std::vector<Rational> values = inst.overheads;
  for (const auto& row : inst.processing) values.insert(values.end(), row.begin(), row.end());
  return common_denominator(values).reciprocal();
}

Schedule greedy_schedule(const SchedulingInstance& inst) {
  Schedule out;
  std::vector<Rational> finish = inst.overheads;
  for (std::size_t j = 0; j < inst.n(); ++j) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < inst.m(); ++i) {
      if (finish[i] + inst.processing[j][i] < finish[pick] + inst.processing[j][pick]) pick = i;
    }
    finish[pick] += inst.processing[j][pick];
    out.assignment.push_back(pick);
  }
  out.makespan = makespan_of(inst, out.assignment);
  return out;
}

std::optional<TSearchResult> solve_at(const SchedulingInstance& inst, const Rational& T) {
  const PartialLp system = partial_lp(inst, T);
  auto vertex = solve_vertex(system.lp);
  if (!vertex) return std::nullopt;
  TSearchResult out;
  out.t_min = T;
  out.x = to_assignment(inst, system, *vertex);
  out.vertex = std::move(*vertex);
  out.lp_solves = 1;
  return out;
}

namespace {

Rational max_overhead(const SchedulingInstance& inst) {
  Rational t;
  for (const auto& v : inst.overheads) t = max(t, v);
  return t;
}

// max(max_i t_i, (sum_j min_i p_{j,i} + sum_i t_i) / m), plus the longest
// shortest job when the eligibility filter applies.
Rational lower_bracket(const SchedulingInstance& inst, bool eligible_only) {
  Rational bound = max_overhead(inst);
  Rational total;
  for (const auto& t : inst.overheads) total += t;
  for (const auto& row : inst.processing) {
    const Rational shortest = *std::min_element(row.begin(), row.end());
    total += shortest;
    if (eligible_only) bound = max(bound, shortest);
  }
  return max(bound, total / Rational(static_cast<std::int64_t>(inst.m())));
}

// Smallest k in [lo, hi] with feasible(k * step); feasible(hi * step) holds.
template <class Feasible>
Rational grid_search(Rational lo, Rational hi, Feasible&& feasible) {
  while (lo < hi) {
    const Rational mid = ((lo + hi) / Rational(2)).floor();
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid + Rational(1);
    }
  }
  return lo;
}

}  // namespace

TSearchResult min_feasible_T(const SchedulingInstance& inst) {
  if (inst.m() == 0) throw std::invalid_argument("min_feasible_T: no machines");
  if (inst.n() == 0) {
    TSearchResult out;
    out.t_min = max_overhead(inst);
    return out;
  }
  const Rational step = search_step(inst);
  const Rational lo = (lower_bracket(inst, true) / step).ceil();
  const Rational hi = max(lo, (greedy_schedule(inst).makespan / step).ceil());
  std::size_t solves = 0;
  const Rational k = grid_search(lo, hi, [&](const Rational& mid) {
    ++solves;
    return solve_vertex(partial_lp(inst, mid * step).lp).has_value();
  });
  auto found = solve_at(inst, k * step);
  if (!found) throw std::logic_error("min_feasible_T: infeasible at the upper bracket");
  found->lp_solves += solves;
  return std::move(*found);
}

Rational lr_bound(const SchedulingInstance& inst) {
  if (inst.m() == 0) throw std::invalid_argument("lr_bound: no machines");
  if (inst.n() == 0) return max_overhead(inst);
  const Rational step = search_step(inst);
  const Rational lo = (lower_bracket(inst, false) / step).ceil();
  const Rational hi = max(lo, (greedy_schedule(inst).makespan / step).ceil());
  return grid_search(lo, hi,
                     [&](const Rational& mid) {
                       return solve_vertex(partial_lp(inst, mid * step, false).lp).has_value();
                     }) *
         step;
}

std::string to_string(Rounding rounding) {
  switch (rounding) {
    case Rounding::kAS:
      return "AS";
    case Rounding::kBM:
      return "BM";
    case Rounding::kLstMatch:
      return "LST";
  }
  return "unknown";
}

Rounding parse_rounding(const std::string& text) {
  if (text == "AS") return Rounding::kAS;
  if (text == "BM") return Rounding::kBM;
  if (text == "LST" || text == "LST-match") return Rounding::kLstMatch;
  throw std::invalid_argument("unknown rounding '" + text + "'");
}

std::vector<std::size_t> fractional_jobs(const Assignment& x) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::none_of(x[j].begin(), x[j].end(), [](const Rational& v) { return v == Rational(1); })) {
      out.push_back(j);
    }
  }
  return out;
}

Schedule round_vertex(const SchedulingInstance& inst, const Assignment& x, Rounding mode,
                      const Rational& T) {
  const std::size_t n = inst.n(), m = inst.m();
  Schedule out;
  out.assignment.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      if (x[j][i] == Rational(1)) out.assignment[j] = i;
    }
  }
  const std::vector<std::size_t> frac = fractional_jobs(x);
  switch (mode) {
    case Rounding::kAS:
      for (std::size_t j : frac) {
        const auto& row = inst.processing[j];
        out.assignment[j] = static_cast<std::size_t>(std::min_element(row.begin(), row.end()) - row.begin());
      }
      break;
    case Rounding::kLstMatch: {
      const auto matching = fractional_matching(fractional_graph(x, m));
      if (!matching) throw std::logic_error("round_vertex: no injection of fractional jobs");
      for (const auto& [j, i] : *matching) out.assignment[j] = i;
      break;
    }
    case Rounding::kBM: {
      // Odometer over m^|frac| placements; the first strict improvement wins.
      std::vector<std::size_t> digits(frac.size(), 0);
      std::optional<Rational> best;
      std::vector<std::size_t> best_assignment = out.assignment;
      while (true) {
        for (std::size_t k = 0; k < frac.size(); ++k) out.assignment[frac[k]] = digits[k];
        const Rational value = makespan_of(inst, out.assignment);
        if (!best || value < *best) {
          best = value;
          best_assignment = out.assignment;
        }
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == m) digits[k++] = 0;
        if (k == digits.size()) break;
      }
      out.assignment = std::move(best_assignment);
      break;
    }
  }
  out.makespan = makespan_of(inst, out.assignment);
  if (mode == Rounding::kLstMatch && out.makespan > T * Rational(2)) {
    throw std::logic_error("round_vertex: matched makespan " + out.makespan.str() +
                           " exceeds 2T = " + (T * Rational(2)).str());
  }
  return out;
}

std::optional<std::size_t> mmp_pivot(const SchedulingInstance& inst, const Assignment& x) {
  std::optional<std::size_t> pivot;
  Rational best;
  for (std::size_t j : fractional_jobs(x)) {
    const auto& row = inst.processing[j];
    const Rational shortest = *std::min_element(row.begin(), row.end());
    if (!pivot || shortest > best) {
      pivot = j;
      best = shortest;
    }
  }
  return pivot;
}

SchedulingInstance residual_instance(const SchedulingInstance& inst,
                                     const std::vector<std::size_t>& jobs,
                                     std::vector<Rational> overheads) {
  SchedulingInstance out;
  out.kind = inst.kind;
  out.speeds = inst.speeds;
  out.search_step = inst.search_step;
  out.overheads = std::move(overheads);
  for (std::size_t j : jobs) {
    out.processing.push_back(inst.processing[j]);
    if (!inst.base.empty()) out.base.push_back(inst.base[j]);
  }
  return out;
}

std::string to_string(BoundMode mode) { return mode == BoundMode::kBS ? "BS" : "LR"; }

BoundMode parse_bound_mode(const std::string& text) {
  if (text == "BS") return BoundMode::kBS;
  if (text == "LR") return BoundMode::kLR;
  throw std::invalid_argument("unknown bounding '" + text + "'");
}

UnrelatedAdapter::UnrelatedAdapter(SchedulingInstance inst, BoundMode bound, Rounding rounding)
    : inst_(std::move(inst)), bound_(bound), rounding_(rounding) {
  inst_.validate();
  if (inst_.m() == 0) throw std::invalid_argument("scheduling: no machines");
  // One grid for the whole tree.
  inst_.search_step = search_step(inst_);
}

Child<SchedulingNode, Schedule> UnrelatedAdapter::make_node(
    std::vector<std::size_t> jobs, std::vector<Rational> overheads,
    std::vector<std::optional<std::size_t>> fixed) {
  const SchedulingInstance residual = residual_instance(inst_, jobs, overheads);
  TSearchResult bs = min_feasible_T(residual);
  Schedule rounded = round_vertex(residual, bs.x, rounding_, bs.t_min);

  Child<SchedulingNode, Schedule> child;
  child.lb = bound_ == BoundMode::kBS ? bs.t_min : lr_bound(residual);
  child.ub = rounded.makespan;
  child.terminal = jobs.empty() || fractional_jobs(bs.x).empty();
  Schedule solution;
  solution.assignment.assign(inst_.n(), 0);
  for (std::size_t j = 0; j < inst_.n(); ++j) {
    if (fixed[j]) solution.assignment[j] = *fixed[j];
  }
  for (std::size_t r = 0; r < jobs.size(); ++r) solution.assignment[jobs[r]] = rounded.assignment[r];
  solution.makespan = rounded.makespan;
  child.solution_value = rounded.makespan;
  child.solution = std::move(solution);

  SchedulingNode& node = child.payload;
  node.jobs = std::move(jobs);
  node.overheads = std::move(overheads);
  node.fixed = std::move(fixed);
  node.x = std::move(bs.x);
  node.t_min = bs.t_min;
  return child;
}

Child<SchedulingNode, Schedule> UnrelatedAdapter::root() {
  std::vector<std::size_t> jobs(inst_.n());
  for (std::size_t j = 0; j < jobs.size(); ++j) jobs[j] = j;
  return make_node(std::move(jobs), inst_.overheads,
                   std::vector<std::optional<std::size_t>>(inst_.n()));
}

Expansion<SchedulingNode, Schedule> UnrelatedAdapter::branch(const SchedulingNode& node,
                                                              const NodeInfo& info) {
  const SchedulingInstance residual = residual_instance(inst_, node.jobs, node.overheads);
  const auto local = mmp_pivot(residual, node.x);
  if (!local) throw std::logic_error("branch: node has no fractional job");
  const std::size_t job = node.jobs[*local];
  if (on_branch) {
    const auto& row = inst_.processing[job];
    on_branch(BranchReport{info.depth, job, info.lb, info.ub,
                           *std::min_element(row.begin(), row.end()),
                           fractional_jobs(node.x).size()});
  }
  std::vector<std::size_t> rest;
  for (std::size_t j : node.jobs) {
    if (j != job) rest.push_back(j);
  }
  Expansion<SchedulingNode, Schedule> out;
  for (std::size_t i = 0; i < inst_.m(); ++i) {
    auto overheads = node.overheads;
    overheads[i] += inst_.processing[job][i];
    auto fixed = node.fixed;
    fixed[job] = i;
    auto child = make_node(rest, std::move(overheads), std::move(fixed));
    child.decision = Decision{job, i};
    out.children.push_back(std::move(child));
  }
  return out;
}

std::size_t depth_allowance(std::size_t m, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("depth_allowance: eps must be positive");
  const Rational k = (Rational(static_cast<std::int64_t>(m * m)) / eps).floor();
  return static_cast<std::size_t>(std::stoull(k.numerator_str()));
}

RunResult<Schedule> solve_unrelated(const SchedulingInstance& inst,
                                    const UnrelatedRunConfig& config,
                                    std::function<void(const BranchReport&)> on_branch) {
  if (config.epsilon.sign() <= 0) throw std::invalid_argument("scheduling: eps must be positive");
  UnrelatedAdapter adapter(inst, config.bound, config.rounding);
  adapter.on_branch = std::move(on_branch);
  RunOptions options;
  options.selection = config.selection;
  options.target = Rational(1) + config.epsilon;
  options.node_limit = config.node_limit;
  if (config.cap_depth) options.depth_cap = depth_allowance(inst.m(), config.epsilon);
  return run(adapter, options);
}

}  // namespace bnbptas
