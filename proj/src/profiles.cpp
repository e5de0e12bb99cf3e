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

#include "bnbptas/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bnbptas/lp.hpp"

namespace bnbptas {

namespace {

void require_uniform(const SchedulingInstance& inst, const char* who) {
  if (inst.kind == MachineKind::kUnrelated) {
    throw std::invalid_argument(std::string(who) + ": needs uniform or identical machines");
  }
}

std::vector<Rational> completions(const SchedulingInstance& inst, const Assignment& x) {
  std::vector<Rational> out = inst.overheads;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t i = 0; i < inst.m(); ++i) {
      if (!x[j][i].is_zero()) out[i] += inst.processing[j][i] * x[j][i];
    }
  }
  return out;
}

bool is_fractional(const std::vector<Rational>& row) {
  return std::none_of(row.begin(), row.end(), [](const Rational& v) { return v == Rational(1); });
}

}  // namespace

Normalized normalize(const SchedulingInstance& inst) {
  require_uniform(inst, "normalize");
  inst.validate();
  if (inst.n() == 0) throw std::invalid_argument("normalize: instance has no jobs");
  const Rational scale = min_feasible_T(inst).t_min;
  if (scale.sign() <= 0) throw std::invalid_argument("normalize: root bound is zero");
  Normalized out{inst, scale};
  SchedulingInstance& scaled = out.instance;
  for (auto& row : scaled.processing) {
    for (auto& p : row) p /= scale;
  }
  for (auto& p : scaled.base) p /= scale;
  for (auto& t : scaled.overheads) t /= scale;
  scaled.search_step = search_step(inst) / scale;
  scaled.meta["normalization_scale"] = scale.str();
  return out;
}

Rational profile_cap(const Rational& eps) {
  const Rational grow = Rational(1) + eps;
  return Rational(2) * grow * grow;
}

std::optional<std::vector<std::int64_t>> similarity_cell(const std::vector<Rational>& profile,
                                                         const Rational& eps, std::size_t n) {
  if (eps.sign() <= 0) throw std::invalid_argument("similarity_cell: eps must be positive");
  const Rational cap = profile_cap(eps);
  const Rational per = Rational(static_cast<std::int64_t>(n)) / eps;
  std::vector<std::int64_t> cell;
  for (const auto& c : profile) {
    if (c > cap) return std::nullopt;
    cell.push_back(std::stoll((c * per).floor().numerator_str()));
  }
  return cell;
}

LongestFractional make_longest_fractional(const SchedulingInstance& inst, const Assignment& x,
                                          const Rational& T) {
  require_uniform(inst, "make_longest_fractional");
  const std::size_t n = inst.n(), m = inst.m();
  LongestFractional out{x, true};
  if (n == 0) return out;
  const auto longest = static_cast<std::size_t>(
      std::max_element(inst.base.begin(), inst.base.end()) - inst.base.begin());
  for (std::size_t j = 0; j < n; ++j) {
    if (inst.base[j] == inst.base[longest] && is_fractional(x[j])) return out;
  }
  const std::vector<std::size_t> frac = fractional_jobs(x);
  if (frac.empty()) throw std::invalid_argument("make_longest_fractional: x is integral");
  std::size_t home = m;
  for (std::size_t i = 0; i < m; ++i) {
    if (x[longest][i] == Rational(1)) home = i;
  }

  // Case one: a job with a fractional share on the longest job's machine;
  // case two: any fractional job. The partner machine must admit the
  // longest job under T.
  std::vector<std::size_t> candidates;
  for (std::size_t j : frac) {
    if (x[j][home].sign() > 0) candidates.push_back(j);
  }
  if (candidates.empty()) candidates = frac;
  for (std::size_t j : candidates) {
    for (std::size_t b = 0; b < m; ++b) {
      if (b == home || x[j][b].is_zero()) continue;
      if (inst.processing[longest][b] > T) continue;
      const Rational eps2 = x[j][b];
      const Rational eps1 = eps2 * inst.base[j] / inst.base[longest];
      out.x[longest][home] -= eps1;
      out.x[longest][b] += eps1;
      out.x[j][home] += eps2;
      out.x[j][b] = Rational();
      if (completions(inst, out.x) != completions(inst, x)) {
        throw std::logic_error("make_longest_fractional: completion times moved");
      }
      return out;
    }
  }
  out.applied = false;
  return out;
}

bool uniform_vertex_check(const SchedulingInstance& inst, const Assignment& x, const Rational& T) {
  const FractionalGraph graph = fractional_graph(x, inst.m(), false);
  if (!graph.is_forest()) return false;
  const std::vector<Rational> finish = completions(inst, x);
  for (const auto& component : graph.machine_components()) {
    const auto slack = std::count_if(component.begin(), component.end(),
                                     [&](std::size_t i) { return finish[i] < T; });
    if (slack > 1) return false;
  }
  return true;
}

Rational round_geometric(const Rational& x, const Rational& eps) {
  if (eps.sign() <= 0 || x < eps) {
    throw std::invalid_argument("round_geometric: needs x >= eps > 0");
  }
  const Rational grow = Rational(1) + eps;
  Rational value = eps;
  while (value * grow <= x) value *= grow;
  return value;
}

long double reduced_form_bound(const Rational& eps) {
  const long double e = static_cast<long double>(eps.to_double());
  const long double exponent = std::log(2.0L * (1 + e) * (1 + e) / e) / std::log1p(e);
  return 8.0L * std::pow(1.0L / e, exponent);
}

EquivalenceKey equivalence_key(const std::vector<Rational>& rounded_completions) {
  std::vector<Rational> sorted = rounded_completions;
  std::sort(sorted.begin(), sorted.end());
  EquivalenceKey key;
  for (const auto& v : sorted) {
    if (!key.counts.empty() && key.counts.back().first == v) {
      ++key.counts.back().second;
    } else {
      key.counts.emplace_back(v, 1);
    }
  }
  return key;
}

std::optional<EquivalenceKey> equivalence_key(const SchedulingInstance& inst,
                                              const std::vector<std::optional<std::size_t>>& fixed,
                                              const Rational& eps) {
  std::vector<Rational> rounded = inst.overheads;
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    if (!fixed[j]) continue;
    if (inst.processing[j][*fixed[j]] < eps) return std::nullopt;
    rounded[*fixed[j]] += round_geometric(inst.processing[j][*fixed[j]], eps);
  }
  return equivalence_key(rounded);
}

ProfileAdapter::ProfileAdapter(SchedulingInstance normalized, Rational eps, ProfileRule rule,
                               bool root_only)
    : inst_(std::move(normalized)), eps_(std::move(eps)), rule_(rule), root_only_(root_only) {
  require_uniform(inst_, "profile scheme");
  inst_.validate();
  if (eps_.sign() <= 0) throw std::invalid_argument("profile scheme: eps must be positive");
  if (!inst_.search_step) inst_.search_step = search_step(inst_);
  order_.resize(inst_.n());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(),
                   [&](std::size_t a, std::size_t b) { return inst_.base[a] > inst_.base[b]; });
}

std::size_t ProfileAdapter::big_jobs() const {
  return static_cast<std::size_t>(std::count_if(inst_.base.begin(), inst_.base.end(),
                                                [&](const Rational& p) { return p >= eps_; }));
}

Child<ProfileNode, Schedule> ProfileAdapter::make_node(
    std::size_t level, std::vector<Rational> overheads, std::vector<Rational> rounded,
    std::vector<std::optional<std::size_t>> fixed) {
  const std::vector<std::size_t> jobs(order_.begin() + static_cast<std::ptrdiff_t>(level),
                                      order_.end());
  const SchedulingInstance residual = residual_instance(inst_, jobs, overheads);
  TSearchResult bs = min_feasible_T(residual);
  Assignment x = std::move(bs.x);
  const bool integral = fractional_jobs(x).empty();
  if (!integral) {
    LongestFractional moved = make_longest_fractional(residual, x, bs.t_min);
    if (!moved.applied) ++transforms_blocked_;
    x = std::move(moved.x);
  }
  const Schedule rounded_schedule = round_vertex(residual, x, Rounding::kLstMatch, bs.t_min);

  Child<ProfileNode, Schedule> child;
  child.lb = bs.t_min;
  child.ub = rounded_schedule.makespan;
  child.terminal = integral || (root_only_ && level == 0);
  Schedule solution;
  solution.assignment.assign(inst_.n(), 0);
  for (std::size_t j = 0; j < inst_.n(); ++j) {
    if (fixed[j]) solution.assignment[j] = *fixed[j];
  }
  for (std::size_t r = 0; r < jobs.size(); ++r) {
    solution.assignment[jobs[r]] = rounded_schedule.assignment[r];
  }
  solution.makespan = rounded_schedule.makespan;
  child.solution_value = solution.makespan;
  child.solution = std::move(solution);

  ProfileNode& node = child.payload;
  node.level = level;
  node.overheads = std::move(overheads);
  node.rounded = std::move(rounded);
  node.fixed = std::move(fixed);
  node.x = std::move(x);
  node.t_min = bs.t_min;
  return child;
}

Child<ProfileNode, Schedule> ProfileAdapter::root() {
  return make_node(0, inst_.overheads, inst_.overheads,
                   std::vector<std::optional<std::size_t>>(inst_.n()));
}

Expansion<ProfileNode, Schedule> ProfileAdapter::branch(const ProfileNode& node,
                                                        const NodeInfo&) {
  Expansion<ProfileNode, Schedule> out;
  if (node.level >= order_.size()) return out;
  const std::size_t job = order_[node.level];
  // A small pivot means every remaining job is small: the node's rounding
  // is already within eps of its bound.
  if (rule_ == ProfileRule::kEquivalent && inst_.base[job] < eps_) {
    out.halt = true;
    return out;
  }
  for (std::size_t i = 0; i < inst_.m(); ++i) {
    auto overheads = node.overheads;
    overheads[i] += inst_.processing[job][i];
    auto rounded = node.rounded;
    if (rule_ == ProfileRule::kEquivalent) rounded[i] += round_geometric(inst_.processing[job][i], eps_);
    auto fixed = node.fixed;
    fixed[job] = i;
    auto child = make_node(node.level + 1, std::move(overheads), std::move(rounded), std::move(fixed));
    child.decision = Decision{job, i};
    out.children.push_back(std::move(child));
  }
  return out;
}

bool ProfileAdapter::admit(const Child<ProfileNode, Schedule>& child, std::size_t depth,
                           std::size_t) {
  const auto& profile = child.payload.overheads;
  const Rational cap = profile_cap(eps_);
  if (std::any_of(profile.begin(), profile.end(), [&](const Rational& c) { return c > cap; })) {
    ++cube_rejections_;
    return false;
  }
  bool fresh = false;
  if (rule_ == ProfileRule::kSimilar) {
    auto cell = similarity_cell(profile, eps_, inst_.n());
    fresh = cells_.emplace(depth, std::move(*cell)).second;
  } else {
    EquivalenceKey key = equivalence_key(child.payload.rounded);
    for (const auto& [value, count] : key.counts) rounded_values_.insert(value);
    fresh = keys_.emplace(depth, std::move(key.counts)).second;
  }
  if (!fresh) ++profile_merges_;
  return fresh;
}

namespace {

ProfileRunResult solve_profiles(const SchedulingInstance& inst, const ProfileRunConfig& config,
                                ProfileRule rule, bool root_only) {
  if (config.epsilon.sign() <= 0) throw std::invalid_argument("profile scheme: eps must be positive");
  Normalized normalized = normalize(inst);
  ProfileAdapter adapter(normalized.instance, config.epsilon, rule, root_only);
  RunOptions options;
  options.selection = config.selection;
  options.target = Rational(1) + config.epsilon;
  options.node_limit = config.node_limit;
  ProfileRunResult out;
  out.run = run(adapter, options);
  out.scale = normalized.scale;
  out.big_jobs = adapter.big_jobs();
  out.distinct_rounded_values = adapter.distinct_rounded_values();
  out.transforms_blocked = adapter.transforms_blocked();
  out.run.best_value *= out.scale;
  out.run.global_bound *= out.scale;
  if (out.run.best_solution) {
    out.run.best_solution->makespan = makespan_of(inst, out.run.best_solution->assignment);
    if (out.run.best_solution->makespan != out.run.best_value) {
      throw std::logic_error("profile scheme: de-normalized makespan mismatch");
    }
  }
  return out;
}

}  // namespace

ProfileRunResult solve_sim_prof(const SchedulingInstance& inst, const ProfileRunConfig& config) {
  return solve_profiles(inst, config, ProfileRule::kSimilar, config.epsilon >= Rational(1));
}

ProfileRunResult solve_eq_prof(const SchedulingInstance& inst, const ProfileRunConfig& config) {
  if (inst.kind != MachineKind::kIdentical) {
    throw std::invalid_argument("equivalent-profile scheme: needs identical machines");
  }
  return solve_profiles(inst, config, ProfileRule::kEquivalent, config.epsilon > Rational(1));
}

}  // namespace bnbptas
