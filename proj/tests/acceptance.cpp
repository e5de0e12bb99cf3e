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

// Acceptance run: one PASS/FAIL line per criterion. All comparisons are
// exact rationals. The exit status is non-zero only for a failure that is
// not listed in kKnownFailures; known failures still print FAIL.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bnbptas/experiment.hpp"
#include "bnbptas/knapsack.hpp"
#include "bnbptas/oracle.hpp"
#include "bnbptas/profiles.hpp"
#include "bnbptas/scheduling.hpp"
#include "support/oracles.hpp"

namespace bnbptas {
namespace {

// Criteria whose claim does not hold for this implementation's reading of
// the model; see the README. They print FAIL but do not fail the process.
const std::set<int> kKnownFailures = {13};

Rational R(std::int64_t v) { return Rational(v); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::size_t checks = 0;

  // Records a check; the first failure message is kept.
  void expect(bool ok, const std::function<std::string()>& why) {
    ++checks;
    if (ok || !pass) {
      if (!ok) pass = false;
      return;
    }
    pass = false;
    detail = why();
  }
};

std::string describe(const std::vector<Rational>& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + v[k].str();
  return out + ")";
}

// ---------------------------------------------------------------------------
// 1, 2, 4: knapsack guarantee, left turns, per-node rounding inequalities.

struct KnapsackOutcomes {
  Outcome guarantee, turns, rounding;
  std::size_t ratio_met = 0;
};

KnapsackOutcomes knapsack_criteria() {
  KnapsackOutcomes out;
  const Rational alphas[] = {Rational(4, 5), Rational(9, 10), Rational(97, 100)};
  const Selection selections[] = {Selection::kBestFirst, Selection::kDfs, Selection::kBfs};
  const BranchRule rules[] = {BranchRule::kCE, BranchRule::kPPW, BranchRule::kK};
  std::size_t solved_nodes = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const std::size_t n = 3 + k % 10, m = 2 + (k / 10) % 2;
    const std::uint64_t seed = 1000 + k;
    const auto inst = generate_knapsack(n, m, seed);
    const Rational opt = exact_knapsack(inst).optimum;
    const Rational alpha = alphas[k % 3];
    KnapsackRunConfig config{alpha, selections[(k / 3) % 3], rules[(k / 9) % 3]};
    const auto tag = [&] {
      return "seed " + std::to_string(seed) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
             " alpha=" + alpha.str();
    };
    const auto run = solve_knapsack(inst, config, [&](const KnapsackInstance& sub, const DantzigResult& r) {
      ++solved_nodes;
      const Rational& z = r.frac.sub_value;
      const Rational x1 = r.rounded.value;
      const auto mm = static_cast<std::int64_t>(sub.m());
      out.rounding.expect(x1 * R(mm + 1) >= z, [&] {
        return tag() + ": value(x')=" + x1.str() + " < sub/(m+1) with sub=" + z.str();
      });
      if (z.sign() > 0 && r.frac.j_star) {
        const Rational lhs = sub.profits[*r.frac.j_star] / z;
        const Rational rhs = min(Rational(1, mm + 1), (R(1) - x1 / z) / R(mm));
        out.rounding.expect(lhs >= rhs, [&] {
          return tag() + ": p_j*/sub=" + lhs.str() + " below " + rhs.str();
        });
      }
    });
    if (run.termination == Termination::kRatioMet) {
      ++out.ratio_met;
      out.guarantee.expect(run.best_value >= alpha * opt, [&] {
        return tag() + ": profit " + run.best_value.str() + " < alpha*OPT, OPT=" + opt.str();
      });
    }
    out.turns.expect(run.left_turn_max && R(static_cast<std::int64_t>(*run.left_turn_max)) <=
                                              left_turn_bound(alpha, m),
                     [&] { return tag() + ": left turns exceed " + left_turn_bound(alpha, m).str(); });
  }
  if (out.guarantee.pass) {
    out.guarantee.detail = std::to_string(out.ratio_met) + " ratio-met runs of 200 within alpha*OPT";
  }
  if (out.turns.pass) out.turns.detail = "200 runs within 1 + max{m a/(1-a)^2, (m+1)/(1-a)}";
  if (out.rounding.pass) {
    out.rounding.detail = std::to_string(solved_nodes) + " solved nodes satisfy both inequalities";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 3: Dantzig value is the LP optimum.

Outcome dantzig_criterion() {
  Outcome out;
  std::size_t enumerated = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 8, m = 1 + (k / 8) % 3;
    const auto inst = generate_knapsack(n, m, 3000 + k);
    const auto r = dantzig_solve(inst);
    const Rational z = r.frac.sub_value;
    const auto tag = [&] { return "seed " + std::to_string(3000 + k); };
    // Primal: the fractional solution is feasible with value z.
    Rational value;
    std::vector<Rational> load(m);
    bool feasible = true;
    for (std::size_t j = 0; j < n; ++j) {
      Rational share;
      for (std::size_t i = 0; i < m; ++i) {
        const Rational& x = r.frac.x[j][i];
        feasible = feasible && x.sign() >= 0;
        share += x;
        load[i] += inst.weights[j] * x;
        value += inst.profits[j] * x;
      }
      feasible = feasible && share <= R(1);
    }
    for (std::size_t i = 0; i < m; ++i) feasible = feasible && load[i] <= inst.capacities[i];
    out.expect(feasible && value == z, [&] { return tag() + ": x* infeasible or value mismatch"; });
    // Dual: a feasible dual solution with the same objective.
    const Rational dual = testing::knapsack_dual_bound(inst);
    out.expect(dual == z, [&] { return tag() + ": sub " + z.str() + " vs LP " + dual.str(); });
    // Exhaustive vertex enumeration where the column count allows it.
    if (n * m + n + m <= 16) {
      ++enumerated;
      const Rational lp = testing::knapsack_lp_by_vertices(inst);
      out.expect(lp == z, [&] { return tag() + ": sub " + z.str() + " vs vertices " + lp.str(); });
    }
  }
  if (out.pass) {
    out.detail = "100 instances equal the LP optimum (primal/dual certificate; " +
                 std::to_string(enumerated) + " also by full vertex enumeration)";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 5, 6, 8: unrelated machines.

struct UnrelatedOutcomes {
  Outcome llb, bfs_cap, lst;
};

void check_lst(Outcome& out, const SchedulingInstance& inst, const Assignment& x, const Rational& T,
               const std::string& where) {
  try {
    const auto s = round_vertex(inst, x, Rounding::kLstMatch, T);
    out.expect(s.makespan <= R(2) * T && makespan_of(inst, s.assignment) == s.makespan, [&] {
      return where + ": LST makespan " + s.makespan.str() + " > 2*" + T.str();
    });
  } catch (const std::logic_error& e) {
    out.expect(false, [&] { return where + ": " + e.what(); });
  }
}

UnrelatedOutcomes unrelated_criteria() {
  UnrelatedOutcomes out;
  const Rational epsilons[] = {R(1), Rational(1, 2), Rational(1, 10)};
  std::size_t m2_eps1_max_nodes = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 9, m = 2 + (k / 9) % 2;
    const std::uint64_t seed = 5000 + k;
    const auto inst = generate_scheduling(MachineKind::kUnrelated, n, m, seed);
    const Rational opt = exact_scheduling(inst).optimum;
    for (const Rational& eps : epsilons) {
      for (bool capped : {false, true}) {
        Outcome& o = capped ? out.bfs_cap : out.llb;
        UnrelatedRunConfig config;
        config.epsilon = eps;
        config.selection = capped ? Selection::kBfs : Selection::kBestFirst;
        config.cap_depth = capped;
        config.rounding = static_cast<Rounding>(k % 3);
        const auto tag = [&] { return "seed " + std::to_string(seed) + " eps=" + eps.str(); };
        const auto run = solve_unrelated(inst, config);
        o.expect(static_cast<bool>(run.best_solution), [&] { return tag() + ": no schedule"; });
        if (!run.best_solution) continue;
        o.expect(makespan_of(inst, run.best_solution->assignment) == run.best_value,
                 [&] { return tag() + ": reported makespan is not the schedule's"; });
        o.expect(run.best_value <= (R(1) + eps) * opt, [&] {
          return tag() + ": makespan " + run.best_value.str() + " > (1+eps)*" + opt.str();
        });
        o.expect(run.max_depth <= depth_allowance(m, eps), [&] {
          return tag() + ": depth " + std::to_string(run.max_depth) + " > allowance";
        });
        if (m == 2 && eps == R(1)) {
          if (!capped) m2_eps1_max_nodes = std::max(m2_eps1_max_nodes, run.nodes_explored);
          o.expect(run.nodes_explored <= 16, [&] {
            return tag() + ": " + std::to_string(run.nodes_explored) + " nodes for m=2, eps=1";
          });
        }
        // LST at every node of an LST run: round_vertex enforces <= 2T and
        // throws otherwise, so a completed run is itself the check.
        if (config.rounding == Rounding::kLstMatch) ++out.lst.checks;
      }
    }
    const auto root = min_feasible_T(inst);
    check_lst(out.lst, inst, root.x, root.t_min, "seed " + std::to_string(seed));
  }
  // Uniform vertices too.
  for (std::size_t k = 0; k < 100; ++k) {
    const auto inst = generate_scheduling(MachineKind::kUniform, 2 + k % 9, 2 + k % 3, 6000 + k);
    const auto root = min_feasible_T(inst);
    check_lst(out.lst, inst, root.x, root.t_min, "uniform seed " + std::to_string(6000 + k));
  }
  if (out.llb.pass) {
    out.llb.detail = "300 LLB runs within (1+eps)*OPT and the depth allowance; max nodes at m=2, eps=1: " +
                     std::to_string(m2_eps1_max_nodes);
  }
  if (out.bfs_cap.pass) out.bfs_cap.detail = "300 capped BFS runs within (1+eps)*OPT";
  if (out.lst.pass) {
    out.lst.detail = "LST-match within 2*t_min on 200 root vertices and every node of 100 LST runs";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7: vertex structure.

// Kuhn's augmenting paths: can every fractional job get its own machine
// among those with a positive share?
bool has_injection(const Assignment& x, const std::vector<std::size_t>& frac, std::size_t m) {
  std::vector<std::optional<std::size_t>> owner(m);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t f,
                                                                     std::vector<bool>& seen) {
    for (std::size_t i = 0; i < m; ++i) {
      if (x[frac[f]][i].sign() <= 0 || seen[i]) continue;
      seen[i] = true;
      if (!owner[i] || augment(*owner[i], seen)) {
        owner[i] = f;
        return true;
      }
    }
    return false;
  };
  for (std::size_t f = 0; f < frac.size(); ++f) {
    std::vector<bool> seen(m, false);
    if (!augment(f, seen)) return false;
  }
  return true;
}

Outcome vertex_criterion() {
  Outcome out;
  std::size_t enumerated = 0;
  auto check = [&](const SchedulingInstance& inst, const Assignment& x, const std::string& where) {
    const auto frac = fractional_jobs(x);
    out.expect(frac.size() <= inst.m(), [&] {
      return where + ": " + std::to_string(frac.size()) + " fractional jobs on " + std::to_string(inst.m()) +
             " machines";
    });
    out.expect(has_injection(x, frac, inst.m()), [&] { return where + ": no job->machine injection"; });
  };
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 9, m = 2 + (k / 9) % 3;
    const auto inst = generate_scheduling(MachineKind::kUnrelated, n, m, 7000 + k);
    const auto root = min_feasible_T(inst);
    check(inst, root.x, "unrelated seed " + std::to_string(7000 + k));
    // Every vertex, not just the solver's, on the small systems.
    if (n <= 3 && m == 2) {
      const auto system = partial_lp(inst, root.t_min + R(static_cast<std::int64_t>(k % 4)));
      for (const auto& v : testing::enumerate_vertices(system.lp)) {
        Assignment x(n, std::vector<Rational>(m));
        for (std::size_t c = 0; c < v.size(); ++c) x[system.columns[c].first][system.columns[c].second] = v[c];
        check(inst, x, "enumerated vertex, seed " + std::to_string(7000 + k));
        ++enumerated;
      }
    }
  }
  for (std::size_t k = 0; k < 100; ++k) {
    const auto inst = generate_scheduling(MachineKind::kUniform, 2 + k % 9, 2 + (k / 9) % 3, 8000 + k);
    const auto root = min_feasible_T(inst);
    check(inst, root.x, "uniform seed " + std::to_string(8000 + k));
    out.expect(uniform_vertex_check(inst, root.x, root.t_min),
               [&] { return "uniform seed " + std::to_string(8000 + k) + ": vertex check failed"; });
  }
  if (out.pass) {
    out.detail = "<= m fractional jobs with an injection on 200 solver vertices and " + std::to_string(enumerated) +
                 " enumerated ones; 100 uniform vertices pass the forest check";
  }
  return out;
}

// ---------------------------------------------------------------------------
// 9, 10: profile schemes.

Outcome sim_prof_criterion() {
  Outcome out;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 7;
    const auto inst = generate_scheduling(MachineKind::kUniform, n, 2, 9000 + k);
    const Rational opt = exact_scheduling(inst).optimum;
    for (const Rational& eps : {Rational(1, 2), Rational(1, 4)}) {
      const auto tag = [&] { return "seed " + std::to_string(9000 + k) + " eps=" + eps.str(); };
      const auto r = solve_sim_prof(inst, ProfileRunConfig{eps});
      const Rational factor = (R(1) + eps) * (R(1) + eps);
      out.expect(r.run.best_solution && r.run.best_value <= factor * opt, [&] {
        return tag() + ": makespan " + r.run.best_value.str() + " > (1+eps)^2*" + opt.str();
      });
      const Rational width = (R(3 * static_cast<std::int64_t>(n)) * factor / eps).pow(2);
      for (std::size_t d = 0; d < r.run.level_counts.size(); ++d) {
        out.expect(R(static_cast<std::int64_t>(r.run.level_counts[d])) <= width, [&] {
          return tag() + ": level " + std::to_string(d) + " holds " + std::to_string(r.run.level_counts[d]) +
                 " nodes";
        });
      }
    }
  }
  if (out.pass) out.detail = "100 runs within (1+eps)^2*OPT and the per-level width";
  return out;
}

Outcome eq_prof_criterion() {
  Outcome out;
  const std::size_t machines[] = {2, 3, 5};
  for (std::size_t k = 0; k < 50; ++k) {
    const std::size_t n = 2 + k % 7, m = machines[k % 3];
    const auto inst = generate_scheduling(MachineKind::kIdentical, n, m, 10000 + k);
    const Rational opt = exact_scheduling(inst).optimum;
    for (const Rational& eps : {Rational(1, 2), R(1)}) {
      const auto tag = [&] { return "seed " + std::to_string(10000 + k) + " eps=" + eps.str(); };
      const auto r = solve_eq_prof(inst, ProfileRunConfig{eps});
      const Rational factor = (R(1) + eps) * (R(1) + eps);
      out.expect(r.run.best_solution && r.run.best_value <= factor * opt, [&] {
        return tag() + ": makespan " + r.run.best_value.str() + " > (1+eps)^2*" + opt.str();
      });
      out.expect(r.run.max_depth <= r.big_jobs, [&] {
        return tag() + ": depth " + std::to_string(r.run.max_depth) + " > big jobs " + std::to_string(r.big_jobs);
      });
      out.expect(R(static_cast<std::int64_t>(r.big_jobs)) <= R(2 * static_cast<std::int64_t>(m)) / eps,
                 [&] { return tag() + ": " + std::to_string(r.big_jobs) + " big jobs > 2m/eps"; });
      out.expect(static_cast<long double>(r.distinct_rounded_values) <= reduced_form_bound(eps), [&] {
        return tag() + ": " + std::to_string(r.distinct_rounded_values) + " rounded values > f(eps)";
      });
    }
  }
  if (out.pass) out.detail = "100 runs within (1+eps)^2*OPT; depth <= big jobs <= 2m/eps; values <= f(eps)";
  return out;
}

// ---------------------------------------------------------------------------
// 11: BS dominates LR on tree nodes (random partial assignments).

Outcome dominance_criterion() {
  Outcome out;
  std::mt19937_64 rng(11);
  for (std::size_t k = 0; k < 100; ++k) {
    const std::size_t n = 3 + k % 8, m = 2 + k % 3;
    const auto inst = generate_scheduling(MachineKind::kUnrelated, n, m, 11000 + k);
    std::vector<Rational> overheads(m);
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < n; ++j) {
      if (j + 1 < n && rng() % 3 == 0) {
        overheads[rng() % m] += inst.processing[j][rng() % m];
      } else {
        open.push_back(j);
      }
    }
    const auto node = residual_instance(inst, open, overheads);
    const Rational bs = min_feasible_T(node).t_min;
    const Rational lr = lr_bound(node);
    out.expect(bs >= lr, [&] {
      return "seed " + std::to_string(11000 + k) + ": BS " + bs.str() + " < LR " + lr.str();
    });
  }
  if (out.pass) out.detail = "BS >= LR on 100 nodes";
  return out;
}

// ---------------------------------------------------------------------------
// 12: the scaled protocol.

Outcome protocol_criterion() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bnbptas_acceptance";
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();
  std::map<std::string, std::vector<double>> knapsack_nodes;  // selection -> nodes
  std::size_t total_rows = 0;
  for (auto kind : {GenerateKind::kKnapsack, GenerateKind::kSchedulingUnrelated,
                    GenerateKind::kSchedulingUniform, GenerateKind::kSchedulingIdentical}) {
    // Every valid tag combination, wider than the defaults' sweep.
    auto config = ExperimentConfig::defaults(kind);
    if (kind == GenerateKind::kSchedulingUnrelated) {
      config.selections = {"DFS", "BFS", "BFS-CAP", "LLB"};
      config.roundings = {"AS", "BM", "LST"};
    } else if (kind != GenerateKind::kKnapsack) {
      config.selections = {"DFS", "BFS", "LLB"};
    }
    config.sizes = {{5, 2}, {10, 2}, {10, 5}};
    config.instances = 30;
    const auto rows = run_experiment(config);
    const std::size_t expected = 3 * 30 * config.params.size() * config.strategies().size();
    out.expect(rows.size() == expected, [&] {
      return to_string(kind) + ": " + std::to_string(rows.size()) + " rows, expected " + std::to_string(expected);
    });
    const fs::path file = dir / (to_string(kind) + ".csv");
    {
      std::ofstream csv(file);
      write_results_csv(csv, rows);
    }
    std::ifstream csv(file);
    std::string header;
    std::getline(csv, header);
    out.expect(header == std::string("# schema: ") + kResultsSchema,
               [&] { return "unexpected header '" + header + "'"; });
    csv.seekg(0);
    const auto back = read_results_csv(csv);
    out.expect(back.size() == rows.size(), [&] { return to_string(kind) + ": CSV does not read back"; });
    summarize(back);
    total_rows += rows.size();
    if (kind == GenerateKind::kKnapsack) {
      for (const auto& r : rows) knapsack_nodes[r.strategy.selection].push_back(static_cast<double>(r.nodes));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.expect(seconds < 1800, [&] { return "sweep took " + std::to_string(seconds) + " s"; });
  const double hub = geometric_mean(knapsack_nodes["HUB"]);
  const double dfs = geometric_mean(knapsack_nodes["DFS"]);
  const double bfs = geometric_mean(knapsack_nodes["BFS"]);
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, "%zu rows in %.0f s; knapsack node geomeans HUB %.3f, DFS %.3f, BFS %.3f%s",
                total_rows, seconds, hub, dfs, bfs,
                hub <= dfs && hub <= bfs ? "" : " (warning: HUB is not the smallest)");
  if (out.pass) out.detail = buffer;
  return out;
}

// ---------------------------------------------------------------------------
// 13: counterexample regressions.

// Is x a basic solution of the system at T: are the columns in its support,
// slacks of the non-tight machines included, linearly independent?
bool is_vertex(const SchedulingInstance& inst, const Rational& T, const Assignment& x) {
  const auto system = partial_lp(inst, T);
  std::vector<Rational> flat(system.columns.size());
  for (std::size_t c = 0; c < flat.size(); ++c) flat[c] = x[system.columns[c].first][system.columns[c].second];
  if (!system.lp.satisfied_by(flat)) return false;
  const auto sf = testing::standard_form(system.lp);
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < flat.size(); ++c) {
    if (flat[c].sign() > 0) support.push_back(c);
  }
  for (std::size_t k = 0; k < system.lp.inequalities.size(); ++k) {
    Rational lhs;
    for (const auto& t : system.lp.inequalities[k].terms) lhs += t.coef * flat[t.var];
    if (lhs < system.lp.inequalities[k].rhs) support.push_back(sf.num_vars + k);
  }
  testing::Matrix cols(sf.a.size());
  for (std::size_t r = 0; r < sf.a.size(); ++r) {
    for (std::size_t c : support) cols[r].push_back(sf.a[r][c]);
  }
  return testing::row_reduce(cols, support.size()).size() == support.size();
}

Outcome counterexample_criterion() {
  Outcome out;
  // m = 3, k = 3, n = 2k + 2: job 0 takes 3k + 2 everywhere, jobs 1..n-2
  // take 3 on machines 1 and 2, the last job 2; machine 0 times are <= 3k + 1.
  const std::int64_t k = 3, n = 2 * k + 2, p1 = 3 * k + 1;
  std::vector<std::vector<Rational>> p(n);
  p[0] = {R(3 * k + 2), R(3 * k + 2), R(3 * k + 2)};
  for (std::int64_t j = 1; j + 1 < n; ++j) p[j] = {R(p1), R(3), R(3)};
  p[n - 1] = {R(p1), R(2), R(2)};
  const auto inst = SchedulingInstance::unrelated(p);

  UnrelatedAdapter adapter(inst, BoundMode::kBS, Rounding::kAS);
  std::optional<std::size_t> root_pivot;
  adapter.on_branch = [&](const BranchReport& r) { root_pivot = r.pivot; };
  auto root = adapter.root();
  const auto expansion = adapter.branch(root.payload, NodeInfo{0, 0, root.lb, root.ub});
  std::string witness;
  std::size_t second_level = 0;
  for (std::size_t c = 0; c < expansion.children.size() && witness.empty(); ++c) {
    const auto& child = expansion.children[c];
    if (child.terminal) continue;
    ++second_level;
    const auto residual = residual_instance(inst, child.payload.jobs, child.payload.overheads);
    const Rational T = child.lb;
    // Max-min processing time among the open jobs (every tied job).
    Rational best = R(-1);
    for (const auto& row : residual.processing) best = max(best, *std::min_element(row.begin(), row.end()));
    for (std::size_t q = 0; q < residual.n() && witness.empty(); ++q) {
      const auto& row = residual.processing[q];
      if (*std::min_element(row.begin(), row.end()) != best) continue;
      const auto x = testing::vertex_with_fractional_job(residual, T, q);
      if (!x || !is_vertex(residual, T, *x)) continue;
      witness = "job " + std::to_string(child.payload.jobs[q]) + " (min time " + best.str() +
                ") is split " + describe((*x)[q]) + " at a vertex of the system at T=" + T.str() +
                " after job " + std::to_string(root_pivot.value_or(0)) + " -> machine " + std::to_string(c) +
                ", overheads " + describe(child.payload.overheads);
    }
  }
  out.expect(root_pivot.has_value() && second_level > 0,
             [&] { return "the counterexample does not reach a second iteration"; });
  out.expect(witness.empty(), [&] { return "(a) refuted with p_{j,1} = " + std::to_string(p1) + ": " + witness; });

  // (b) single-knapsack pivot ordering.
  std::mt19937_64 rng(13);
  std::size_t nodes = 0;
  for (int round = 0; round < 5000 && nodes < 100; ++round) {
    const auto kn = generate_knapsack(4 + rng() % 9, 1, rng());
    std::set<Rational> ratios;
    for (std::size_t j = 0; j < kn.n(); ++j) ratios.insert(kn.profits[j] / kn.weights[j]);
    if (ratios.size() != kn.n()) continue;  // the ordering assumes strict unit profits
    const auto solved = dantzig_solve(kn);
    if (!solved.frac.j_star) continue;
    const auto kids = branch_children(kn, solved, BranchRule::kCE);
    if (kids.size() != 2) continue;
    const auto& order = solved.frac.order;
    const auto rank = [&](std::size_t item) { return std::find(order.begin(), order.end(), item) - order.begin(); };
    std::vector<std::ptrdiff_t> child_rank;
    for (const auto& kid : kids) {
      KnapsackInstance sub;
      sub.capacities = kid.capacities;
      std::vector<std::size_t> back;
      for (std::size_t j = 0; j < kn.n(); ++j) {
        if (j == kid.pivot) continue;
        sub.weights.push_back(kn.weights[j]);
        sub.profits.push_back(kn.profits[j]);
        back.push_back(j);
      }
      const auto r = dantzig_solve(sub);
      if (!r.frac.j_star) break;
      child_rank.push_back(rank(back[*r.frac.j_star]));
    }
    if (child_rank.size() != 2) continue;  // a child without a critical item is integral
    ++nodes;
    const auto star = rank(*solved.frac.j_star);
    out.expect(child_rank[0] < star && star < child_rank[1],
               [&] { return "(b) pivot ordering violated on round " + std::to_string(round); });
  }
  out.expect(nodes == 100, [&] { return "(b) only " + std::to_string(nodes) + " nodes with two fractional children"; });
  if (out.pass) out.detail = "no fractional max-min vertex; pivot ordering on 100 nodes";
  else if (witness.size() && nodes == 100) out.detail += "; (b) pivot ordering holds on 100 nodes";
  return out;
}

}  // namespace
}  // namespace bnbptas

int main() {
  using namespace bnbptas;
  std::map<int, Outcome> results;
  int next = 1;
  // Prints every finished criterion in order.
  auto flush = [&] {
    for (; results.count(next); ++next) {
      const Outcome& o = results[next];
      std::cout << "criterion " << next << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
    }
  };
  auto guarded = [&](const std::vector<int>& ids, const std::function<std::vector<Outcome>()>& body) {
    try {
      const auto outcomes = body();
      for (std::size_t k = 0; k < ids.size(); ++k) results[ids[k]] = outcomes[k];
    } catch (const std::exception& e) {
      for (int id : ids) results[id] = Outcome{false, std::string("exception: ") + e.what(), 0};
    }
    flush();
  };
  guarded({1, 2, 4}, [] {
    const auto k = knapsack_criteria();
    return std::vector<Outcome>{k.guarantee, k.turns, k.rounding};
  });
  guarded({3}, [] { return std::vector<Outcome>{dantzig_criterion()}; });
  guarded({5, 6, 8}, [] {
    const auto u = unrelated_criteria();
    return std::vector<Outcome>{u.llb, u.bfs_cap, u.lst};
  });
  guarded({7}, [] { return std::vector<Outcome>{vertex_criterion()}; });
  guarded({9}, [] { return std::vector<Outcome>{sim_prof_criterion()}; });
  guarded({10}, [] { return std::vector<Outcome>{eq_prof_criterion()}; });
  guarded({11}, [] { return std::vector<Outcome>{dominance_criterion()}; });
  guarded({12}, [] { return std::vector<Outcome>{protocol_criterion()}; });
  guarded({13}, [] { return std::vector<Outcome>{counterexample_criterion()}; });

  int unexpected = 0;
  for (const auto& [id, o] : results) {
    if (o.pass) continue;
    if (kKnownFailures.count(id)) {
      std::cout << "note: criterion " << id << " is a known failure (see README)" << std::endl;
    } else {
      ++unexpected;
    }
  }
  return unexpected == 0 ? 0 : 1;
}
