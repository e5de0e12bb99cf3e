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

#ifndef BNBPTAS_EXPERIMENT_HPP_
#define BNBPTAS_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnbptas/instances.hpp"
#include "bnbptas/oracle.hpp"
#include "bnbptas/rational.hpp"

namespace bnbptas {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Tags as they appear in result files. Valid combinations per kind:
//   knapsack              DFS|BFS|HUB  x CE|PPW|K x Surrogate x Dantzig
//   scheduling-unrelated  DFS|BFS|BFS-CAP|LLB x MMP x BS|LR x AS|BM|LST
//   scheduling-uniform    DFS|BFS|LLB  x LONGEST x BS x LST  (similar profiles)
//   scheduling-identical  DFS|BFS|LLB  x LONGEST x BS x LST  (equivalent profiles)
struct Strategy {
  std::string selection;
  std::string branching;
  std::string bounding;
  std::string rounding;
};

// Throws ConfigError for a combination the kind does not support.
void validate_strategy(GenerateKind kind, const Strategy& strategy);
// alpha in (0, 1) for knapsack, eps > 0 otherwise.
void validate_param(GenerateKind kind, const Rational& param);

// What `bnbptas solve` runs when no tags are given: HUB/CE/Surrogate/Dantzig
// at alpha = 9/10, LLB/MMP/BS/AS at eps = 1/10, LLB/LONGEST/BS/LST at
// eps = 1/2.
Strategy default_strategy(GenerateKind kind);
Rational default_param(GenerateKind kind);

// One algorithm run, reduced to what the harness and the CLI report.
struct SolveSummary {
  Rational value;
  Rational global_bound;
  std::vector<std::optional<std::size_t>> assignment;
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::optional<std::size_t> left_turns;
  std::size_t nodes_after_optimum = 0;
  std::string termination;
};

SolveSummary solve_instance(const Instance& inst, const Strategy& strategy, const Rational& param,
                            std::size_t node_limit = 10000);

// JSON documents printed by `bnbptas solve` and `bnbptas oracle`; rationals
// as "p/q" strings, unassigned entries as null.
nlohmann::json solve_report(GenerateKind kind, const Strategy& strategy, const Rational& param,
                            const SolveSummary& solved);
nlohmann::json oracle_report(const OracleResult& result);

struct ExperimentConfig {
  GenerateKind kind = GenerateKind::kKnapsack;
  std::vector<std::pair<std::size_t, std::size_t>> sizes;  // (n, m)
  std::size_t instances = 30;
  std::vector<std::uint64_t> seeds;  // empty: 1..instances
  std::vector<Rational> params;      // alpha or eps values
  std::vector<std::string> selections;
  std::vector<std::string> branchings;
  std::vector<std::string> boundings;
  std::vector<std::string> roundings;
  std::size_t node_limit = 10000;
  std::size_t oracle_budget = kDefaultOracleBudget;
  std::size_t threads = 1;
  std::string output;  // results CSV; empty means stdout
  std::string summary;  // optional summary CSV

  std::vector<std::uint64_t> effective_seeds() const;
  // Cartesian product of the four tag lists, in list order.
  std::vector<Strategy> strategies() const;
  void validate() const;

  // The standard sweep for `kind`: alpha = 97/100 for knapsack, eps = 1/100 for
  // unrelated machines, eps = 1/2 for the profile schemes.
  static ExperimentConfig defaults(GenerateKind kind);
  // Fields absent from `doc` keep the kind's defaults.
  static ExperimentConfig from_json(const nlohmann::json& doc);
};

struct ResultRow {
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  Strategy strategy;
  Rational param;
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::optional<std::size_t> left_turns;
  std::size_t nodes_after_optimum = 0;
  Rational value;
  std::optional<Rational> optimum;
  std::optional<Rational> gap;
  std::string termination;
  double wall_ms = 0;
};

// Runs every (size, seed, param, strategy) cell. Rows come back in that
// nesting order whatever the thread count. The oracle runs once per
// instance; an instance beyond the oracle budget gets blank gap columns.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kResultsSchema = "bnbptas-results/1";
void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
// Throws ConfigError on a malformed file.
std::vector<ResultRow> read_results_csv(std::istream& in);

inline constexpr double kGapOffset = 1e-9;

struct SummaryRow {
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  Strategy strategy;
  std::string param;
  std::size_t runs = 0;
  double nodes_geomean = 0;
  // Geometric mean of (gap + kGapOffset) over rows with a gap.
  std::optional<double> gap_geomean;
  std::size_t with_gap = 0;
  std::size_t optimal = 0;    // gap == 0
  std::size_t ratio_met = 0;  // termination == ratio-met
};

// Groups by (kind, n, m, strategy, param) in first-appearance order. Throws
// ConfigError on empty input.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows);

double geometric_mean(const std::vector<double>& values);

}  // namespace bnbptas

#endif  // BNBPTAS_EXPERIMENT_HPP_
