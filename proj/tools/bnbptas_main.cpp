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

// bnbptas: generate instances, run the solvers and the experiment harness.
//
// Exit codes: 0 success, 2 validation error (bad flags, config or instance),
// 3 oracle budget exceeded, 1 anything else.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bnbptas/experiment.hpp"
#include "bnbptas/instances.hpp"
#include "bnbptas/oracle.hpp"
#include "bnbptas/rational.hpp"

namespace {

using bnbptas::ConfigError;
using bnbptas::GenerateKind;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// "5x2,10x2" -> {(5,2),(10,2)}
std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(const std::vector<std::string>& items) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& item : items) {
    const auto x = item.find('x');
    if (x == std::string::npos) throw ConfigError("size '" + item + "' is not NxM");
    try {
      std::size_t used = 0;
      const std::size_t n = std::stoull(item.substr(0, x), &used);
      if (used != x) throw std::invalid_argument(item);
      const std::string rest = item.substr(x + 1);
      const std::size_t m = std::stoull(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(item);
      out.emplace_back(n, m);
    } catch (const std::logic_error&) {
      throw ConfigError("size '" + item + "' is not NxM");
    }
  }
  return out;
}

struct SolveArgs {
  std::string instance;
  std::string selection, branching, bounding, rounding;
  std::string param;
  std::size_t node_limit = 10000;
  std::string output;
};

int run_solve(const SolveArgs& args) {
  const bnbptas::Instance inst = bnbptas::read_instance(args.instance);
  const GenerateKind kind = bnbptas::kind_of(inst);
  bnbptas::Strategy strategy = bnbptas::default_strategy(kind);
  if (!args.selection.empty()) strategy.selection = args.selection;
  if (!args.branching.empty()) strategy.branching = args.branching;
  if (!args.bounding.empty()) strategy.bounding = args.bounding;
  if (!args.rounding.empty()) strategy.rounding = args.rounding;
  const bnbptas::Rational param =
      args.param.empty() ? bnbptas::default_param(kind) : bnbptas::Rational::parse(args.param);

  const auto solved = bnbptas::solve_instance(inst, strategy, param, args.node_limit);
  const json out = bnbptas::solve_report(kind, strategy, param, solved);
  emit(args.output, out.dump(2) + "\n");
  return 0;
}

int run_oracle(const std::string& path, std::size_t budget, const std::string& output) {
  const bnbptas::Instance inst = bnbptas::read_instance(path);
  const auto result = bnbptas::exact_opt(inst, budget);
  const json out = bnbptas::oracle_report(result);
  emit(output, out.dump(2) + "\n");
  return 0;
}

struct ExperimentArgs {
  std::string config_path;
  std::string kind;
  std::vector<std::string> sizes;
  std::optional<std::size_t> instances;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> params;
  std::vector<std::string> selections, branchings, boundings, roundings;
  std::optional<std::size_t> node_limit, oracle_budget, threads;
  std::string output, summary;
};

int run_experiment_cmd(const ExperimentArgs& args) {
  json doc = json::object();
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("cannot read config " + args.config_path);
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config " + args.config_path + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  }
  // Flags override the file.
  if (!args.kind.empty()) doc["kind"] = args.kind;
  if (!doc.contains("kind")) throw ConfigError("--kind or a config with \"kind\" is required");
  if (args.instances) doc["instances"] = *args.instances;
  if (!args.seeds.empty()) doc["seeds"] = args.seeds;
  if (!args.params.empty()) doc["params"] = args.params;
  if (!args.selections.empty()) doc["selection"] = args.selections;
  if (!args.branchings.empty()) doc["branching"] = args.branchings;
  if (!args.boundings.empty()) doc["bounding"] = args.boundings;
  if (!args.roundings.empty()) doc["rounding"] = args.roundings;
  if (args.node_limit) doc["node_limit"] = *args.node_limit;
  if (args.oracle_budget) doc["oracle_budget"] = *args.oracle_budget;
  if (args.threads) doc["threads"] = *args.threads;
  if (!args.output.empty()) doc["output"] = args.output;
  if (!args.summary.empty()) doc["summary"] = args.summary;

  bnbptas::ExperimentConfig config = bnbptas::ExperimentConfig::from_json(doc);
  if (!args.sizes.empty()) config.sizes = parse_sizes(args.sizes);
  const auto rows = bnbptas::run_experiment(config);

  std::ostringstream csv;
  bnbptas::write_results_csv(csv, rows);
  emit(config.output, csv.str());
  if (!config.summary.empty()) {
    std::ostringstream summary;
    bnbptas::write_summary_csv(summary, bnbptas::summarize(rows));
    emit(config.summary, summary.str());
  }
  return 0;
}

int run_summarize(const std::string& path, const std::string& csv_out) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  const auto rows = bnbptas::read_results_csv(in);
  const auto summary = bnbptas::summarize(rows);
  if (!csv_out.empty()) {
    std::ostringstream csv;
    bnbptas::write_summary_csv(csv, summary);
    emit(csv_out, csv.str());
  }
  if (csv_out != "-") bnbptas::write_summary_table(std::cout, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch-and-bound approximation schemes for knapsack and scheduling"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a seeded random instance as JSON");
  std::string gen_kind;
  std::size_t gen_n = 0, gen_m = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--kind", gen_kind,
                  "knapsack | scheduling-unrelated | scheduling-uniform | scheduling-identical")
      ->required();
  gen->add_option("-n,--n", gen_n, "Items or jobs")->required();
  gen->add_option("-m,--m", gen_m, "Knapsacks or machines")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("-o,--output", gen_out, "Output file (stdout when omitted)");

  auto* solve = app.add_subcommand("solve", "Run the branch-and-bound scheme on an instance");
  SolveArgs solve_args;
  solve->add_option("instance", solve_args.instance, "Instance JSON")->required();
  solve->add_option("--selection", solve_args.selection, "DFS | BFS | BFS-CAP | HUB | LLB");
  solve->add_option("--branching", solve_args.branching, "CE | PPW | K | MMP | LONGEST");
  solve->add_option("--bounding", solve_args.bounding, "Surrogate | BS | LR");
  solve->add_option("--rounding", solve_args.rounding, "Dantzig | AS | BM | LST");
  solve->add_option("--param", solve_args.param, "alpha (knapsack) or eps, as a rational");
  solve->add_option("--node-limit", solve_args.node_limit, "Explored-node limit");
  solve->add_option("-o,--output", solve_args.output, "Output file (stdout when omitted)");

  auto* oracle = app.add_subcommand("oracle", "Compute the exact optimum");
  std::string oracle_in, oracle_out;
  std::size_t oracle_budget = bnbptas::kDefaultOracleBudget;
  oracle->add_option("instance", oracle_in, "Instance JSON")->required();
  oracle->add_option("--budget", oracle_budget, "DP cells or search nodes before giving up");
  oracle->add_option("-o,--output", oracle_out, "Output file (stdout when omitted)");

  auto* exp = app.add_subcommand("experiment", "Run a strategy sweep and write results CSV");
  ExperimentArgs exp_args;
  exp->add_option("--config", exp_args.config_path, "JSON config; flags override its fields");
  exp->add_option("--kind", exp_args.kind, "Problem kind");
  exp->add_option("--sizes", exp_args.sizes, "NxM pairs, e.g. 5x2,10x2")->delimiter(',');
  exp->add_option("--instances", exp_args.instances, "Instances per size (seeds 1..k)");
  exp->add_option("--seeds", exp_args.seeds, "Explicit seeds")->delimiter(',');
  exp->add_option("--params", exp_args.params, "alpha or eps values")->delimiter(',');
  exp->add_option("--selection", exp_args.selections, "Selection tags")->delimiter(',');
  exp->add_option("--branching", exp_args.branchings, "Branching tags")->delimiter(',');
  exp->add_option("--bounding", exp_args.boundings, "Bounding tags")->delimiter(',');
  exp->add_option("--rounding", exp_args.roundings, "Rounding tags")->delimiter(',');
  exp->add_option("--node-limit", exp_args.node_limit, "Explored-node limit per run");
  exp->add_option("--oracle-budget", exp_args.oracle_budget, "Oracle budget per instance");
  exp->add_option("--threads", exp_args.threads, "Worker threads");
  exp->add_option("-o,--output", exp_args.output, "Results CSV (stdout when omitted)");
  exp->add_option("--summary", exp_args.summary, "Also write a summary CSV here");

  auto* sum = app.add_subcommand("summarize", "Aggregate a results CSV");
  std::string sum_in, sum_out;
  sum->add_option("results", sum_in, "Results CSV")->required();
  sum->add_option("-o,--output", sum_out, "Summary CSV ('-' for stdout instead of the table)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (gen->parsed()) {
      const auto inst = bnbptas::generate(bnbptas::parse_generate_kind(gen_kind), gen_n, gen_m, gen_seed);
      emit(gen_out, bnbptas::dump_instance(inst) + "\n");
      return 0;
    }
    if (solve->parsed()) return run_solve(solve_args);
    if (oracle->parsed()) return run_oracle(oracle_in, oracle_budget, oracle_out);
    if (exp->parsed()) return run_experiment_cmd(exp_args);
    if (sum->parsed()) return run_summarize(sum_in, sum_out);
  } catch (const bnbptas::BudgetExceeded& e) {
    std::cerr << "bnbptas: " << e.what() << "\n";
    return kExitBudget;
  } catch (const bnbptas::InstanceError& e) {
    std::cerr << "bnbptas: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {  // ConfigError and parse errors
    std::cerr << "bnbptas: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "bnbptas: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
