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

#include "bnbptas/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "bnbptas/knapsack.hpp"
#include "bnbptas/profiles.hpp"
#include "bnbptas/scheduling.hpp"

namespace bnbptas {

namespace {

bool one_of(const std::string& tag, std::initializer_list<const char*> allowed) {
  return std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return tag == a; });
}

template <class Solution>
void copy_metrics(const RunResult<Solution>& run, SolveSummary& out) {
  out.value = run.best_value;
  out.global_bound = run.global_bound;
  out.nodes = run.nodes_explored;
  out.max_depth = run.max_depth;
  out.left_turns = run.left_turn_max;
  out.nodes_after_optimum = run.nodes_after_optimum;
  out.termination = to_string(run.termination);
}

void fill_schedule(const std::optional<Schedule>& schedule, SolveSummary& out) {
  if (!schedule) return;
  for (std::size_t machine : schedule->assignment) out.assignment.emplace_back(machine);
}

// Runs fn(0..count) on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double value, const char* format) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

// Exact value of a decimal literal such as "0.125" or "1.5e-05".
Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  for (; pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) != 0); ++pos) {
    digits += text[pos];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    for (++pos; pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) != 0);
         ++pos) {
      digits += text[pos];
      --exponent;
      seen_digit = true;
    }
  }
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    try {
      std::size_t used = 0;
      exponent += std::stol(text.substr(pos + 1), &used);
      pos += 1 + used;
    } catch (const std::exception&) {
      throw ConfigError("malformed number '" + text + "'");
    }
  }
  if (!seen_digit || pos != text.size()) throw ConfigError("malformed number '" + text + "'");
  Rational value = Rational::parse(digits.empty() ? "0" : digits);
  const Rational ten(10);
  if (exponent >= 0) {
    value *= ten.pow(static_cast<unsigned>(exponent));
  } else {
    value /= ten.pow(static_cast<unsigned>(-exponent));
  }
  return negative ? -value : value;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

const std::vector<std::string> kResultColumns = {
    "kind",  "seed",     "n",     "m",   "selection",           "branching",
    "bounding", "rounding", "param", "nodes", "max_depth",      "left_turns",
    "nodes_after_optimum", "value", "optimum", "gap", "termination", "wall_ms"};

}  // namespace

Strategy default_strategy(GenerateKind kind) {
  switch (kind) {
    case GenerateKind::kKnapsack:
      return {"HUB", "CE", "Surrogate", "Dantzig"};
    case GenerateKind::kSchedulingUnrelated:
      return {"LLB", "MMP", "BS", "AS"};
    case GenerateKind::kSchedulingUniform:
    case GenerateKind::kSchedulingIdentical:
      break;
  }
  return {"LLB", "LONGEST", "BS", "LST"};
}

Rational default_param(GenerateKind kind) {
  switch (kind) {
    case GenerateKind::kKnapsack:
      return Rational(9, 10);
    case GenerateKind::kSchedulingUnrelated:
      return Rational(1, 10);
    case GenerateKind::kSchedulingUniform:
    case GenerateKind::kSchedulingIdentical:
      break;
  }
  return Rational(1, 2);
}

void validate_strategy(GenerateKind kind, const Strategy& s) {
  bool ok = false;
  switch (kind) {
    case GenerateKind::kKnapsack:
      ok = one_of(s.selection, {"DFS", "BFS", "HUB"}) && one_of(s.branching, {"CE", "PPW", "K"}) &&
           s.bounding == "Surrogate" && s.rounding == "Dantzig";
      break;
    case GenerateKind::kSchedulingUnrelated:
      ok = one_of(s.selection, {"DFS", "BFS", "BFS-CAP", "LLB"}) && s.branching == "MMP" &&
           one_of(s.bounding, {"BS", "LR"}) && one_of(s.rounding, {"AS", "BM", "LST"});
      break;
    case GenerateKind::kSchedulingUniform:
    case GenerateKind::kSchedulingIdentical:
      ok = one_of(s.selection, {"DFS", "BFS", "LLB"}) && s.branching == "LONGEST" &&
           s.bounding == "BS" && s.rounding == "LST";
      break;
  }
  if (!ok) {
    throw ConfigError("strategy " + s.selection + "/" + s.branching + "/" + s.bounding + "/" +
                      s.rounding + " is not valid for " + to_string(kind));
  }
}

void validate_param(GenerateKind kind, const Rational& param) {
  if (kind == GenerateKind::kKnapsack) {
    if (param.sign() <= 0 || param >= Rational(1)) {
      throw ConfigError("alpha must lie strictly between 0 and 1, got " + param.str());
    }
  } else if (param.sign() <= 0) {
    throw ConfigError("eps must be positive, got " + param.str());
  }
}

SolveSummary solve_instance(const Instance& inst, const Strategy& strategy, const Rational& param,
                            std::size_t node_limit) {
  const GenerateKind kind = kind_of(inst);
  validate_strategy(kind, strategy);
  validate_param(kind, param);
  SolveSummary out;
  if (kind == GenerateKind::kKnapsack) {
    KnapsackRunConfig config;
    config.alpha = param;
    config.selection = parse_selection(strategy.selection);
    config.rule = parse_branch_rule(strategy.branching);
    config.node_limit = node_limit;
    const auto run = solve_knapsack(std::get<KnapsackInstance>(inst), config);
    copy_metrics(run, out);
    if (run.best_solution) out.assignment = run.best_solution->assignment;
    return out;
  }
  const auto& sched = std::get<SchedulingInstance>(inst);
  const bool capped = strategy.selection == "BFS-CAP";
  const Selection selection = parse_selection(capped ? "BFS" : strategy.selection);
  if (kind == GenerateKind::kSchedulingUnrelated) {
    UnrelatedRunConfig config;
    config.epsilon = param;
    config.selection = selection;
    config.bound = parse_bound_mode(strategy.bounding);
    config.rounding = parse_rounding(strategy.rounding);
    config.node_limit = node_limit;
    config.cap_depth = capped;
    const auto run = solve_unrelated(sched, config);
    copy_metrics(run, out);
    fill_schedule(run.best_solution, out);
    return out;
  }
  ProfileRunConfig config;
  config.epsilon = param;
  config.selection = selection;
  config.node_limit = node_limit;
  const ProfileRunResult result = kind == GenerateKind::kSchedulingUniform
                                      ? solve_sim_prof(sched, config)
                                      : solve_eq_prof(sched, config);
  copy_metrics(result.run, out);
  fill_schedule(result.run.best_solution, out);
  return out;
}

namespace {

nlohmann::json assignment_json(const std::vector<std::optional<std::size_t>>& assignment) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& a : assignment) out.push_back(a ? nlohmann::json(*a) : nlohmann::json(nullptr));
  return out;
}

}  // namespace

nlohmann::json solve_report(GenerateKind kind, const Strategy& strategy, const Rational& param,
                            const SolveSummary& solved) {
  nlohmann::json out;
  out["kind"] = to_string(kind);
  out["strategy"] = {{"selection", strategy.selection},
                     {"branching", strategy.branching},
                     {"bounding", strategy.bounding},
                     {"rounding", strategy.rounding}};
  out["param"] = param.str();
  out["value"] = solved.value.str();
  out["global_bound"] = solved.global_bound.str();
  out["assignment"] = assignment_json(solved.assignment);
  out["nodes"] = solved.nodes;
  out["max_depth"] = solved.max_depth;
  out["left_turns"] = solved.left_turns ? nlohmann::json(*solved.left_turns) : nlohmann::json(nullptr);
  out["nodes_after_optimum"] = solved.nodes_after_optimum;
  out["termination"] = solved.termination;
  return out;
}

nlohmann::json oracle_report(const OracleResult& result) {
  nlohmann::json out;
  out["optimum"] = result.optimum.str();
  out["witness"] = assignment_json(result.witness);
  out["method"] = to_string(result.method);
  out["states"] = result.states;
  return out;
}

std::vector<std::uint64_t> ExperimentConfig::effective_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> out(instances);
  for (std::size_t k = 0; k < instances; ++k) out[k] = k + 1;
  return out;
}

std::vector<Strategy> ExperimentConfig::strategies() const {
  std::vector<Strategy> out;
  for (const auto& s : selections) {
    for (const auto& b : branchings) {
      for (const auto& d : boundings) {
        for (const auto& r : roundings) out.push_back(Strategy{s, b, d, r});
      }
    }
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ConfigError("no (n, m) sizes given");
  for (const auto& [n, m] : sizes) {
    if (n == 0 || m == 0) throw ConfigError("sizes need n >= 1 and m >= 1");
  }
  if (seeds.empty() && instances == 0) throw ConfigError("instances must be at least 1");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  if (params.empty()) throw ConfigError("no alpha/eps values given");
  for (const auto& p : params) validate_param(kind, p);
  const auto matrix = strategies();
  if (matrix.empty()) throw ConfigError("strategy matrix is empty");
  for (const auto& s : matrix) validate_strategy(kind, s);
  if (node_limit == 0) throw ConfigError("node limit must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
}

ExperimentConfig ExperimentConfig::defaults(GenerateKind kind) {
  ExperimentConfig config;
  config.kind = kind;
  config.sizes = {{5, 2}, {10, 2}, {10, 5}};
  switch (kind) {
    case GenerateKind::kKnapsack:
      config.params = {Rational(97, 100)};
      config.selections = {"DFS", "BFS", "HUB"};
      config.branchings = {"CE", "PPW", "K"};
      config.boundings = {"Surrogate"};
      config.roundings = {"Dantzig"};
      break;
    case GenerateKind::kSchedulingUnrelated:
      config.params = {Rational(1, 100)};
      config.selections = {"DFS", "BFS", "LLB"};
      config.branchings = {"MMP"};
      config.boundings = {"BS", "LR"};
      config.roundings = {"AS", "BM"};
      break;
    case GenerateKind::kSchedulingUniform:
    case GenerateKind::kSchedulingIdentical:
      config.params = {Rational(1, 2)};
      config.selections = {"LLB"};
      config.branchings = {"LONGEST"};
      config.boundings = {"BS"};
      config.roundings = {"LST"};
      break;
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (!doc.contains("kind")) throw ConfigError("config: missing \"kind\"");
    ExperimentConfig config = defaults(parse_generate_kind(doc.at("kind").get<std::string>()));
    if (doc.contains("sizes")) {
      config.sizes.clear();
      for (const auto& pair : doc.at("sizes")) {
        if (!pair.is_array() || pair.size() != 2) throw ConfigError("config: sizes are [n, m] pairs");
        config.sizes.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
      }
    }
    if (doc.contains("instances")) config.instances = doc.at("instances").get<std::size_t>();
    if (doc.contains("seeds")) config.seeds = doc.at("seeds").get<std::vector<std::uint64_t>>();
    if (doc.contains("params")) {
      config.params.clear();
      for (const auto& p : doc.at("params")) {
        config.params.push_back(p.is_string() ? Rational::parse(p.get<std::string>())
                                              : Rational(p.get<std::int64_t>()));
      }
    }
    auto tags = [&](const char* key, std::vector<std::string>& into) {
      if (doc.contains(key)) into = doc.at(key).get<std::vector<std::string>>();
    };
    tags("selection", config.selections);
    tags("branching", config.branchings);
    tags("bounding", config.boundings);
    tags("rounding", config.roundings);
    if (doc.contains("node_limit")) config.node_limit = doc.at("node_limit").get<std::size_t>();
    if (doc.contains("oracle_budget")) {
      config.oracle_budget = doc.at("oracle_budget").get<std::size_t>();
    }
    if (doc.contains("threads")) config.threads = doc.at("threads").get<std::size_t>();
    if (doc.contains("output")) config.output = doc.at("output").get<std::string>();
    if (doc.contains("summary")) config.summary = doc.at("summary").get<std::string>();
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto seeds = config.effective_seeds();
  const auto matrix = config.strategies();

  struct Cell {
    std::size_t n, m;
    std::uint64_t seed;
    Instance instance;
    std::optional<Rational> optimum;
  };
  std::vector<Cell> cells;
  for (const auto& [n, m] : config.sizes) {
    for (std::uint64_t seed : seeds) cells.push_back(Cell{n, m, seed, generate(config.kind, n, m, seed), {}});
  }
  parallel_for(cells.size(), config.threads, [&](std::size_t k) {
    try {
      cells[k].optimum = exact_opt(cells[k].instance, config.oracle_budget).optimum;
    } catch (const BudgetExceeded&) {
      cells[k].optimum.reset();
    }
  });

  const std::size_t per_cell = config.params.size() * matrix.size();
  std::vector<ResultRow> rows(cells.size() * per_cell);
  parallel_for(rows.size(), config.threads, [&](std::size_t k) {
    const Cell& cell = cells[k / per_cell];
    const Rational& param = config.params[(k % per_cell) / matrix.size()];
    const Strategy& strategy = matrix[k % matrix.size()];
    const auto start = std::chrono::steady_clock::now();
    const SolveSummary solved = solve_instance(cell.instance, strategy, param, config.node_limit);
    const auto stop = std::chrono::steady_clock::now();
    ResultRow& row = rows[k];
    row.kind = to_string(config.kind);
    row.seed = cell.seed;
    row.n = cell.n;
    row.m = cell.m;
    row.strategy = strategy;
    row.param = param;
    row.nodes = solved.nodes;
    row.max_depth = solved.max_depth;
    row.left_turns = solved.left_turns;
    row.nodes_after_optimum = solved.nodes_after_optimum;
    row.value = solved.value;
    row.optimum = cell.optimum;
    if (cell.optimum) row.gap = optimality_gap(solved.value, *cell.optimum);
    row.termination = solved.termination;
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  });
  return rows;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "# schema: " << kResultsSchema << "\n";
  for (std::size_t c = 0; c < kResultColumns.size(); ++c) {
    out << (c ? "," : "") << kResultColumns[c];
  }
  out << "\n";
  for (const auto& r : rows) {
    out << r.kind << ',' << r.seed << ',' << r.n << ',' << r.m << ',' << r.strategy.selection
        << ',' << r.strategy.branching << ',' << r.strategy.bounding << ','
        << r.strategy.rounding << ',' << r.param.str() << ',' << r.nodes << ',' << r.max_depth
        << ',' << (r.left_turns ? std::to_string(*r.left_turns) : "") << ','
        << r.nodes_after_optimum << ',' << r.value.str() << ','
        << (r.optimum ? r.optimum->str() : "") << ','
        << (r.gap ? format_double(r.gap->to_double(), "%.12g") : "") << ',' << r.termination
        << ',' << format_double(r.wall_ms, "%.3f") << "\n";
  }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
  std::string line;
  std::map<std::string, std::size_t> column;
  std::vector<ResultRow> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    if (column.empty()) {
      for (std::size_t c = 0; c < fields.size(); ++c) column[fields[c]] = c;
      for (const auto& name : kResultColumns) {
        if (!column.count(name)) throw ConfigError("results: missing column '" + name + "'");
      }
      continue;
    }
    if (fields.size() != column.size()) {
      throw ConfigError("results line " + std::to_string(line_no) + ": expected " +
                        std::to_string(column.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    auto at = [&](const char* name) -> const std::string& { return fields[column.at(name)]; };
    try {
      ResultRow r;
      r.kind = at("kind");
      r.seed = std::stoull(at("seed"));
      r.n = std::stoull(at("n"));
      r.m = std::stoull(at("m"));
      r.strategy = Strategy{at("selection"), at("branching"), at("bounding"), at("rounding")};
      r.param = Rational::parse(at("param"));
      r.nodes = std::stoull(at("nodes"));
      r.max_depth = std::stoull(at("max_depth"));
      if (!at("left_turns").empty()) r.left_turns = std::stoull(at("left_turns"));
      r.nodes_after_optimum = std::stoull(at("nodes_after_optimum"));
      r.value = Rational::parse(at("value"));
      if (!at("optimum").empty()) r.optimum = Rational::parse(at("optimum"));
      if (!at("gap").empty()) r.gap = parse_decimal(at("gap"));
      r.termination = at("termination");
      r.wall_ms = std::stod(at("wall_ms"));
      rows.push_back(std::move(r));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("results line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

double geometric_mean(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("geometric mean of nothing");
  double logs = 0;
  for (double v : values) logs += std::log(v);
  return std::exp(logs / static_cast<double>(values.size()));
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw ConfigError("summarize: no result rows");
  std::vector<SummaryRow> out;
  std::vector<std::vector<double>> nodes, gaps;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    const std::string key = r.kind + "|" + std::to_string(r.n) + "|" + std::to_string(r.m) + "|" +
                            r.strategy.selection + "|" + r.strategy.branching + "|" +
                            r.strategy.bounding + "|" + r.strategy.rounding + "|" + r.param.str();
    auto [it, fresh] = index.emplace(key, out.size());
    if (fresh) {
      SummaryRow s;
      s.kind = r.kind;
      s.n = r.n;
      s.m = r.m;
      s.strategy = r.strategy;
      s.param = r.param.str();
      out.push_back(std::move(s));
      nodes.emplace_back();
      gaps.emplace_back();
    }
    SummaryRow& s = out[it->second];
    ++s.runs;
    nodes[it->second].push_back(static_cast<double>(r.nodes));
    if (r.gap) {
      ++s.with_gap;
      gaps[it->second].push_back(r.gap->to_double() + kGapOffset);
      if (r.gap->is_zero()) ++s.optimal;
    }
    if (r.termination == "ratio-met") ++s.ratio_met;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].nodes_geomean = geometric_mean(nodes[k]);
    if (!gaps[k].empty()) out[k].gap_geomean = geometric_mean(gaps[k]);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "# gap_geomean is the geometric mean of (gap + " << format_double(kGapOffset, "%g")
      << ") over rows with an oracle optimum\n";
  out << "kind,n,m,selection,branching,bounding,rounding,param,runs,nodes_geomean,gap_geomean,"
         "with_gap,optimal,ratio_met\n";
  for (const auto& s : rows) {
    out << s.kind << ',' << s.n << ',' << s.m << ',' << s.strategy.selection << ','
        << s.strategy.branching << ',' << s.strategy.bounding << ',' << s.strategy.rounding
        << ',' << s.param << ',' << s.runs << ',' << format_double(s.nodes_geomean, "%.6g")
        << ',' << (s.gap_geomean ? format_double(*s.gap_geomean, "%.6g") : "") << ','
        << s.with_gap << ',' << s.optimal << ',' << s.ratio_met << "\n";
  }
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << std::left << std::setw(22) << "kind" << std::setw(5) << "n" << std::setw(4) << "m"
      << std::setw(26) << "strategy" << std::setw(10) << "param" << std::setw(6) << "runs"
      << std::setw(14) << "nodes(geo)" << std::setw(14) << "gap(geo)" << "optimal\n";
  for (const auto& s : rows) {
    const std::string strategy = s.strategy.selection + "/" + s.strategy.branching + "/" +
                                 s.strategy.bounding + "/" + s.strategy.rounding;
    out << std::left << std::setw(22) << s.kind << std::setw(5) << s.n << std::setw(4) << s.m
        << std::setw(26) << strategy << std::setw(10) << s.param << std::setw(6) << s.runs
        << std::setw(14) << format_double(s.nodes_geomean, "%.4g") << std::setw(14)
        << (s.gap_geomean ? format_double(*s.gap_geomean, "%.3g") : "-") << s.optimal << "/"
        << s.with_gap << "\n";
  }
  out << "gap(geo) adds " << format_double(kGapOffset, "%g") << " to every gap before averaging\n";
}

}  // namespace bnbptas
