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

// Thin layer over the library. Documents cross the boundary as JSON or CSV
// text; the Python package turns them into dicts and Fractions.

#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bnbptas/experiment.hpp"
#include "bnbptas/instances.hpp"
#include "bnbptas/knapsack.hpp"
#include "bnbptas/oracle.hpp"
#include "bnbptas/scheduling.hpp"

namespace py = pybind11;

namespace {

bnbptas::Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw bnbptas::InstanceError(std::string("instance is not JSON: ") + e.what());
  }
  return bnbptas::instance_from_json(doc);
}

std::string generate(const std::string& kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  return bnbptas::dump_instance(bnbptas::generate(bnbptas::parse_generate_kind(kind), n, m, seed));
}

std::string solve(const std::string& instance, const std::optional<std::string>& selection,
                  const std::optional<std::string>& branching, const std::optional<std::string>& bounding,
                  const std::optional<std::string>& rounding, const std::optional<std::string>& param,
                  std::size_t node_limit) {
  const auto inst = parse_instance(instance);
  const auto kind = bnbptas::kind_of(inst);
  auto strategy = bnbptas::default_strategy(kind);
  if (selection) strategy.selection = *selection;
  if (branching) strategy.branching = *branching;
  if (bounding) strategy.bounding = *bounding;
  if (rounding) strategy.rounding = *rounding;
  const auto value = param ? bnbptas::Rational::parse(*param) : bnbptas::default_param(kind);
  bnbptas::SolveSummary solved;
  {
    py::gil_scoped_release release;
    solved = bnbptas::solve_instance(inst, strategy, value, node_limit);
  }
  return bnbptas::solve_report(kind, strategy, value, solved).dump();
}

std::string oracle(const std::string& instance, std::size_t budget) {
  const auto inst = parse_instance(instance);
  py::gil_scoped_release release;
  return bnbptas::oracle_report(bnbptas::exact_opt(inst, budget)).dump();
}

std::string experiment(const std::string& config_json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(config_json);
  } catch (const nlohmann::json::exception& e) {
    throw bnbptas::ConfigError(std::string("config is not JSON: ") + e.what());
  }
  const auto config = bnbptas::ExperimentConfig::from_json(doc);
  std::vector<bnbptas::ResultRow> rows;
  {
    py::gil_scoped_release release;
    rows = bnbptas::run_experiment(config);
  }
  std::ostringstream out;
  bnbptas::write_results_csv(out, rows);
  return out.str();
}

std::string summarize(const std::string& results_csv) {
  std::istringstream in(results_csv);
  std::ostringstream out;
  bnbptas::write_summary_csv(out, bnbptas::summarize(bnbptas::read_results_csv(in)));
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_bnbptas, m) {
  m.doc() = "Branch-and-bound approximation schemes (native core)";

  static py::exception<bnbptas::BudgetExceeded> budget_exceeded(m, "OracleBudgetExceeded",
                                                                PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const bnbptas::BudgetExceeded& e) {
      PyErr_SetString(budget_exceeded.ptr(), e.what());
    } catch (const bnbptas::InstanceError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
    // ConfigError is an invalid_argument, which pybind11 maps to ValueError.
  });

  m.attr("DEFAULT_ORACLE_BUDGET") = bnbptas::kDefaultOracleBudget;
  m.attr("RESULTS_SCHEMA") = bnbptas::kResultsSchema;

  m.def("generate", &generate, py::arg("kind"), py::arg("n"), py::arg("m"), py::arg("seed") = 1);
  m.def("solve", &solve, py::arg("instance"), py::arg("selection") = py::none(),
        py::arg("branching") = py::none(), py::arg("bounding") = py::none(),
        py::arg("rounding") = py::none(), py::arg("param") = py::none(), py::arg("node_limit") = 10000);
  m.def("oracle", &oracle, py::arg("instance"), py::arg("budget") = bnbptas::kDefaultOracleBudget);
  m.def("experiment", &experiment, py::arg("config"));
  m.def("summarize", &summarize, py::arg("results_csv"));

  m.def("left_turn_bound",
        [](const std::string& alpha, std::size_t machines) {
          return bnbptas::left_turn_bound(bnbptas::Rational::parse(alpha), machines).str();
        },
        py::arg("alpha"), py::arg("m"));
  m.def("depth_allowance",
        [](std::size_t machines, const std::string& eps) {
          return bnbptas::depth_allowance(machines, bnbptas::Rational::parse(eps));
        },
        py::arg("m"), py::arg("eps"));
}
