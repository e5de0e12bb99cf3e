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

#ifndef BNBPTAS_LP_HPP_
#define BNBPTAS_LP_HPP_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bnbptas/rational.hpp"

namespace bnbptas {

struct LinearTerm {
  std::size_t var;
  Rational coef;
};

struct LinearRow {
  std::vector<LinearTerm> terms;
  Rational rhs;
};

// Feasibility system: equalities, "<=" inequalities, every variable >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;

  // Throws std::invalid_argument if a row names an undeclared variable.
  void validate() const;
  // Exact re-substitution check of x against every constraint.
  bool satisfied_by(const std::vector<Rational>& x) const;
};

// Basic feasible solution. Basis indices refer to the standard-form columns:
// original variables first, then one slack per inequality in row order
// (slack k has index num_vars + k).
struct Vertex {
  std::vector<Rational> values;
  std::vector<std::size_t> basis;
};

// Phase-1 simplex on exact rationals with Bland's rule; ratio-test ties go to
// the lowest basic index. Returns nullopt when the system is infeasible.
// Deterministic for a fixed input.
std::optional<Vertex> solve_vertex(const LinearProgram& lp);

// Bipartite graph of machines and fractional jobs of an assignment point
// x[j][i]. Edges are the strictly fractional entries.
struct FractionalGraph {
  std::size_t machines = 0;
  std::vector<std::size_t> jobs;                         // ascending
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (job, machine)

  bool empty() const { return jobs.empty(); }
  bool is_forest() const;
  bool is_pseudo_forest() const;
  // Connected components, each given as its machine list (ascending).
  std::vector<std::vector<std::size_t>> machine_components() const;
};

// Builds G(x). With check_bound set, throws std::logic_error when more than
// `machines` jobs are fractional, which cannot happen at a vertex.
FractionalGraph fractional_graph(const std::vector<std::vector<Rational>>& x,
                                 std::size_t machines, bool check_bound = true);

// Injection of fractional jobs into machines along graph edges (job ->
// machine), or nullopt if none exists.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>>
fractional_matching(const FractionalGraph& graph);

}  // namespace bnbptas

#endif  // BNBPTAS_LP_HPP_
