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

#include "bnbptas/lp.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bnbptas {

void LinearProgram::validate() const {
  auto check = [&](const std::vector<LinearRow>& rows, const char* what) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& term : rows[r].terms) {
        if (term.var >= num_vars) {
          throw std::invalid_argument(std::string(what) + " row " + std::to_string(r) +
                                      " references variable " + std::to_string(term.var) +
                                      " of " + std::to_string(num_vars));
        }
      }
    }
  };
  check(equalities, "equality");
  check(inequalities, "inequality");
}

bool LinearProgram::satisfied_by(const std::vector<Rational>& x) const {
  if (x.size() != num_vars) return false;
  for (const auto& v : x) {
    if (v.sign() < 0) return false;
  }
  auto lhs = [&](const LinearRow& row) {
    Rational sum;
    for (const auto& term : row.terms) sum += term.coef * x[term.var];
    return sum;
  };
  for (const auto& row : equalities) {
    if (lhs(row) != row.rhs) return false;
  }
  for (const auto& row : inequalities) {
    if (lhs(row) > row.rhs) return false;
  }
  return true;
}

namespace {

// Dense tableau in standard form [A | rhs] with an explicit basis. Columns:
// originals, slacks, artificials.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) {
    num_vars_ = lp.num_vars;
    const std::size_t num_slack = lp.inequalities.size();
    const std::size_t num_rows = lp.equalities.size() + lp.inequalities.size();
    first_art_ = num_vars_ + num_slack;

    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<long> slack_col;  // -1 for equality rows
    auto densify = [&](const LinearRow& row) {
      std::vector<Rational> dense(first_art_);
      for (const auto& term : row.terms) dense[term.var] += term.coef;
      return dense;
    };
    for (const auto& row : lp.equalities) {
      rows.push_back(densify(row));
      rhs.push_back(row.rhs);
      slack_col.push_back(-1);
    }
    for (std::size_t k = 0; k < lp.inequalities.size(); ++k) {
      auto dense = densify(lp.inequalities[k]);
      dense[num_vars_ + k] = Rational(1);
      rows.push_back(std::move(dense));
      rhs.push_back(lp.inequalities[k].rhs);
      slack_col.push_back(static_cast<long>(num_vars_ + k));
    }

    std::size_t num_art = 0;
    std::vector<bool> needs_art(num_rows, false);
    for (std::size_t r = 0; r < num_rows; ++r) {
      if (rhs[r].sign() < 0) {
        for (auto& v : rows[r]) v = -v;
        rhs[r] = -rhs[r];
        needs_art[r] = true;
      } else {
        needs_art[r] = slack_col[r] < 0;
      }
      if (needs_art[r]) ++num_art;
    }
    num_cols_ = first_art_ + num_art;
    a_.assign(num_rows, std::vector<Rational>(num_cols_));
    b_ = rhs;
    basis_.assign(num_rows, 0);
    std::size_t next_art = first_art_;
    for (std::size_t r = 0; r < num_rows; ++r) {
      std::copy(rows[r].begin(), rows[r].end(), a_[r].begin());
      if (needs_art[r]) {
        a_[r][next_art] = Rational(1);
        basis_[r] = next_art++;
      } else {
        basis_[r] = static_cast<std::size_t>(slack_col[r]);
      }
    }
    // Reduced costs of the phase-1 objective (sum of artificials).
    d_.assign(num_cols_, Rational());
    for (std::size_t r = 0; r < num_rows; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (!a_[r][j].is_zero()) d_[j] -= a_[r][j];
      }
      neg_w_ -= b_[r];
    }
  }

  bool phase_one() {
    while (true) {
      std::size_t enter = num_cols_;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (d_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter == num_cols_) break;
      std::size_t leave = a_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < a_.size(); ++r) {
        if (a_[r][enter].sign() <= 0) continue;
        Rational ratio = b_[r] / a_[r][enter];
        if (leave == a_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = std::move(ratio);
        }
      }
      // Phase 1 is bounded below by zero, so some row always blocks.
      if (leave == a_.size()) throw std::logic_error("phase-1 simplex: unbounded direction");
      pivot(leave, enter);
    }
    return neg_w_.is_zero();
  }

  // Removes artificials from the basis (degenerate pivots) or drops the
  // redundant rows they sit in.
  void expel_artificials() {
    for (std::size_t r = 0; r < a_.size();) {
      if (!is_artificial(basis_[r])) {
        ++r;
        continue;
      }
      std::size_t col = first_art_;
      for (std::size_t j = 0; j < first_art_; ++j) {
        if (!a_[r][j].is_zero() && !in_basis(j)) {
          col = j;
          break;
        }
      }
      if (col == first_art_) {
        a_.erase(a_.begin() + static_cast<long>(r));
        b_.erase(b_.begin() + static_cast<long>(r));
        basis_.erase(basis_.begin() + static_cast<long>(r));
        continue;
      }
      pivot(r, col);
      ++r;
    }
  }

  Vertex vertex() const {
    Vertex v;
    v.values.assign(num_vars_, Rational());
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (basis_[r] < num_vars_) v.values[basis_[r]] = b_[r];
      v.basis.push_back(basis_[r]);
    }
    std::sort(v.basis.begin(), v.basis.end());
    return v;
  }

 private:
  bool is_artificial(std::size_t col) const { return col >= first_art_; }
  bool in_basis(std::size_t col) const {
    return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& prow = a_[row];
    const Rational inv = prow[col].reciprocal();
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < num_cols_; ++j) {
      if (prow[j].is_zero()) continue;
      if (inv != Rational(1)) prow[j] *= inv;
      support.push_back(j);
    }
    if (inv != Rational(1)) b_[row] *= inv;
    auto eliminate = [&](std::vector<Rational>& target, Rational& target_rhs) {
      const Rational factor = target[col];
      if (factor.is_zero()) return;
      for (std::size_t j : support) target[j] -= factor * prow[j];
      if (!b_[row].is_zero()) target_rhs -= factor * b_[row];
    };
    for (std::size_t r = 0; r < a_.size(); ++r) {
      if (r != row) eliminate(a_[r], b_[r]);
    }
    eliminate(d_, neg_w_);
    basis_[row] = col;
  }

  std::size_t num_vars_ = 0;
  std::size_t first_art_ = 0;
  std::size_t num_cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> d_;
  Rational neg_w_;
};

}  // namespace

std::optional<Vertex> solve_vertex(const LinearProgram& lp) {
  lp.validate();
  Tableau tableau(lp);
  if (!tableau.phase_one()) return std::nullopt;
  tableau.expel_artificials();
  return tableau.vertex();
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

FractionalGraph fractional_graph(const std::vector<std::vector<Rational>>& x,
                                 std::size_t machines, bool check_bound) {
  FractionalGraph g;
  g.machines = machines;
  for (std::size_t j = 0; j < x.size(); ++j) {
    bool fractional = false;
    for (std::size_t i = 0; i < machines; ++i) {
      const Rational& v = x[j][i];
      if (v.sign() > 0 && v < Rational(1)) {
        fractional = true;
        g.edges.emplace_back(j, i);
      }
    }
    if (fractional) g.jobs.push_back(j);
  }
  if (check_bound && g.jobs.size() > machines) {
    throw std::logic_error("fractional graph: " + std::to_string(g.jobs.size()) +
                           " fractional jobs exceed " + std::to_string(machines) +
                           " machines; the point is not a vertex");
  }
  return g;
}

namespace {

std::size_t job_node(const FractionalGraph& g, std::size_t job) {
  const auto it = std::lower_bound(g.jobs.begin(), g.jobs.end(), job);
  return g.machines + static_cast<std::size_t>(it - g.jobs.begin());
}

}  // namespace

bool FractionalGraph::is_forest() const {
  DisjointSets sets(machines + jobs.size());
  for (const auto& [job, machine] : edges) {
    if (!sets.unite(machine, job_node(*this, job))) return false;
  }
  return true;
}

bool FractionalGraph::is_pseudo_forest() const {
  const std::size_t nodes = machines + jobs.size();
  DisjointSets sets(nodes);
  for (const auto& [job, machine] : edges) sets.unite(machine, job_node(*this, job));
  std::vector<std::size_t> node_count(nodes, 0), edge_count(nodes, 0);
  for (std::size_t v = 0; v < nodes; ++v) ++node_count[sets.find(v)];
  for (const auto& e : edges) ++edge_count[sets.find(e.second)];
  for (std::size_t v = 0; v < nodes; ++v) {
    if (edge_count[v] > node_count[v]) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> FractionalGraph::machine_components() const {
  DisjointSets sets(machines + jobs.size());
  for (const auto& [job, machine] : edges) sets.unite(machine, job_node(*this, job));
  std::vector<std::vector<std::size_t>> by_root(machines + jobs.size());
  for (std::size_t i = 0; i < machines; ++i) by_root[sets.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& group : by_root) {
    if (!group.empty()) out.push_back(std::move(group));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> fractional_matching(
    const FractionalGraph& graph) {
  std::vector<std::vector<std::size_t>> adj(graph.jobs.size());
  for (const auto& [job, machine] : graph.edges) {
    adj[job_node(graph, job) - graph.machines].push_back(machine);
  }
  std::vector<long> owner(graph.machines, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment =
      [&](std::size_t u, std::vector<bool>& seen) {
        for (std::size_t machine : adj[u]) {
          if (seen[machine]) continue;
          seen[machine] = true;
          if (owner[machine] < 0 ||
              augment(static_cast<std::size_t>(owner[machine]), seen)) {
            owner[machine] = static_cast<long>(u);
            return true;
          }
        }
        return false;
      };
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<bool> seen(graph.machines, false);
    if (!augment(u, seen)) return std::nullopt;
  }
  std::vector<std::pair<std::size_t, std::size_t>> result;
  for (std::size_t i = 0; i < graph.machines; ++i) {
    if (owner[i] >= 0) result.emplace_back(graph.jobs[static_cast<std::size_t>(owner[i])], i);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace bnbptas
