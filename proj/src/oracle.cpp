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

#include "bnbptas/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

namespace bnbptas {

std::string to_string(OracleMethod method) {
  return method == OracleMethod::kDp ? "dp" : "exhaustive";
}

namespace {

bool all_integral(const std::vector<Rational>& values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) {
    return v.is_integer() && v.is_small();
  });
}

std::int64_t as_int(const Rational& v) { return std::stoll(v.numerator_str()); }

// Cells of the capacity DP, or nullopt if it exceeds `limit`.
std::optional<std::size_t> dp_cells(const KnapsackInstance& inst, std::size_t limit) {
  std::size_t cells = 1;
  for (const auto& c : inst.capacities) {
    const auto width = static_cast<std::size_t>(as_int(c)) + 1;
    if (cells > limit / width) return std::nullopt;
    cells *= width;
  }
  if (cells > limit / std::max<std::size_t>(inst.n(), 1)) return std::nullopt;
  return cells;
}

OracleResult knapsack_dp(const KnapsackInstance& inst, std::size_t cells) {
  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  std::vector<std::size_t> stride(m), width(m);
  std::size_t acc = 1;
  for (std::size_t i = 0; i < m; ++i) {
    stride[i] = acc;
    width[i] = static_cast<std::size_t>(as_int(inst.capacities[i])) + 1;
    acc *= width[i];
  }
  constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::min();
  std::vector<std::int64_t> best(cells, kUnreachable);
  best[0] = 0;
  // choice[j * cells + s]: 0 = skip, k + 1 = item j in knapsack k.
  std::vector<std::uint8_t> choice(n * cells, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto w = static_cast<std::size_t>(as_int(inst.weights[j]));
    const std::int64_t p = as_int(inst.profits[j]);
    std::vector<std::int64_t> next = best;
    for (std::size_t s = 0; s < cells; ++s) {
      for (std::size_t k = 0; k < m; ++k) {
        if ((s / stride[k]) % width[k] < w) continue;
        const std::size_t from = s - w * stride[k];
        if (best[from] == kUnreachable) continue;
        if (best[from] + p > next[s]) {
          next[s] = best[from] + p;
          choice[j * cells + s] = static_cast<std::uint8_t>(k + 1);
        }
      }
    }
    best.swap(next);
  }
  std::size_t state = static_cast<std::size_t>(
      std::max_element(best.begin(), best.end()) - best.begin());
  OracleResult out;
  out.method = OracleMethod::kDp;
  out.states = cells * std::max<std::size_t>(n, 1);
  out.optimum = Rational(best[state]);
  out.witness.assign(n, std::nullopt);
  for (std::size_t j = n; j-- > 0;) {
    const std::uint8_t c = choice[j * cells + state];
    if (c == 0) continue;
    const std::size_t k = c - 1U;
    out.witness[j] = k;
    state -= static_cast<std::size_t>(as_int(inst.weights[j])) * stride[k];
  }
  return out;
}

class KnapsackSearch {
 public:
  KnapsackSearch(const KnapsackInstance& inst, std::size_t budget)
      : inst_(inst), budget_(budget), load_(inst.m()), current_(inst.n()) {
    order_.resize(inst.n());
    std::iota(order_.begin(), order_.end(), 0);
    // Zero weights first, then decreasing unit profit.
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const bool za = inst.weights[a].is_zero(), zb = inst.weights[b].is_zero();
      if (za != zb) return za;
      if (za) return false;
      return inst.profits[a] * inst.weights[b] > inst.profits[b] * inst.weights[a];
    });
    best_.witness.assign(inst.n(), std::nullopt);
  }

  OracleResult solve() {
    if (inst_.m() > 0) dfs(0, Rational());
    best_.method = OracleMethod::kExhaustive;
    best_.states = nodes_;
    return best_;
  }

 private:
  Rational fractional_bound(std::size_t pos) const {
    Rational room;
    for (std::size_t k = 0; k < inst_.m(); ++k) room += inst_.capacities[k] - load_[k];
    Rational bound;
    for (; pos < order_.size(); ++pos) {
      const std::size_t j = order_[pos];
      const Rational& w = inst_.weights[j];
      if (w <= room) {
        bound += inst_.profits[j];
        room -= w;
      } else {
        bound += inst_.profits[j] * room / w;
        break;
      }
    }
    return bound;
  }

  void dfs(std::size_t pos, const Rational& value) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("knapsack oracle: search budget of " + std::to_string(budget_) +
                           " nodes exceeded");
    }
    if (value > best_.optimum) {
      best_.optimum = value;
      best_.witness = current_;
    }
    if (pos == order_.size()) return;
    if (value + fractional_bound(pos) <= best_.optimum) return;
    const std::size_t j = order_[pos];
    for (std::size_t k = 0; k < inst_.m(); ++k) {
      if (load_[k] + inst_.weights[j] > inst_.capacities[k]) continue;
      load_[k] += inst_.weights[j];
      current_[j] = k;
      dfs(pos + 1, value + inst_.profits[j]);
      current_[j].reset();
      load_[k] -= inst_.weights[j];
    }
    dfs(pos + 1, value);
  }

  const KnapsackInstance& inst_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<Rational> load_;
  std::vector<std::optional<std::size_t>> current_;
  OracleResult best_;
};

class SchedulingSearch {
 public:
  SchedulingSearch(const SchedulingInstance& inst, std::size_t budget)
      : inst_(inst), budget_(budget), finish_(inst.overheads), current_(inst.n()) {
    const std::size_t n = inst.n(), m = inst.m();
    min_time_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      min_time_[j] = *std::min_element(inst.processing[j].begin(), inst.processing[j].end());
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return min_time_[a] > min_time_[b]; });
    suffix_min_.assign(n + 1, Rational());
    for (std::size_t pos = n; pos-- > 0;) suffix_min_[pos] = suffix_min_[pos + 1] + min_time_[order_[pos]];
    twin_of_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      twin_of_[i] = i;
      for (std::size_t k = 0; k < i; ++k) {
        bool same = true;
        for (std::size_t j = 0; j < n && same; ++j) same = inst.processing[j][i] == inst.processing[j][k];
        if (same) {
          twin_of_[i] = k;
          break;
        }
      }
    }
    // Greedy start: each job to the machine that finishes it first.
    std::vector<Rational> finish = inst.overheads;
    std::vector<std::size_t> greedy(n);
    for (std::size_t j : order_) {
      std::size_t pick = 0;
      for (std::size_t i = 1; i < m; ++i) {
        if (finish[i] + inst.processing[j][i] < finish[pick] + inst.processing[j][pick]) pick = i;
      }
      finish[pick] += inst.processing[j][pick];
      greedy[j] = pick;
    }
    best_value_ = schedule_makespan(inst, greedy);
    best_ = greedy;
  }

  OracleResult solve() {
    Rational base;
    for (const auto& t : inst_.overheads) base = max(base, t);
    dfs(0, base);
    OracleResult out;
    out.optimum = best_value_;
    out.method = OracleMethod::kExhaustive;
    out.states = nodes_;
    for (std::size_t j : best_) out.witness.emplace_back(j);
    return out;
  }

 private:
  void dfs(std::size_t pos, const Rational& makespan) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("scheduling oracle: search budget of " + std::to_string(budget_) +
                           " nodes exceeded");
    }
    if (pos == order_.size()) {
      if (makespan < best_value_) {
        best_value_ = makespan;
        best_ = current_;
      }
      return;
    }
    Rational total = suffix_min_[pos];
    for (const auto& f : finish_) total += f;
    if (makespan >= best_value_ ||
        total >= best_value_ * Rational(static_cast<std::int64_t>(inst_.m()))) {
      return;
    }
    const std::size_t j = order_[pos];
    for (std::size_t i = 0; i < inst_.m(); ++i) {
      // A machine interchangeable with an earlier one at the same finish time
      // leads to a mirror-image subtree.
      bool mirror = false;
      for (std::size_t k = 0; k < i && !mirror; ++k) {
        mirror = twin_of_[i] == twin_of_[k] && finish_[k] == finish_[i];
      }
      if (mirror) continue;
      const Rational next = finish_[i] + inst_.processing[j][i];
      if (next >= best_value_) continue;
      const Rational saved = finish_[i];
      finish_[i] = next;
      current_[j] = i;
      dfs(pos + 1, max(makespan, next));
      finish_[i] = saved;
    }
  }

  const SchedulingInstance& inst_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Rational> finish_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  Rational best_value_;
  std::vector<Rational> min_time_;
  std::vector<std::size_t> order_;
  std::vector<Rational> suffix_min_;
  std::vector<std::size_t> twin_of_;
};

}  // namespace

OracleResult exact_knapsack(const KnapsackInstance& inst, std::size_t budget,
                            KnapsackOracleMode mode) {
  inst.validate();
  const bool integral = all_integral(inst.weights) && all_integral(inst.capacities) &&
                        all_integral(inst.profits);
  if (mode != KnapsackOracleMode::kExhaustive && integral && inst.m() > 0) {
    if (auto cells = dp_cells(inst, budget)) return knapsack_dp(inst, *cells);
  }
  if (mode == KnapsackOracleMode::kDp) {
    throw BudgetExceeded("knapsack oracle: DP needs integral data within the budget");
  }
  return KnapsackSearch(inst, budget).solve();
}

OracleResult exact_scheduling(const SchedulingInstance& inst, std::size_t budget) {
  inst.validate();
  if (inst.n() == 0) {
    OracleResult out;
    for (const auto& t : inst.overheads) out.optimum = max(out.optimum, t);
    return out;
  }
  if (inst.m() == 0) throw std::invalid_argument("scheduling oracle: no machines");
  return SchedulingSearch(inst, budget).solve();
}

OracleResult exact_opt(const Instance& inst, std::size_t budget) {
  if (const auto* k = std::get_if<KnapsackInstance>(&inst)) return exact_knapsack(*k, budget);
  return exact_scheduling(std::get<SchedulingInstance>(inst), budget);
}

Rational optimality_gap(const Rational& z, const Rational& z_star) {
  const Rational denom = max(z, z_star);
  if (denom.is_zero()) return Rational();
  return (z - z_star).abs() / denom;
}

Rational schedule_makespan(const SchedulingInstance& inst,
                           const std::vector<std::size_t>& assignment) {
  std::vector<Rational> finish = inst.overheads;
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    finish[assignment[j]] += inst.processing[j][assignment[j]];
  }
  Rational makespan;
  for (const auto& f : finish) makespan = max(makespan, f);
  return makespan;
}

}  // namespace bnbptas
