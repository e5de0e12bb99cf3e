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

#ifndef BNBPTAS_ORACLE_HPP_
#define BNBPTAS_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnbptas/instances.hpp"
#include "bnbptas/rational.hpp"

namespace bnbptas {

enum class OracleMethod { kDp, kExhaustive };
std::string to_string(OracleMethod method);

struct OracleResult {
  Rational optimum;
  // Knapsack: item -> knapsack. Scheduling: job -> machine (always set).
  std::vector<std::optional<std::size_t>> witness;
  OracleMethod method = OracleMethod::kExhaustive;
  std::size_t states = 0;  // DP cells or search nodes used
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultOracleBudget = 20'000'000;

enum class KnapsackOracleMode { kAuto, kDp, kExhaustive };

// Auto uses the capacity DP when all weights and capacities are integers and
// the product of (C_i + 1) fits the budget, else exhaustive search over the
// (m+1)^n assignments with a fractional-bound cutoff. Budget counts DP cells
// or search nodes; BudgetExceeded when it runs out.
OracleResult exact_knapsack(const KnapsackInstance& inst,
                            std::size_t budget = kDefaultOracleBudget,
                            KnapsackOracleMode mode = KnapsackOracleMode::kAuto);

// Exhaustive search over the m^n assignments (bounded by the current best
// makespan, interchangeable machines tried once).
OracleResult exact_scheduling(const SchedulingInstance& inst,
                              std::size_t budget = kDefaultOracleBudget);

OracleResult exact_opt(const Instance& inst, std::size_t budget = kDefaultOracleBudget);

// |z - z*| / max(z, z*); 0 when both are zero.
Rational optimality_gap(const Rational& z, const Rational& z_star);

// Makespan of a complete assignment, overheads included.
Rational schedule_makespan(const SchedulingInstance& inst,
                           const std::vector<std::size_t>& assignment);

}  // namespace bnbptas

#endif  // BNBPTAS_ORACLE_HPP_
