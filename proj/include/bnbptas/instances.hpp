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

#ifndef BNBPTAS_INSTANCES_HPP_
#define BNBPTAS_INSTANCES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnbptas/rational.hpp"

namespace bnbptas {

using Metadata = std::map<std::string, std::string>;

// Multi-knapsack data (C, w, p).
struct KnapsackInstance {
  std::vector<Rational> weights;
  std::vector<Rational> profits;
  std::vector<Rational> capacities;
  Metadata meta;

  std::size_t n() const { return weights.size(); }
  std::size_t m() const { return capacities.size(); }

  // Throws InstanceError on length mismatch, non-positive profit, negative
  // weight or negative capacity.
  void validate() const;

  friend bool operator==(const KnapsackInstance&,
                         const KnapsackInstance&) = default;
};

enum class MachineKind { kUnrelated, kUniform, kIdentical };

// Parallel-machine data (P, t). For uniform and identical machines the base
// times p and speeds s are kept next to the expanded matrix P[j][i] = p_j/s_i.
struct SchedulingInstance {
  MachineKind kind = MachineKind::kUnrelated;
  std::vector<std::vector<Rational>> processing;  // n rows, m columns
  std::vector<Rational> overheads;                // length m
  std::vector<Rational> base;                     // uniform/identical only
  std::vector<Rational> speeds;                   // uniform/identical only
  // Spacing of the makespan search grid. Unset means "derive it from the
  // data"; normalization sets it so the scaled root bound lands on 1.
  std::optional<Rational> search_step;
  Metadata meta;

  std::size_t n() const { return processing.size(); }
  std::size_t m() const { return overheads.size(); }

  void validate() const;

  static SchedulingInstance unrelated(std::vector<std::vector<Rational>> p,
                                      std::vector<Rational> t = {});
  static SchedulingInstance uniform(std::vector<Rational> p,
                                    std::vector<Rational> s,
                                    std::vector<Rational> t = {});
  static SchedulingInstance identical(std::vector<Rational> p, std::size_t m,
                                      std::vector<Rational> t = {});

  friend bool operator==(const SchedulingInstance&,
                         const SchedulingInstance&) = default;
};

using Instance = std::variant<KnapsackInstance, SchedulingInstance>;

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GenerateKind {
  kKnapsack,
  kSchedulingUnrelated,
  kSchedulingUniform,
  kSchedulingIdentical,
};

std::string to_string(MachineKind kind);
std::string to_string(GenerateKind kind);
GenerateKind parse_generate_kind(const std::string& text);

// Capacity sampling range for the knapsack generator:
// c_min = min w, c_max = ceil(sum w / n) - c_min, raised to c_min if lower.
std::pair<std::int64_t, std::int64_t> knapsack_capacity_range(
    const std::vector<std::int64_t>& weights);

GenerateKind kind_of(const Instance& instance);

// Deterministic in (kind, n, m, seed). Throws InstanceError for n == 0 or
// m == 0.
Instance generate(GenerateKind kind, std::size_t n, std::size_t m,
                  std::uint64_t seed);
KnapsackInstance generate_knapsack(std::size_t n, std::size_t m,
                                   std::uint64_t seed);
SchedulingInstance generate_scheduling(MachineKind kind, std::size_t n,
                                       std::size_t m, std::uint64_t seed);

nlohmann::json to_json(const Instance& instance);
// Validates after parsing; throws InstanceError with a path-like message.
Instance instance_from_json(const nlohmann::json& doc);

std::string dump_instance(const Instance& instance);
void write_instance(const std::string& path, const Instance& instance);
Instance read_instance(const std::string& path);

}  // namespace bnbptas

#endif  // BNBPTAS_INSTANCES_HPP_
