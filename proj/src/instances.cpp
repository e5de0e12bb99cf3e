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

#include "bnbptas/instances.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace bnbptas {

namespace {

constexpr int kFormatVersion = 1;
constexpr int kCapacityRetries = 100;

// All generators draw from the 64-bit Mersenne twister seeded with the
// caller's seed; values come from std::uniform_int_distribution.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw InstanceError(message);
}

std::string json_path(const std::string& key, std::size_t index) {
  return key + "[" + std::to_string(index) + "]";
}

Rational parse_rational(const nlohmann::json& value, const std::string& where) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  } catch (const std::exception& e) {
    throw InstanceError(where + ": " + e.what());
  }
  throw InstanceError(where + ": expected a \"num/den\" string");
}

std::vector<Rational> parse_vector(const nlohmann::json& doc, const std::string& key) {
  require(doc.contains(key), "missing field '" + key + "'");
  const auto& array = doc.at(key);
  require(array.is_array(), "field '" + key + "' must be an array");
  std::vector<Rational> out;
  out.reserve(array.size());
  for (std::size_t i = 0; i < array.size(); ++i) {
    out.push_back(parse_rational(array[i], json_path(key, i)));
  }
  return out;
}

nlohmann::json to_strings(const std::vector<Rational>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

std::size_t count_field(const nlohmann::json& doc, const std::string& key) {
  require(doc.contains(key) && doc.at(key).is_number_unsigned(),
          "field '" + key + "' must be a non-negative integer");
  return doc.at(key).get<std::size_t>();
}

Metadata parse_meta(const nlohmann::json& doc) {
  Metadata meta;
  if (!doc.contains("meta")) return meta;
  require(doc.at("meta").is_object(), "field 'meta' must be an object");
  for (const auto& [key, value] : doc.at("meta").items()) {
    require(value.is_string(), "meta." + key + " must be a string");
    meta[key] = value.get<std::string>();
  }
  return meta;
}

}  // namespace

void KnapsackInstance::validate() const {
  require(weights.size() == profits.size(),
          "knapsack: |w| = " + std::to_string(weights.size()) + " but |p| = " +
              std::to_string(profits.size()));
  for (std::size_t j = 0; j < weights.size(); ++j) {
    require(weights[j].sign() >= 0, "knapsack: " + json_path("weights", j) + " is negative");
    require(profits[j].sign() > 0, "knapsack: " + json_path("profits", j) + " is not positive");
  }
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    require(capacities[i].sign() >= 0,
            "knapsack: " + json_path("capacities", i) + " is negative");
  }
}

void SchedulingInstance::validate() const {
  const std::size_t machines = overheads.size();
  for (std::size_t j = 0; j < processing.size(); ++j) {
    require(processing[j].size() == machines,
            "scheduling: processing row " + std::to_string(j) + " has " +
                std::to_string(processing[j].size()) + " entries, expected " +
                std::to_string(machines));
    for (std::size_t i = 0; i < machines; ++i) {
      require(processing[j][i].sign() > 0, "scheduling: processing[" + std::to_string(j) +
                                               "][" + std::to_string(i) + "] is not positive");
    }
  }
  for (std::size_t i = 0; i < machines; ++i) {
    require(overheads[i].sign() >= 0, "scheduling: " + json_path("overheads", i) + " is negative");
  }
  if (search_step) require(search_step->sign() > 0, "scheduling: search_step must be positive");
  if (kind == MachineKind::kUnrelated) {
    require(base.empty() && speeds.empty(),
            "scheduling: unrelated instances carry no base times or speeds");
    return;
  }
  require(base.size() == processing.size(),
          "scheduling: |base| = " + std::to_string(base.size()) + " but n = " +
              std::to_string(processing.size()));
  require(speeds.size() == machines, "scheduling: |speeds| = " + std::to_string(speeds.size()) +
                                         " but m = " + std::to_string(machines));
  for (std::size_t i = 0; i < machines; ++i) {
    require(speeds[i].sign() > 0, "scheduling: " + json_path("speeds", i) + " is not positive");
    if (kind == MachineKind::kIdentical) {
      require(speeds[i] == Rational(1), "scheduling: identical machines need unit speeds");
    }
  }
  for (std::size_t j = 0; j < processing.size(); ++j) {
    for (std::size_t i = 0; i < machines; ++i) {
      require(processing[j][i] == base[j] / speeds[i],
              "scheduling: processing[" + std::to_string(j) + "][" + std::to_string(i) +
                  "] differs from base/speed");
    }
  }
}

SchedulingInstance SchedulingInstance::unrelated(std::vector<std::vector<Rational>> p,
                                                 std::vector<Rational> t) {
  SchedulingInstance inst;
  inst.kind = MachineKind::kUnrelated;
  const std::size_t m = p.empty() ? t.size() : p.front().size();
  if (t.empty()) t.assign(m, Rational(0));
  inst.processing = std::move(p);
  inst.overheads = std::move(t);
  return inst;
}

SchedulingInstance SchedulingInstance::uniform(std::vector<Rational> p, std::vector<Rational> s,
                                               std::vector<Rational> t) {
  SchedulingInstance inst;
  inst.kind = MachineKind::kUniform;
  if (t.empty()) t.assign(s.size(), Rational(0));
  inst.processing.assign(p.size(), std::vector<Rational>(s.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t i = 0; i < s.size(); ++i) inst.processing[j][i] = p[j] / s[i];
  }
  inst.base = std::move(p);
  inst.speeds = std::move(s);
  inst.overheads = std::move(t);
  return inst;
}

SchedulingInstance SchedulingInstance::identical(std::vector<Rational> p, std::size_t m,
                                                 std::vector<Rational> t) {
  SchedulingInstance inst = uniform(std::move(p), std::vector<Rational>(m, Rational(1)),
                                    std::move(t));
  inst.kind = MachineKind::kIdentical;
  return inst;
}

std::string to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::kUnrelated:
      return "unrelated";
    case MachineKind::kUniform:
      return "uniform";
    case MachineKind::kIdentical:
      return "identical";
  }
  return "unknown";
}

std::string to_string(GenerateKind kind) {
  switch (kind) {
    case GenerateKind::kKnapsack:
      return "knapsack";
    case GenerateKind::kSchedulingUnrelated:
      return "scheduling-unrelated";
    case GenerateKind::kSchedulingUniform:
      return "scheduling-uniform";
    case GenerateKind::kSchedulingIdentical:
      return "scheduling-identical";
  }
  return "unknown";
}

GenerateKind parse_generate_kind(const std::string& text) {
  for (auto kind : {GenerateKind::kKnapsack, GenerateKind::kSchedulingUnrelated,
                    GenerateKind::kSchedulingUniform, GenerateKind::kSchedulingIdentical}) {
    if (to_string(kind) == text) return kind;
  }
  throw InstanceError("unknown instance kind '" + text + "'");
}

std::pair<std::int64_t, std::int64_t> knapsack_capacity_range(
    const std::vector<std::int64_t>& weights) {
  require(!weights.empty(), "capacity range needs at least one weight");
  const std::int64_t c_min = *std::min_element(weights.begin(), weights.end());
  const std::int64_t total = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  const auto n = static_cast<std::int64_t>(weights.size());
  std::int64_t c_max = (total + n - 1) / n - c_min;
  if (c_max < c_min) c_max = c_min;
  return {c_min, c_max};
}

KnapsackInstance generate_knapsack(std::size_t n, std::size_t m, std::uint64_t seed) {
  require(n >= 1 && m >= 1, "generate: n and m must be at least 1");
  Sampler rng(seed);
  std::vector<std::int64_t> w(n), p(n);
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = rng.uniform(1, 100);
    p[j] = rng.uniform(1, 100);
  }
  const auto [c_min, c_max] = knapsack_capacity_range(w);
  const std::int64_t w_max = *std::max_element(w.begin(), w.end());
  std::vector<std::int64_t> c(m);
  int attempts = 0;
  bool clamped = false;
  while (true) {
    for (auto& cap : c) cap = rng.uniform(c_min, c_max);
    ++attempts;
    if (*std::max_element(c.begin(), c.end()) >= w_max) break;
    if (attempts == kCapacityRetries) {
      *std::max_element(c.begin(), c.end()) = w_max;
      clamped = true;
      break;
    }
  }
  KnapsackInstance inst;
  for (std::size_t j = 0; j < n; ++j) {
    inst.weights.emplace_back(w[j]);
    inst.profits.emplace_back(p[j]);
  }
  for (auto cap : c) inst.capacities.emplace_back(cap);
  inst.meta = {{"generator", "mt19937_64"},
               {"seed", std::to_string(seed)},
               {"capacity_range", std::to_string(c_min) + ".." + std::to_string(c_max)},
               {"capacity_attempts", std::to_string(attempts)},
               {"capacity_clamped", clamped ? "true" : "false"}};
  return inst;
}

SchedulingInstance generate_scheduling(MachineKind kind, std::size_t n, std::size_t m,
                                       std::uint64_t seed) {
  require(n >= 1 && m >= 1, "generate: n and m must be at least 1");
  Sampler rng(seed);
  SchedulingInstance inst;
  if (kind == MachineKind::kUnrelated) {
    std::vector<std::vector<Rational>> p(n, std::vector<Rational>(m));
    for (auto& row : p) {
      for (auto& v : row) v = Rational(rng.uniform(1, 100));
    }
    inst = SchedulingInstance::unrelated(std::move(p));
  } else {
    std::vector<Rational> p(n);
    for (auto& v : p) v = Rational(rng.uniform(1, 100));
    if (kind == MachineKind::kUniform) {
      std::vector<Rational> s(m);
      for (auto& v : s) v = Rational(rng.uniform(1, 5));
      inst = SchedulingInstance::uniform(std::move(p), std::move(s));
      inst.meta["speed_range"] = "1..5";
    } else {
      inst = SchedulingInstance::identical(std::move(p), m);
    }
  }
  inst.meta["generator"] = "mt19937_64";
  inst.meta["seed"] = std::to_string(seed);
  return inst;
}

GenerateKind kind_of(const Instance& inst) {
  if (std::holds_alternative<KnapsackInstance>(inst)) return GenerateKind::kKnapsack;
  switch (std::get<SchedulingInstance>(inst).kind) {
    case MachineKind::kUniform:
      return GenerateKind::kSchedulingUniform;
    case MachineKind::kIdentical:
      return GenerateKind::kSchedulingIdentical;
    case MachineKind::kUnrelated:
      break;
  }
  return GenerateKind::kSchedulingUnrelated;
}

Instance generate(GenerateKind kind, std::size_t n, std::size_t m, std::uint64_t seed) {
  switch (kind) {
    case GenerateKind::kKnapsack:
      return generate_knapsack(n, m, seed);
    case GenerateKind::kSchedulingUnrelated:
      return generate_scheduling(MachineKind::kUnrelated, n, m, seed);
    case GenerateKind::kSchedulingUniform:
      return generate_scheduling(MachineKind::kUniform, n, m, seed);
    case GenerateKind::kSchedulingIdentical:
      return generate_scheduling(MachineKind::kIdentical, n, m, seed);
  }
  throw InstanceError("generate: unknown kind");
}

nlohmann::json to_json(const Instance& instance) {
  nlohmann::json doc;
  doc["format"] = "bnbptas-instance";
  doc["version"] = kFormatVersion;
  if (const auto* k = std::get_if<KnapsackInstance>(&instance)) {
    doc["kind"] = "knapsack";
    doc["n"] = k->n();
    doc["m"] = k->m();
    doc["weights"] = to_strings(k->weights);
    doc["profits"] = to_strings(k->profits);
    doc["capacities"] = to_strings(k->capacities);
    doc["meta"] = k->meta;
    return doc;
  }
  const auto& s = std::get<SchedulingInstance>(instance);
  doc["kind"] = "scheduling-" + to_string(s.kind);
  doc["n"] = s.n();
  doc["m"] = s.m();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : s.processing) rows.push_back(to_strings(row));
  doc["processing"] = rows;
  doc["overheads"] = to_strings(s.overheads);
  if (s.kind != MachineKind::kUnrelated) {
    doc["base"] = to_strings(s.base);
    doc["speeds"] = to_strings(s.speeds);
  }
  if (s.search_step) doc["search_step"] = s.search_step->str();
  doc["meta"] = s.meta;
  return doc;
}

Instance instance_from_json(const nlohmann::json& doc) {
  require(doc.is_object(), "instance document must be a JSON object");
  require(doc.contains("kind") && doc.at("kind").is_string(), "missing string field 'kind'");
  if (doc.contains("version")) {
    require(doc.at("version") == kFormatVersion, "unsupported instance format version");
  }
  const GenerateKind kind = parse_generate_kind(doc.at("kind").get<std::string>());
  const std::size_t n = count_field(doc, "n");
  const std::size_t m = count_field(doc, "m");
  if (kind == GenerateKind::kKnapsack) {
    KnapsackInstance inst;
    inst.weights = parse_vector(doc, "weights");
    inst.profits = parse_vector(doc, "profits");
    inst.capacities = parse_vector(doc, "capacities");
    inst.meta = parse_meta(doc);
    require(inst.weights.size() == n, "|weights| = " + std::to_string(inst.weights.size()) +
                                          " but n = " + std::to_string(n));
    require(inst.capacities.size() == m, "|capacities| = " +
                                             std::to_string(inst.capacities.size()) +
                                             " but m = " + std::to_string(m));
    inst.validate();
    return inst;
  }
  SchedulingInstance inst;
  inst.kind = kind == GenerateKind::kSchedulingUnrelated ? MachineKind::kUnrelated
              : kind == GenerateKind::kSchedulingUniform ? MachineKind::kUniform
                                                         : MachineKind::kIdentical;
  require(doc.contains("processing") && doc.at("processing").is_array(),
          "missing array field 'processing'");
  const auto& rows = doc.at("processing");
  for (std::size_t j = 0; j < rows.size(); ++j) {
    require(rows[j].is_array(), json_path("processing", j) + " must be an array");
    std::vector<Rational> row;
    for (std::size_t i = 0; i < rows[j].size(); ++i) {
      row.push_back(parse_rational(rows[j][i], json_path(json_path("processing", j), i)));
    }
    inst.processing.push_back(std::move(row));
  }
  inst.overheads = parse_vector(doc, "overheads");
  if (inst.kind != MachineKind::kUnrelated) {
    inst.base = parse_vector(doc, "base");
    inst.speeds = parse_vector(doc, "speeds");
  }
  if (doc.contains("search_step")) inst.search_step = parse_rational(doc.at("search_step"), "search_step");
  inst.meta = parse_meta(doc);
  require(inst.processing.size() == n, "|processing| = " + std::to_string(inst.processing.size()) +
                                           " but n = " + std::to_string(n));
  require(inst.overheads.size() == m, "|overheads| = " + std::to_string(inst.overheads.size()) +
                                          " but m = " + std::to_string(m));
  inst.validate();
  return inst;
}

std::string dump_instance(const Instance& instance) { return to_json(instance).dump(2) + "\n"; }

void write_instance(const std::string& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot open '" + path + "' for writing");
  out << dump_instance(instance);
  if (!out) throw InstanceError("failed writing '" + path + "'");
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(path + ": malformed JSON: " + e.what());
  }
  return instance_from_json(doc);
}

}  // namespace bnbptas
