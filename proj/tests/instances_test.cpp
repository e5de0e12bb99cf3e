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

#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "bnbptas/instances.hpp"

namespace bnbptas {
namespace {

TEST(Generator, CapacityRangeFormula) {
  const auto [lo, hi] = knapsack_capacity_range({2, 3, 4, 5, 6});
  EXPECT_EQ(lo, 2);
  EXPECT_EQ(hi, 2);
  const auto [lo2, hi2] = knapsack_capacity_range({10, 90, 50});
  EXPECT_EQ(lo2, 10);
  EXPECT_EQ(hi2, 40);  // ceil(150/3) - 10
}

TEST(Generator, KnapsackItemsAllFitSomewhere) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto inst = generate_knapsack(1 + seed % 12, 1 + seed % 5, seed);
    ASSERT_NO_THROW(inst.validate());
    ASSERT_EQ(inst.n(), 1 + seed % 12);
    ASSERT_EQ(inst.m(), 1 + seed % 5);
    Rational biggest;
    for (const auto& c : inst.capacities) biggest = max(biggest, c);
    for (const auto& w : inst.weights) {
      EXPECT_LE(w, biggest) << "seed " << seed;
      EXPECT_GE(w, Rational(1));
      EXPECT_LE(w, Rational(100));
    }
  }
}

TEST(Generator, SingleJobSingleMachineInRange) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate_scheduling(MachineKind::kUnrelated, 1, 1, seed);
    ASSERT_EQ(inst.n(), 1u);
    EXPECT_GE(inst.processing[0][0], Rational(1));
    EXPECT_LE(inst.processing[0][0], Rational(100));
    EXPECT_TRUE(inst.processing[0][0].is_integer());
    EXPECT_EQ(inst.overheads, std::vector<Rational>{Rational(0)});
  }
}

TEST(Generator, SameSeedSameBytes) {
  for (auto kind : {GenerateKind::kKnapsack, GenerateKind::kSchedulingUnrelated,
                    GenerateKind::kSchedulingUniform, GenerateKind::kSchedulingIdentical}) {
    EXPECT_EQ(dump_instance(generate(kind, 7, 3, 42)), dump_instance(generate(kind, 7, 3, 42)));
    EXPECT_NE(dump_instance(generate(kind, 7, 3, 42)), dump_instance(generate(kind, 7, 3, 43)));
  }
}

TEST(Generator, UniformAndIdenticalStructure) {
  const auto uni = generate_scheduling(MachineKind::kUniform, 6, 3, 9);
  for (std::size_t j = 0; j < uni.n(); ++j) {
    for (std::size_t i = 0; i < uni.m(); ++i) EXPECT_EQ(uni.processing[j][i], uni.base[j] / uni.speeds[i]);
  }
  for (const auto& s : uni.speeds) {
    EXPECT_GE(s, Rational(1));
    EXPECT_LE(s, Rational(5));
  }
  const auto id = generate_scheduling(MachineKind::kIdentical, 6, 3, 9);
  for (const auto& s : id.speeds) EXPECT_EQ(s, Rational(1));
}

TEST(Generator, RejectsEmptyDimensions) {
  EXPECT_THROW(generate(GenerateKind::kKnapsack, 0, 2, 1), InstanceError);
  EXPECT_THROW(generate(GenerateKind::kSchedulingUnrelated, 3, 0, 1), InstanceError);
}

TEST(InstanceJson, RoundTripsEveryKind) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (auto kind : {GenerateKind::kKnapsack, GenerateKind::kSchedulingUnrelated,
                      GenerateKind::kSchedulingUniform, GenerateKind::kSchedulingIdentical}) {
      const Instance inst = generate(kind, 5, 2, seed);
      EXPECT_EQ(instance_from_json(to_json(inst)), inst);
    }
  }
}

TEST(InstanceJson, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "bnbptas_roundtrip.json";
  const Instance inst = generate(GenerateKind::kSchedulingUniform, 4, 2, 5);
  write_instance(path.string(), inst);
  EXPECT_EQ(read_instance(path.string()), inst);
  std::filesystem::remove(path);
  EXPECT_THROW(read_instance(path.string()), InstanceError);
}

TEST(InstanceJson, LengthMismatchIsStructuredError) {
  auto doc = to_json(generate(GenerateKind::kKnapsack, 4, 2, 1));
  doc["weights"].erase(doc["weights"].size() - 1);
  try {
    instance_from_json(doc);
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_NE(std::string(e.what()).find("weights"), std::string::npos) << e.what();
  }
}

TEST(InstanceJson, UniformInconsistentWithSpeedsRejected) {
  auto doc = to_json(generate(GenerateKind::kSchedulingUniform, 3, 2, 1));
  doc["processing"][1][0] = "999/1";
  EXPECT_THROW(instance_from_json(doc), InstanceError);
}

TEST(InstanceJson, MalformedValuesRejected) {
  auto doc = to_json(generate(GenerateKind::kKnapsack, 3, 1, 1));
  doc["profits"][0] = "abc";
  EXPECT_THROW(instance_from_json(doc), InstanceError);
  doc = to_json(generate(GenerateKind::kKnapsack, 3, 1, 1));
  doc["profits"][0] = "0/1";
  EXPECT_THROW(instance_from_json(doc), InstanceError);
  doc = to_json(generate(GenerateKind::kSchedulingUnrelated, 3, 2, 1));
  doc["processing"][0][1] = "-1/1";
  EXPECT_THROW(instance_from_json(doc), InstanceError);
  doc["kind"] = "nonsense";
  EXPECT_THROW(instance_from_json(doc), InstanceError);
}

TEST(InstanceJson, IdenticalNeedsUnitSpeeds) {
  auto inst = SchedulingInstance::identical({Rational(4)}, 2);
  EXPECT_NO_THROW(inst.validate());
  inst.speeds[1] = Rational(2);
  inst.processing[0][1] = Rational(2);
  EXPECT_THROW(inst.validate(), InstanceError);
}

}  // namespace
}  // namespace bnbptas
