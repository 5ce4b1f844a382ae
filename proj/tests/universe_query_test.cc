//
// Copyright 2026 The phgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cmath>
#include <unordered_set>

#include <gtest/gtest.h>

#include "phg/errors.h"
#include "phg/query.h"
#include "phg/random.h"
#include "phg/universe.h"

namespace phg {
namespace {

TEST(PopulationTest, SampleDatasetIsReproducible) {
  const auto pop = Population::uniform_index(1000);
  Rng a(9), b(9);
  const Dataset x = sample_dataset(pop, 50, a);
  const Dataset y = sample_dataset(pop, 50, b);
  ASSERT_EQ(x.size(), 50u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(index_of(x[i]), index_of(y[i]));
    EXPECT_TRUE(pop.contains(x[i]));
  }
}

TEST(PopulationTest, PairsShareIndexDrawsWithIndexPopulation) {
  Rng tags_rng(1);
  auto tags = std::make_shared<std::vector<BitString>>();
  for (int i = 0; i < 64; ++i) tags->push_back(BitString::random(20, tags_rng));
  const auto pairs = Population::uniform_pairs(tags);
  const auto index = Population::uniform_index(64);
  Rng a(2), b(2);
  const Dataset x = sample_dataset(pairs, 30, a);
  const Dataset y = sample_dataset(index, 30, b);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_EQ(index_of(x[i]), index_of(y[i]));
    EXPECT_EQ(std::get<PairPoint>(x[i]).tag, (*tags)[index_of(x[i])]);
  }
}

TEST(PopulationTest, ErrorPaths) {
  EXPECT_THROW(Population::uniform_index(0), std::invalid_argument);
  EXPECT_THROW(Population::uniform_bits(0), std::invalid_argument);
  EXPECT_THROW(index_of(BitsPoint{BitString::from_uint(1, 3)}), DomainError);
  EXPECT_EQ(Population::uniform_bits(5).support_size(), 32u);
}

TEST(QueryTest, ConstantMeansAreTheConstant) {
  const auto q = Query::constant(-0.25);
  Rng rng(3);
  for (const auto& pop : {Population::uniform_index(10), Population::uniform_bits(4)}) {
    const Dataset X = sample_dataset(pop, 7, rng);
    EXPECT_EQ(query_mean_sample(q, X), -0.25);
    EXPECT_EQ(query_mean_population(q, pop), -0.25);
    EXPECT_EQ(phg_gap(q, X, pop).gap, 0.0);
  }
  EXPECT_THROW(Query::constant(1.5), std::invalid_argument);
}

TEST(QueryTest, MembershipPopulationMeanClosedForm) {
  for (std::size_t d : {3u, 8u, 25u}) {
    std::unordered_set<BitString> members;
    for (std::uint64_t v = 0; v < 5; ++v) members.insert(BitString::from_uint(v * 3, d));
    const auto q = Query::membership(members, d);
    const double expected = -1.0 + 2.0 * 5.0 / std::ldexp(1.0, static_cast<int>(d));
    EXPECT_EQ(query_mean_population(q, Population::uniform_bits(d)), expected);
  }
}

TEST(QueryTest, MembershipGapOfDistinctSample) {
  const std::size_t n = 32, d = 25;
  Rng rng(4);
  std::unordered_set<BitString> members;
  Dataset X;
  while (X.size() < n) {
    auto b = BitString::random(d, rng);
    if (members.insert(b).second) X.push_back(BitsPoint{b});
  }
  const auto q = Query::membership(members, d);
  const auto gap = phg_gap(q, X, Population::uniform_bits(d));
  EXPECT_EQ(gap.sample_mean, 1.0);
  EXPECT_EQ(gap.gap, 1.9999980926513672);
}

TEST(QueryTest, TableReadsIndexAndCountsEvaluations) {
  const auto q = Query::table({0.0, 0.5, -1.0});
  EXPECT_EQ(q.evaluate(IndexPoint{1}), 0.5);
  EXPECT_EQ(q.evaluate(IndexPoint{2}), -1.0);
  EXPECT_EQ(q.value(IndexPoint{0}), 0.0);
  EXPECT_EQ(q.evaluations(), 2u);
  EXPECT_THROW(q.value(IndexPoint{3}), DomainError);
  EXPECT_THROW(q.value(BitsPoint{BitString::from_uint(0, 2)}), DomainError);
  EXPECT_NEAR(query_mean_population(q, Population::uniform_index(3)), -0.5 / 3.0, 1e-15);
  EXPECT_THROW(query_mean_population(q, Population::uniform_index(4)), DomainError);
}

TEST(QueryTest, GapBoundedByTwo) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> t(50);
    for (auto& v : t) v = 2.0 * rng.uniform01() - 1.0;
    const auto q = Query::table(t);
    const auto pop = Population::uniform_index(50);
    const Dataset X = sample_dataset(pop, 5, rng);
    EXPECT_LE(std::abs(phg_gap(q, X, pop).gap), 2.0);
  }
}

}  // namespace
}  // namespace phg
