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

#include "phg/stats.h"

#include <vector>

#include <gtest/gtest.h>

namespace phg {
namespace {

TEST(ChiSquareTest, UniformFitMatchesReference) {
  const std::vector<std::uint64_t> counts = {10, 20, 30};
  const auto r = chi_square_uniform(counts);
  EXPECT_DOUBLE_EQ(r.statistic, 10.0);
  EXPECT_EQ(r.dof, 2.0);
  EXPECT_NEAR(r.p_value, 0.006737946999085468, 1e-14);
}

TEST(ChiSquareTest, TwoSampleMatchesReference) {
  const std::vector<std::uint64_t> a = {10, 20, 5, 0};
  const std::vector<std::uint64_t> b = {20, 10, 5, 0};
  const auto r = chi_square_two_sample(a, b);
  EXPECT_NEAR(r.statistic, 6.666666666666667, 1e-12);
  EXPECT_EQ(r.dof, 2.0);
  EXPECT_NEAR(r.p_value, 0.035673993347252395, 1e-12);
}

TEST(ChiSquareTest, PerfectFit) {
  const std::vector<std::uint64_t> counts = {5, 5, 5, 5};
  EXPECT_EQ(chi_square_uniform(counts).statistic, 0.0);
  EXPECT_EQ(chi_square_uniform(counts).p_value, 1.0);
}

TEST(PercentileTest, NearestRank) {
  const std::vector<double> v = {5, 1, 4, 2, 3, 6, 7, 8, 9, 10};
  EXPECT_EQ(percentile(v, 0.9), 9.0);
  EXPECT_EQ(percentile(v, 1.0), 10.0);
  EXPECT_EQ(percentile(v, 0.1), 1.0);
  EXPECT_EQ(percentile({3.5}, 0.9), 3.5);
}

TEST(OrderFreeMeanTest, IndependentOfOrder) {
  const std::vector<double> a = {1e16, 1.0, -1e16, 3.0, 0.5};
  const std::vector<double> b = {3.0, -1e16, 0.5, 1.0, 1e16};
  EXPECT_EQ(order_free_mean(a), order_free_mean(b));
}

}  // namespace
}  // namespace phg
