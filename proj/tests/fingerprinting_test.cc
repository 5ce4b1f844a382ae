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

#include <gtest/gtest.h>

#include "phg/attack.h"
#include "phg/game.h"
#include "phg/random.h"

namespace phg {
namespace {

TEST(FingerprintingLemmaTest, SampleMeanNearOneSixth) {
  Rng rng(1);
  const auto est = fp_lemma_estimate(lemma_function("mean"), 10, 200000, rng);
  EXPECT_NEAR(est.mean, 1.0 / 6.0, 4 * est.standard_error);
}

// f = 1/2 at m = 1: E|1/2 - x| = 1/2 and the correlation term has mean 0.
TEST(FingerprintingLemmaTest, ConstantHalfSingleBit) {
  Rng rng(2);
  const auto est = fp_lemma_estimate(lemma_function("half"), 1, 200000, rng);
  EXPECT_NEAR(est.mean, 0.5, 4 * est.standard_error);
}

TEST(FingerprintingLemmaTest, EveryFunctionMeetsBound) {
  for (const char* name : {"mean", "half", "median", "noisy_mean"}) {
    for (std::size_t m : {1u, 7u, 30u}) {
      Rng rng(3);
      const auto est = fp_lemma_estimate(lemma_function(name), m, 20000, rng);
      EXPECT_GE(est.mean, kFingerprintingBound - 3 * est.standard_error) << name << " m=" << m;
    }
  }
}

TEST(FingerprintingLemmaTest, RejectsFewTrials) {
  Rng rng(4);
  EXPECT_THROW(fp_lemma_estimate(lemma_function("mean"), 3, 999, rng), std::invalid_argument);
  EXPECT_THROW(lemma_function("nope"), std::invalid_argument);
}

TEST(FingerprintingLemmaTest, MedianOfBits) {
  Rng rng(5);
  const auto f = lemma_function("median");
  EXPECT_EQ(f(std::vector<std::uint8_t>{1, 0, 1}, rng), 1.0);
  EXPECT_EQ(f(std::vector<std::uint8_t>{1, 0}, rng), 0.5);
  EXPECT_EQ(f(std::vector<std::uint8_t>{0, 0, 1, 1, 1, 1}, rng), 1.0);
}

}  // namespace
}  // namespace phg
