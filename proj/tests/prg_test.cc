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

#include "phg/prg.h"

#include <cmath>

#include <gtest/gtest.h>

#include "phg/random.h"

namespace phg {
namespace {

TEST(ChaChaExpanderTest, KnownAnswer) {
  const auto seed = BitString::from_uint(0xBEEF, 16);
  EXPECT_EQ(prg_expand(seed, 64).to_uint(), 0x441c706e3e5c00fcULL);
  const ChaChaExpander g;
  EXPECT_TRUE(g.bit(seed, 1040));
  EXPECT_FALSE(g.bit(seed, 1042));
}

TEST(ChaChaExpanderTest, DeterministicAndPrefixConsistent) {
  Rng rng(1);
  const ChaChaExpander g;
  for (int t = 0; t < 10; ++t) {
    const auto seed = BitString::random(16 + 8 * t, rng);
    const auto long_out = g.expand(seed, 1500);
    EXPECT_EQ(g.expand(seed, 1500), long_out);
    EXPECT_EQ(g.expand(seed, 301), long_out.slice(0, 301));
    for (std::size_t i : {0u, 7u, 511u, 512u, 1023u, 1499u}) EXPECT_EQ(g.bit(seed, i), long_out.get(i));
  }
}

TEST(ChaChaExpanderTest, SeedWidthIsPartOfKey) {
  const ChaChaExpander g;
  EXPECT_NE(g.expand(BitString::from_uint(1, 16), 128), g.expand(BitString::from_uint(1, 24), 128));
}

TEST(ChaChaExpanderTest, Balanced) {
  const auto out = prg_expand(BitString::from_uint(12345, 32), 200000);
  const double frac = static_cast<double>(out.popcount()) / out.size();
  EXPECT_NEAR(frac, 0.5, 4 * 0.5 / std::sqrt(200000.0));
}

TEST(ChaChaExpanderTest, Avalanche) {
  Rng rng(2);
  double total = 0;
  const int reps = 64;
  for (int r = 0; r < reps; ++r) {
    auto seed = BitString::random(32, rng);
    const auto a = prg_expand(seed, 1024);
    seed.flip(r % 32);
    total += static_cast<double>(hamming_distance(a, prg_expand(seed, 1024))) / 1024;
  }
  EXPECT_NEAR(total / reps, 0.5, 0.02);
}

TEST(ChaChaExpanderTest, RejectsShortSeeds) {
  EXPECT_THROW(prg_expand(BitString::from_uint(1, 15), 8), std::invalid_argument);
}

TEST(TableExpanderTest, AssignedAndMemoisedRows) {
  TableExpander g(40, 7);
  const auto s = BitString::from_uint(3, 16);
  const auto row = BitString::from_uint(0xABCDEF, 40);
  g.assign(s, row);
  EXPECT_EQ(g.expand(s, 40), row);
  EXPECT_EQ(g.expand(s, 8), row.slice(0, 8));
  const auto other = BitString::from_uint(4, 16);
  EXPECT_EQ(g.expand(other, 40), g.expand(other, 40));
  EXPECT_TRUE(g.bit(s, 39) == row.get(39));
  EXPECT_THROW(g.expand(s, 41), std::invalid_argument);
  EXPECT_THROW(g.assign(s, BitString(3)), std::invalid_argument);
}

}  // namespace
}  // namespace phg
