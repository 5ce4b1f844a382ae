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

#include "phg/composition.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "phg/errors.h"
#include "phg/prg.h"
#include "phg/random.h"

namespace phg {
namespace {

std::vector<BitString> elems(std::initializer_list<std::uint64_t> values, std::size_t d) {
  std::vector<BitString> out;
  for (auto v : values) out.push_back(BitString::from_uint(v, d));
  return out;
}

std::vector<BitString> distinct_sample(std::size_t n, std::size_t d, Rng& rng) {
  std::vector<BitString> x;
  while (x.size() < n) {
    auto b = BitString::random(d, rng);
    if (std::find(x.begin(), x.end(), b) == x.end()) x.push_back(std::move(b));
  }
  return x;
}

TEST(PermRankTest, FrozenRanks) {
  EXPECT_EQ(perm_rank(elems({2, 1, 3}, 4)).value, 2);
  EXPECT_EQ(perm_rank(elems({3, 2, 1}, 4)).value, 5);
  EXPECT_EQ(perm_rank(elems({1, 2, 3}, 4)).value, 0);
  EXPECT_EQ(perm_rank(elems({5, 9, 1, 7}, 4)).value, 13);
  EXPECT_EQ(perm_rank(elems({5, 9, 1, 7}, 4)).modulus, 24);
  EXPECT_THROW(perm_rank(elems({1, 2, 1}, 4)), std::invalid_argument);
}

TEST(PermRankTest, RanksAreABijection) {
  std::vector<std::uint64_t> p = {0, 1, 2, 3, 4};
  std::vector<int> seen(120, 0);
  do {
    std::vector<BitString> x;
    for (auto v : p) x.push_back(BitString::from_uint(v * 7 + 1, 6));
    ++seen[static_cast<int>(perm_rank(x).value)];
  } while (std::next_permutation(p.begin(), p.end()));
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(CompositionTest, Factorial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(5), 120);
  EXPECT_EQ(factorial(25), BigInt("15511210043330985984000000"));
}

TEST(CompositionTest, DefaultElementBits) {
  EXPECT_EQ(default_element_bits(16), 20u);
  EXPECT_EQ(default_element_bits(32), 25u);
  EXPECT_EQ(default_element_bits(33), 30u);
  EXPECT_EQ(default_element_bits(1), 5u);
}

TEST(BlockCodingTest, RoundTrip) {
  Rng rng(1);
  for (std::size_t d : {1u, 5u, 25u, 64u}) {
    for (std::size_t t : {1u, 3u, 7u}) {
      std::vector<BitString> block;
      for (std::size_t i = 0; i < t; ++i) block.push_back(BitString::random(d, rng));
      EXPECT_EQ(decode_block(encode_block(block, d), t, d), block);
    }
  }
  EXPECT_EQ(encode_block(elems({1, 2}, 4), 4), 18);
  EXPECT_THROW(decode_block(BigInt(256), 2, 4), DecryptionError);
  EXPECT_THROW(decode_block(BigInt(-1), 2, 4), DecryptionError);
}

TEST(EncrypermuteTest, ParamsValidation) {
  EXPECT_NO_THROW((EncrypermuteParams{4, 1, 4, 5}.validate()));
  EXPECT_THROW((EncrypermuteParams{4, 1, 5, 5}.validate()), std::invalid_argument);  // 32 > 24
  EXPECT_THROW((EncrypermuteParams{4, 2, 2, 5}.validate()), std::invalid_argument);  // k + t > n
  EXPECT_THROW((EncrypermuteParams{0, 1, 1, 5}.validate()), std::invalid_argument);
}

TEST(EncrypermuteTest, DecryptInvertsAtRealisticSizes) {
  Rng rng(2);
  for (std::size_t n : {16u, 40u, 64u}) {
    const std::size_t d = default_element_bits(n);
    const auto schedule = CompositionSchedule::make(n, 0.5);
    for (int rep = 0; rep < 5; ++rep) {
      const auto x = distinct_sample(n, d, rng);
      for (const auto& stage : schedule.stages) {
        const BigInt c = encrypermute(x, stage, rng);
        const auto payload = decrypt_round(c, std::span<const BitString>(x).first(stage.k), stage);
        ASSERT_EQ(payload, std::vector<BitString>(x.begin() + stage.k, x.begin() + stage.k + stage.t));
      }
    }
  }
}

// d = 2, k = 3, t = 1, n = 4: every ordering of every distinct dataset.
TEST(EncrypermuteTest, ExhaustiveSmallCase) {
  const EncrypermuteParams p{3, 1, 2, 4};
  Rng rng(3);
  std::vector<int> c_counts(6, 0);
  std::vector<std::uint64_t> order = {0, 1, 2, 3};
  do {
    const auto x = elems({order[0], order[1], order[2], order[3]}, 2);
    const BigInt c = encrypermute(x, p, rng);
    ++c_counts[static_cast<int>(c)];
    EXPECT_EQ(decrypt_round(c, std::span<const BitString>(x).first(3), p)[0], x[3]);
  } while (std::next_permutation(order.begin(), order.end()));
  for (int c : c_counts) EXPECT_EQ(c, 4);
}

TEST(EncrypermuteTest, DuplicateDatasetsStillInRange) {
  const EncrypermuteParams p{3, 1, 2, 4};
  Rng rng(4);
  std::vector<int> counts(6, 0);
  for (int i = 0; i < 6000; ++i) ++counts[static_cast<int>(encrypermute(elems({1, 1, 2, 3}, 2), p, rng))];
  for (int c : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(EncrypermuteTest, UniformityHarness) {
  const EncrypermuteParams p{4, 1, 4, 5};
  Rng rng(5);
  const DatasetSource source = [](Rng& r) {
    std::vector<BitString> x;
    for (int i = 0; i < 5; ++i) x.push_back(BitString::random(4, r));
    return x;
  };
  const auto report = encrypermute_uniformity_test(p, source, 4800, rng);
  ASSERT_EQ(report.counts.size(), 24u);
  EXPECT_EQ(std::accumulate(report.counts.begin(), report.counts.end(), std::uint64_t{0}), 4800u);
  EXPECT_GT(report.fit.p_value, 1e-4);
  const auto a = elems({1, 2, 3, 4, 5}, 4);
  const auto b = elems({15, 0, 7, 8, 9}, 4);
  EXPECT_GT(encrypermute_two_sample_test(p, a, b, 4800, rng).p_value, 1e-4);
}

TEST(ScheduleTest, KnownPrefixes) {
  EXPECT_EQ(CompositionSchedule::make(16, 0.5).prefix, 10u);
  EXPECT_EQ(CompositionSchedule::make(32, 0.5).prefix, 11u);
  EXPECT_EQ(CompositionSchedule::make(64, 0.5).prefix, 13u);
}

TEST(ScheduleTest, StagesAreValidAndCoverDataset) {
  for (double alpha : {0.2, 0.5, 0.8}) {
    for (std::size_t n : {8u, 16u, 32u, 64u, 100u, 200u}) {
      const auto s = CompositionSchedule::make(n, alpha);
      if (s.prefix < n) ASSERT_FALSE(s.stages.empty());
      std::size_t covered = s.prefix;
      for (const auto& st : s.stages) {
        EXPECT_EQ(st.k, covered);
        EXPECT_LE(BigInt(1) << (st.d * st.t), factorial(st.k));
        covered += st.t;
      }
      EXPECT_EQ(covered, n);
      const double bound = std::ceil(20.0 / alpha * std::log(static_cast<double>(n))) + 1;
      EXPECT_LE(static_cast<double>(s.stages.size()), bound) << "n=" << n << " alpha=" << alpha;
    }
  }
}

TEST(CompositionAttackTest, ReconstructsDistinctDatasets) {
  Rng rng(6);
  for (std::size_t n : {16u, 32u}) {
    const std::size_t d = default_element_bits(n);
    const auto s = CompositionSchedule::make(n, 0.5);
    const auto x = distinct_sample(n, d, rng);
    std::vector<BigInt> outs;
    for (const auto& st : s.stages) outs.push_back(encrypermute(x, st, rng));
    const auto r = composition_attack(std::span<const BitString>(x).first(s.prefix), outs, s);
    ASSERT_TRUE(r.success) << r.failure;
    EXPECT_EQ(r.dataset, x);
    ASSERT_TRUE(r.membership.has_value());
  }
}

TEST(CompositionAttackTest, CorruptCiphertextReportedNotThrown) {
  Rng rng(7);
  const std::size_t n = 16;
  const auto s = CompositionSchedule::make(n, 0.5);
  const auto x = distinct_sample(n, s.d, rng);
  std::vector<BigInt> outs;
  for (const auto& st : s.stages) outs.push_back(factorial(st.k) - 1);
  const auto r = composition_attack(std::span<const BitString>(x).first(s.prefix), outs, s);
  if (!r.success) EXPECT_FALSE(r.failure.empty());
  EXPECT_NE(r.dataset, x);
}

TEST(PrgCompositionTest, RoundTrip) {
  Rng rng(8);
  const ChaChaExpander g;
  for (std::size_t n : {16u, 32u, 64u}) {
    const std::size_t d = default_element_bits(n);
    const auto x = distinct_sample(n, d, rng);
    const std::size_t k = 9;
    const BitString c = prg_encrypermute(x, k, 16, g, rng);
    EXPECT_EQ(c.size(), (n - k) * d);
    const auto rest = prg_decrypt(c, std::span<const BitString>(x).first(k), 16, g);
    EXPECT_EQ(rest, std::vector<BitString>(x.begin() + k, x.end()));
  }
  EXPECT_EQ(default_prg_seed_bits(16), 8u);
  EXPECT_EQ(low_bits(BigInt(0b101101), 4).to_string(), "1101");
}

TEST(LowBitsSdTest, FrozenValues) {
  EXPECT_EQ(low_bits_sd(6, 1), Rational(0));
  EXPECT_EQ(low_bits_sd(5, 1), Rational(1, 10));
  EXPECT_EQ(low_bits_sd(1000, 4), Rational(1, 250));
  EXPECT_EQ(low_bits_sd(37, 2), Rational(3, 148));
  EXPECT_THROW(low_bits_sd(0, 0), std::invalid_argument);
  EXPECT_THROW(low_bits_sd(8, 4), std::invalid_argument);
}

// r cells hold q + 1 values and the rest q, so SD = r (2^l - r) / (N 2^l).
TEST(LowBitsSdTest, MatchesClosedForm) {
  for (std::uint64_t N = 1; N <= 3000; N += 7) {
    const std::size_t cap = std::bit_width(N - 1);
    for (std::size_t ell = 0; ell <= cap; ++ell) {
      const std::uint64_t cells = std::uint64_t{1} << ell;
      const std::uint64_t r = N % cells;
      ASSERT_EQ(low_bits_sd(N, ell), Rational(r * (cells - r), N * cells)) << N << " " << ell;
    }
  }
}

TEST(MembershipTest, GapClosedForm) {
  Rng rng(9);
  for (std::size_t n : {16u, 32u, 64u}) {
    const std::size_t d = default_element_bits(n);
    const auto x = distinct_sample(n, d, rng);
    const auto q = membership_query(x, d);
    Dataset pts;
    for (const auto& e : x) pts.push_back(BitsPoint{e});
    const double expected = 2.0 - 2.0 * static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(d));
    EXPECT_EQ(phg_gap(q, pts, Population::uniform_bits(d)).gap, expected);
  }
}

}  // namespace
}  // namespace phg
