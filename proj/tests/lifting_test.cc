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

#include "phg/lifting.h"

#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "phg/attack.h"
#include "phg/game.h"
#include "phg/random.h"

namespace phg {
namespace {

Query random_bit_table(std::size_t N, Rng& rng) {
  std::vector<double> v(N);
  for (auto& x : v) x = rng.bernoulli(0.5) ? 1.0 : 0.0;
  return Query::table(std::move(v));
}

TEST(LiftingTest, DefaultSeedLength) {
  EXPECT_EQ(default_seed_length(1), 16u);
  EXPECT_EQ(default_seed_length(16), 32u);
  EXPECT_EQ(default_seed_length(17), 48u);
  EXPECT_EQ(default_seed_length(1000), 96u);
}

TEST(LiftingTest, MaskedQueryAgreesWithBaseOnSupport) {
  Rng rng(1);
  const std::size_t N = 40, k = 70;
  const auto inst = build_masked_instance(N, k, rng);
  const auto pop = pair_population(*inst);
  for (std::size_t j = 0; j < k; j += 13) {
    const Query q_hat = random_bit_table(N, rng);
    const Query q = lift_query(q_hat, inst, j);
    for (std::size_t i = 0; i < N; ++i) {
      ASSERT_EQ(q.value(PairPoint{i, inst->mask(i)}), q_hat.value(IndexPoint{i}));
      const auto y = BitString::random(k, rng);
      const bool pad = y.get(j) != inst->mask(i).get(j);
      ASSERT_EQ(q.value(PairPoint{i, y}), pad != (q_hat.value(IndexPoint{i}) == 1.0) ? 1.0 : 0.0);
    }
    EXPECT_EQ(query_mean_population(q, pop), query_mean_population(q_hat, Population::uniform_index(N)));
  }
}

TEST(LiftingTest, RejectsNonBitBase) {
  Rng rng(2);
  const auto inst = build_masked_instance(3, 2, rng);
  EXPECT_THROW(lift_query(Query::table({0.0, 0.5, 1.0}), inst, 0), std::invalid_argument);
  EXPECT_THROW(lift_query(Query::table({0.0, 1.0}), inst, 0), std::invalid_argument);
  EXPECT_THROW(lift_query(Query::table({0.0, 1.0, 1.0}), inst, 2), std::out_of_range);
}

TEST(LiftingTest, FinalQueryReadsIndex) {
  const auto q = lift_final_query(Query::table({0.25, -0.5}));
  EXPECT_EQ(q.value(PairPoint{1, BitString::from_uint(0, 5)}), -0.5);
  EXPECT_EQ(q.value(PairPoint{0, BitString::from_uint(9, 5)}), 0.25);
}

TEST(PrgLiftingTest, PointWidthIsSeedLength) {
  Rng rng(3);
  for (std::size_t k : {10u, 100u, 1000u}) {
    const auto inst = build_prg_instance(20, k, 24, rng);
    EXPECT_EQ(inst->tag_width(), 24u);
    const auto pop = pair_population(*inst);
    EXPECT_EQ(std::get<PairPoint>(pop.sample(rng)).tag.size(), 24u);
  }
  EXPECT_THROW(build_prg_instance(20, 10, 15, rng), std::invalid_argument);
}

TEST(PrgLiftingTest, PadVanishesOnSupport) {
  Rng rng(4);
  const auto inst = build_prg_instance(16, 50, 16, rng);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 50; ++j) ASSERT_FALSE(inst->pad_bit(i, inst->seed(i), j));
  }
}

// With G replaced by an ideal random table, the PRG instance at (i, z) is the
// one-time-pad instance with masks G(s_i) read at (i, G(z)).
TEST(PrgLiftingTest, IdealExpanderReducesToMasks) {
  Rng rng(5);
  const std::size_t N = 24, k = 60, ell = 16;
  auto g = std::make_shared<TableExpander>(k, 99);
  const auto prg = build_prg_instance(N, k, ell, rng, g);
  std::vector<BitString> masks;
  for (std::size_t i = 0; i < N; ++i) masks.push_back(g->expand(prg->seed(i), k));
  const auto otp = std::make_shared<MaskInstance>(masks);
  for (int t = 0; t < 300; ++t) {
    const std::size_t i = rng.uniform_below(N);
    const auto z = t % 3 == 0 ? prg->seed(rng.uniform_below(N)) : BitString::random(ell, rng);
    const auto gz = g->expand(z, k);
    for (std::size_t j = 0; j < k; ++j) ASSERT_EQ(prg->pad_bit(i, z, j), otp->pad_bit(i, gz, j));
  }
  const Query q_hat = random_bit_table(N, rng);
  const Query a = lift_query(q_hat, prg, 7);
  const Query b = lift_query(q_hat, otp, 7);
  for (int t = 0; t < 100; ++t) {
    const std::size_t i = rng.uniform_below(N);
    const auto z = BitString::random(ell, rng);
    ASSERT_EQ(a.value(PairPoint{i, z}), b.value(PairPoint{i, g->expand(z, k)}));
  }
}

GameConfig small_config(GameKind game, std::size_t n, double eps, std::size_t k, const std::string& tag) {
  GameConfig c;
  c.game = game;
  c.n = n;
  c.eps = eps;
  c.k = k;
  c.mechanism.tag = tag;
  c.record_rounds = true;
  return c;
}

void expect_same_transcript(const GameResult& a, const GameResult& b) {
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t j = 0; j < a.rounds.size(); ++j) {
    ASSERT_EQ(a.rounds[j].bias, b.rounds[j].bias) << j;
    ASSERT_EQ(a.rounds[j].answer, b.rounds[j].answer) << j;
    ASSERT_EQ(a.rounds[j].population_error, b.rounds[j].population_error) << j;
    ASSERT_EQ(a.rounds[j].sample_error, b.rounds[j].sample_error) << j;
  }
  EXPECT_EQ(a.final_gap, b.final_gap);
  EXPECT_EQ(a.accused_in_sample, b.accused_in_sample);
  EXPECT_EQ(a.accused_out_sample, b.accused_out_sample);
}

TEST(TranscriptTest, LiftedNaturalMatchesNaturalGame) {
  for (const char* tag : {"empirical", "rounded", "gaussian", "random", "split"}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const std::size_t n = 40, k = 30;
      const auto naq = small_config(GameKind::kNaq, n, 0.25, k, tag);
      const auto aq = small_config(GameKind::kAq, n, 0.25, k, tag);
      const auto prg = small_config(GameKind::kAqPrg, n, 0.25, k, tag);
      const auto base = run_naq_game(naq.mechanism, naq, seed);
      expect_same_transcript(base, run_aq_game(aq.mechanism, aq, seed));
      expect_same_transcript(base, run_aq_game(prg.mechanism, prg, seed));
    }
  }
}

TEST(TranscriptTest, LiftedRunnerEvaluatesOnlySamplePoints) {
  auto c = small_config(GameKind::kAq, 16, 0.25, 40, "empirical");
  const auto r = run_aq_game(c.mechanism, c, 3);
  EXPECT_EQ(r.mechanism_evaluations, 16u * 40u);
  EXPECT_EQ(r.point_bits, 40u);
}

// The reduction run inside the natural game, with a lifted natural
// mechanism on the inside, reproduces the plain natural transcript.
TEST(SimulatedNaturalTest, ReductionReproducesNaturalTranscript) {
  const auto cfg = small_config(GameKind::kNaq, 20, 0.25, 50, "empirical");
  const NaturalFactory simulated = [&](const Dataset& X, const Population& pop, std::uint64_t seed) {
    std::vector<std::size_t> sample;
    for (const auto& x : X) sample.push_back(index_of(x));
    Rng masks(stream_seed(seed, Stream::kMasks));
    const GeneralMechanismFactory inner = [](const Dataset& Y, const Population&) {
      return lift_natural(std::make_unique<EmpiricalMeanMechanism>(), Y);
    };
    const auto N = std::get<UniformIndex>(pop.kind()).N;
    return simulate_natural(inner, std::move(sample), N, cfg.k, masks);
  };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    expect_same_transcript(run_naq_game(cfg.mechanism, cfg, seed), play_naq(cfg, seed, simulated));
  }
}

TEST(SimulatedNaturalTest, OffSampleBitsArePads) {
  Rng rng(6);
  const std::size_t N = 30, k = 8;
  std::vector<std::size_t> sample = {2, 5, 5, 11};
  const GeneralMechanismFactory inner = [](const Dataset& Y, const Population&) {
    return lift_natural(std::make_unique<EmpiricalMeanMechanism>(), Y);
  };
  SimulatedNaturalMechanism sim(inner, sample, N, k, rng);
  const std::vector<double> values = {1.0, 0.0, 0.0, 1.0};
  EXPECT_EQ(sim.answer(values), 0.5);
  const Query* q = sim.last_query();
  ASSERT_NE(q, nullptr);
  for (std::size_t i = 0; i < N; ++i) {
    const auto y = BitString::random(k, rng);
    const bool base = i == 2 || i == 11;
    const bool pad = y.get(0) != sim.instance()->mask(i).get(0);
    ASSERT_EQ(q->value(PairPoint{i, y}), (pad != base) ? 1.0 : 0.0);
  }
  EXPECT_THROW(sim.answer(std::vector<double>{0.5, 0, 0, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace phg
