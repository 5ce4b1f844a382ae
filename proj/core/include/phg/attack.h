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

#ifndef PHG_ATTACK_H_
#define PHG_ATTACK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "phg/query.h"
#include "phg/random.h"

namespace phg {

struct AttackConfig {
  std::size_t n = 0;  // sample size
  double eps = 0.0;   // target accuracy
  std::size_t k = 0;  // rounds
  std::size_t N = 0;  // universe size, ceil(8n / eps)
  double tau = 0.0;   // 9 eps sqrt(2k ln(96/eps)) + 1

  // Validates (n, eps, k) and derives N and tau.
  static AttackConfig make(std::size_t n, double eps, std::size_t k);
};

std::size_t universe_size(std::size_t n, double eps);
// Natural logarithm throughout.
double accusation_threshold(double eps, std::size_t k);

// Nearest point of [-bound, bound] to x.
double trunc(double x, double bound);

// The fingerprinting analyst against natural mechanisms. Each round draws a
// bias p ~ U[0,1] and a Ber(p) panel over [N], zeroes accused items, and
// after the answer a adds trunc_{3 eps}(a - p) (q_i - p) to every
// unaccused item's score. Items whose |score| exceeds tau - 1 are accused
// and frozen. After k rounds the normalised scores z_i / tau form the final
// query, which over-weights the items of the sample.
//
// Protocol: next_query() and process_answer() alternate k times, then
// final_query().
class FingerprintingAttack {
 public:
  // Starts with no accusations and all scores zero.
  FingerprintingAttack(std::size_t n, double eps, std::size_t k);

  const AttackConfig& config() const { return cfg_; }

  // Draws round j's panel and returns q^j as a table over [N].
  Query next_query(Rng& rng);

  // Scores the pending round against answer a in [0, 1].
  void process_answer(double a);

  // z_i / tau for every i; only after all k rounds.
  Query final_query() const;

  std::size_t rounds_done() const { return round_; }
  bool pending() const { return pending_; }
  bool finished() const { return round_ == cfg_.k && !pending_; }

  double bias() const { return bias_; }
  // Raw Ber(p) draws of the current round, before zeroing accused items.
  std::span<const std::uint8_t> raw_draws() const { return draws_; }
  // Exact mean of the current round query over U[N].
  double round_population_mean() const;

  std::span<const double> scores() const { return scores_; }
  bool accused(std::size_t i) const { return accused_[i] != 0; }
  std::size_t accused_count() const { return accused_count_; }
  std::span<const std::uint8_t> accused_mask() const { return accused_; }

  // Increment applied to each unaccused item in the last processed round is
  // trunc(a - p) * (q_i - p); this is the truncated factor.
  double last_truncated_error() const { return last_trunc_; }

  // max_i |z_i| over every round so far.
  double max_abs_score() const { return max_abs_score_; }

 private:
  AttackConfig cfg_;
  std::size_t round_ = 0;
  bool pending_ = false;
  double bias_ = 0.0;
  double last_trunc_ = 0.0;
  std::size_t ones_ = 0;  // unaccused ones in the current panel
  std::vector<std::uint8_t> draws_;
  std::vector<std::uint8_t> accused_;
  std::vector<double> scores_;
  std::size_t accused_count_ = 0;
  double max_abs_score_ = 0.0;
  std::shared_ptr<std::vector<double>> table_;
};

// f: {0,1}^m -> [0,1]; may randomise through the supplied Rng.
using BitFunction = std::function<double(std::span<const std::uint8_t>, Rng&)>;

struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Monte-Carlo estimate of E[(f(x) - p) sum_i (x_i - p) + |f(x) - mean(x)|]
// with p ~ U[0,1] and x_i ~ Ber(p). trials >= 1000.
Estimate fp_lemma_estimate(const BitFunction& f, std::size_t m, std::size_t trials, Rng& rng);

// The lower bound every f must meet in expectation.
inline constexpr double kFingerprintingBound = 1.0 / 12.0;

}  // namespace phg

#endif  // PHG_ATTACK_H_
