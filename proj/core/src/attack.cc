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

#include "phg/attack.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phg/errors.h"

namespace phg {

std::size_t universe_size(std::size_t n, double eps) {
  const double raw = 8.0 * static_cast<double>(n) / eps;
  auto N = static_cast<std::size_t>(std::ceil(raw));
  // Guard against ceil landing one above an exact integer through rounding.
  if (N > 0 && static_cast<double>(N - 1) * eps >= 8.0 * static_cast<double>(n)) --N;
  return N;
}

double accusation_threshold(double eps, std::size_t k) {
  return 9.0 * eps * std::sqrt(2.0 * static_cast<double>(k) * std::log(96.0 / eps)) + 1.0;
}

AttackConfig AttackConfig::make(std::size_t n, double eps, std::size_t k) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("attack: eps must lie in (0, 1)");
  if (n == 0) throw std::invalid_argument("attack: n must be at least 1");
  if (k == 0) throw std::invalid_argument("attack: k must be at least 1");
  AttackConfig c;
  c.n = n;
  c.eps = eps;
  c.k = k;
  c.N = universe_size(n, eps);
  c.tau = accusation_threshold(eps, k);
  return c;
}

double trunc(double x, double bound) {
  if (!(bound > 0.0)) throw std::invalid_argument("trunc: bound must be positive");
  return std::clamp(x, -bound, bound);
}

FingerprintingAttack::FingerprintingAttack(std::size_t n, double eps, std::size_t k)
    : cfg_(AttackConfig::make(n, eps, k)),
      draws_(cfg_.N, 0),
      accused_(cfg_.N, 0),
      scores_(cfg_.N, 0.0) {}

Query FingerprintingAttack::next_query(Rng& rng) {
  if (pending_) throw ProtocolError("next_query: previous round not answered");
  if (round_ >= cfg_.k) throw ProtocolError("next_query: all k rounds already issued");

  bias_ = rng.uniform01();
  rng.fill_bernoulli(bias_, draws_);

  // Reuse last round's table when no caller still holds it.
  if (!table_ || table_.use_count() > 1) {
    table_ = std::make_shared<std::vector<double>>(cfg_.N);
  }
  auto& t = *table_;
  ones_ = 0;
  for (std::size_t i = 0; i < cfg_.N; ++i) {
    const bool one = draws_[i] != 0 && accused_[i] == 0;
    t[i] = one ? 1.0 : 0.0;
    ones_ += one;
  }
  pending_ = true;
  return Query(TableQuery{table_, TableDomain::kIndex});
}

double FingerprintingAttack::round_population_mean() const {
  return static_cast<double>(ones_) / static_cast<double>(cfg_.N);
}

void FingerprintingAttack::process_answer(double a) {
  if (!pending_) throw ProtocolError("process_answer: no pending query");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("process_answer: answer outside [0, 1]");

  const double t = trunc(a - bias_, 3.0 * cfg_.eps);
  const double up = t * (1.0 - bias_);  // increment when q_i = 1
  const double down = -t * bias_;       // increment when q_i = 0
  const double limit = cfg_.tau - 1.0;
  for (std::size_t i = 0; i < cfg_.N; ++i) {
    if (accused_[i]) continue;
    scores_[i] += draws_[i] ? up : down;
    const double mag = std::abs(scores_[i]);
    if (mag > max_abs_score_) max_abs_score_ = mag;
    if (mag > limit) {
      accused_[i] = 1;
      ++accused_count_;
    }
  }
  last_trunc_ = t;
  pending_ = false;
  ++round_;
}

Query FingerprintingAttack::final_query() const {
  if (!finished()) throw ProtocolError("final_query: rounds not completed");
  std::vector<double> q(cfg_.N);
  for (std::size_t i = 0; i < cfg_.N; ++i) q[i] = scores_[i] / cfg_.tau;
  return Query::table(std::move(q));
}

}  // namespace phg
