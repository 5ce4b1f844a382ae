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

#include "phg/mechanisms.h"

#include <cmath>
#include <stdexcept>

#include "phg/errors.h"

namespace phg {

double empirical_mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empirical_mean: empty vector");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double rounded_empirical_mean(std::span<const double> values, double precision) {
  if (!(precision > 0.0)) throw std::invalid_argument("rounded_empirical_mean: precision must be positive");
  const double x = empirical_mean(values) / precision;
  const double lo = std::floor(x);
  const double frac = x - lo;
  double steps = lo;
  if (frac > 0.5) {
    steps = lo + 1.0;
  } else if (frac == 0.5) {
    steps = x > 0.0 ? lo : lo + 1.0;
  }
  return steps * precision;
}

double gaussian_answer(std::span<const double> values, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian_answer: sigma must be non-negative");
  const double mean = empirical_mean(values);
  if (sigma == 0.0) return clamp_unit(mean);
  return clamp_unit(mean + sigma * rng.normal());
}

double calibrate_sigma(double eps, double delta, std::size_t k) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) || k == 0) {
    throw std::invalid_argument("calibrate_sigma: need 0<eps<1, 0<delta<1, k>=1");
  }
  return eps / (2.0 * std::sqrt(2.0 * std::log(4.0 * static_cast<double>(k) / delta)));
}

double oracle_answer(const Query& q, const Population& pop) {
  return clamp_unit(query_mean_population(q, pop));
}

RoundedMeanMechanism::RoundedMeanMechanism(double precision) : precision_(precision) {
  if (!(precision > 0.0)) throw std::invalid_argument("RoundedMeanMechanism: precision must be positive");
}

GaussianMechanism::GaussianMechanism(double sigma, Rng rng) : sigma_(sigma), rng_(std::move(rng)) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("GaussianMechanism: sigma must be non-negative");
}

SampleSplitMechanism::SampleSplitMechanism(std::size_t n, std::size_t chunks) : n_(n), chunks_(chunks) {
  if (chunks == 0 || chunks > n) {
    throw std::invalid_argument("SampleSplitMechanism: need 1 <= chunks <= n");
  }
}

std::pair<std::size_t, std::size_t> SampleSplitMechanism::chunk_range(std::size_t c) const {
  const std::size_t size = n_ / chunks_;
  const std::size_t begin = c * size;
  const std::size_t end = (c + 1 == chunks_) ? n_ : begin + size;
  return {begin, end};
}

double SampleSplitMechanism::answer(std::span<const double> v) {
  if (v.size() != n_) throw std::invalid_argument("SampleSplitMechanism: wrong sample length");
  if (next_ >= chunks_) throw ProtocolError("SampleSplitMechanism: chunks exhausted");
  const auto [begin, end] = chunk_range(next_++);
  return clamp_unit(empirical_mean(v.subspan(begin, end - begin)));
}

LiftedNaturalMechanism::LiftedNaturalMechanism(std::unique_ptr<NaturalMechanism> inner, Dataset X)
    : inner_(std::move(inner)), X_(std::move(X)) {
  if (!inner_) throw std::invalid_argument("lift_natural: null mechanism");
  scratch_.resize(X_.size());
}

double LiftedNaturalMechanism::answer(const Query& q) {
  for (std::size_t i = 0; i < X_.size(); ++i) scratch_[i] = q.evaluate(X_[i]);
  return clamp_unit(inner_->answer(scratch_));
}

std::unique_ptr<GeneralMechanism> lift_natural(std::unique_ptr<NaturalMechanism> mech, Dataset X) {
  return std::make_unique<LiftedNaturalMechanism>(std::move(mech), std::move(X));
}

ProbingMechanism::ProbingMechanism(Dataset X, Dataset probes)
    : X_(std::move(X)), probes_(std::move(probes)) {
  if (X_.empty()) throw std::invalid_argument("ProbingMechanism: empty dataset");
}

double ProbingMechanism::answer(const Query& q) {
  double sum = 0.0;
  for (const auto& x : X_) sum += q.evaluate(x);
  auto& seen = memory_.emplace_back();
  seen.reserve(probes_.size());
  for (const auto& p : probes_) {
    seen.push_back(q.evaluate(p));
    sum += seen.back();
  }
  return clamp_unit(sum / static_cast<double>(X_.size() + probes_.size()));
}

}  // namespace phg
