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
#include <stdexcept>
#include <vector>

#include "phg/attack.h"

namespace phg {

Estimate fp_lemma_estimate(const BitFunction& f, std::size_t m, std::size_t trials, Rng& rng) {
  if (m == 0) throw std::invalid_argument("fp_lemma_estimate: m must be positive");
  if (trials < 1000) throw std::invalid_argument("fp_lemma_estimate: need at least 1000 trials");

  std::vector<std::uint8_t> x(m);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double p = rng.uniform01();
    rng.fill_bernoulli(p, x);
    double ones = 0.0;
    for (auto b : x) ones += b;
    const double fx = f(x, rng);
    if (!(fx >= 0.0 && fx <= 1.0)) throw std::domain_error("fp_lemma_estimate: f left [0, 1]");
    const double centered_sum = ones - static_cast<double>(m) * p;
    const double v = (fx - p) * centered_sum + std::abs(fx - ones / static_cast<double>(m));
    // Welford.
    const double d = v - mean;
    mean += d / static_cast<double>(t + 1);
    m2 += d * (v - mean);
  }
  const double var = m2 / static_cast<double>(trials - 1);
  return {mean, std::sqrt(var / static_cast<double>(trials))};
}

}  // namespace phg
