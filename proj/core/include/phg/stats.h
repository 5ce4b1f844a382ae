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

#ifndef PHG_STATS_H_
#define PHG_STATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace phg {

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 1.0;
};

// Goodness of fit of `counts` against the uniform distribution on its cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

// Homogeneity of two count vectors over the same cells (2 x m contingency
// table). Cells empty in both samples are dropped.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// Nearest-rank percentile, q in (0, 1]; sorts a copy.
double percentile(std::vector<double> values, double q);

// Mean computed over the sorted values, so the result does not depend on the
// order the values arrived in.
double order_free_mean(std::vector<double> values);

}  // namespace phg

#endif  // PHG_STATS_H_
