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

#ifndef PHG_RANDOM_H_
#define PHG_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace phg {

// Mixes (seed, index) through BLAKE2b into a fresh 64-bit seed. Used for
// per-trial seeds and for splitting a trial seed into independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Named streams carved out of a trial seed. Games that must be coupled
// (e.g. natural vs. lifted) draw the same quantities from the same stream.
enum class Stream : std::uint64_t {
  kDataset = 1,
  kAnalyst = 2,
  kMechanism = 3,
  kMasks = 4,
};

inline std::uint64_t stream_seed(std::uint64_t trial_seed, Stream s) {
  return derive_seed(trial_seed, static_cast<std::uint64_t>(s));
}

// Seeded random source. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; every conversion to doubles, integers or
// Gaussians is done here rather than through <random> distributions so that
// results are bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via the Marsaglia polar method.
  double normal();

  // Fills out[i] with independent Ber(p) draws (0 or 1). Lanes are decided
  // 64 at a time by comparing uniform bit streams against the binary
  // expansion of p, so the expected cost is a handful of engine calls per 64
  // draws. Exact for every p representable in 64 fractional bits.
  void fill_bernoulli(double p, std::span<std::uint8_t> out);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace phg

#endif  // PHG_RANDOM_H_
