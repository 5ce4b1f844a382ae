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

#ifndef PHG_UNIVERSE_H_
#define PHG_UNIVERSE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "phg/bits.h"

namespace phg {

class Rng;

// Point of [N].
struct IndexPoint {
  std::size_t index = 0;
  friend bool operator==(const IndexPoint&, const IndexPoint&) = default;
};

// Point (i, tag) of the lifted universes. `tag` is a k-bit mask in the
// one-time-pad game and an l-bit PRG seed in the computational one.
struct PairPoint {
  std::size_t index = 0;
  BitString tag;
  friend bool operator==(const PairPoint&, const PairPoint&) = default;
};

// Point of {0,1}^d.
struct BitsPoint {
  BitString bits;
  friend bool operator==(const BitsPoint&, const BitsPoint&) = default;
};

// The three games use different universes; points keep their tag so a
// query never silently reinterprets a point from another universe.
using UniversePoint = std::variant<IndexPoint, PairPoint, BitsPoint>;

using Dataset = std::vector<UniversePoint>;

// Uniform over [N].
struct UniformIndex {
  std::size_t N = 0;
};

// Uniform over the N support pairs (i, tags[i]).
struct UniformPairs {
  std::shared_ptr<const std::vector<BitString>> tags;
};

// Uniform over {0,1}^d.
struct UniformBits {
  std::size_t d = 0;
};

class Population {
 public:
  using Variant = std::variant<UniformIndex, UniformPairs, UniformBits>;

  static Population uniform_index(std::size_t N);
  static Population uniform_pairs(std::shared_ptr<const std::vector<BitString>> tags);
  static Population uniform_bits(std::size_t d);

  const Variant& kind() const { return kind_; }

  UniversePoint sample(Rng& rng) const;
  bool contains(const UniversePoint& x) const;

  // Number of support points; UniformBits reports 2^d and requires d < 64.
  std::size_t support_size() const;
  // i-th support point in canonical order; UniformBits requires d < 64.
  UniversePoint support_point(std::size_t i) const;

 private:
  explicit Population(Variant v) : kind_(std::move(v)) {}
  Variant kind_;
};

// n iid draws from pop, in draw order.
Dataset sample_dataset(const Population& pop, std::size_t n, Rng& rng);

// Index of a point in [N] or of the first coordinate of a pair; throws
// DomainError for bit-string points.
std::size_t index_of(const UniversePoint& x);

}  // namespace phg

#endif  // PHG_UNIVERSE_H_
