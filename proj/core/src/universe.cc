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

#include "phg/universe.h"

#include <stdexcept>

#include "phg/errors.h"
#include "phg/random.h"

namespace phg {

Population Population::uniform_index(std::size_t N) {
  if (N == 0) throw std::invalid_argument("UniformIndex: N must be positive");
  return Population(UniformIndex{N});
}

Population Population::uniform_pairs(std::shared_ptr<const std::vector<BitString>> tags) {
  if (!tags || tags->empty()) throw std::invalid_argument("UniformPairs: empty support");
  for (const auto& t : *tags) {
    if (t.size() != tags->front().size()) {
      throw std::invalid_argument("UniformPairs: tags must share one width");
    }
  }
  return Population(UniformPairs{std::move(tags)});
}

Population Population::uniform_bits(std::size_t d) {
  if (d == 0) throw std::invalid_argument("UniformBits: d must be positive");
  return Population(UniformBits{d});
}

UniversePoint Population::sample(Rng& rng) const {
  struct Visitor {
    Rng& rng;
    UniversePoint operator()(const UniformIndex& p) const {
      return IndexPoint{static_cast<std::size_t>(rng.uniform_below(p.N))};
    }
    UniversePoint operator()(const UniformPairs& p) const {
      const auto i = static_cast<std::size_t>(rng.uniform_below(p.tags->size()));
      return PairPoint{i, (*p.tags)[i]};
    }
    UniversePoint operator()(const UniformBits& p) const {
      return BitsPoint{BitString::random(p.d, rng)};
    }
  };
  return std::visit(Visitor{rng}, kind_);
}

bool Population::contains(const UniversePoint& x) const {
  if (const auto* u = std::get_if<UniformIndex>(&kind_)) {
    const auto* p = std::get_if<IndexPoint>(&x);
    return p != nullptr && p->index < u->N;
  }
  if (const auto* u = std::get_if<UniformPairs>(&kind_)) {
    const auto* p = std::get_if<PairPoint>(&x);
    return p != nullptr && p->index < u->tags->size() && (*u->tags)[p->index] == p->tag;
  }
  const auto& u = std::get<UniformBits>(kind_);
  const auto* p = std::get_if<BitsPoint>(&x);
  return p != nullptr && p->bits.size() == u.d;
}

std::size_t Population::support_size() const {
  if (const auto* u = std::get_if<UniformIndex>(&kind_)) return u->N;
  if (const auto* u = std::get_if<UniformPairs>(&kind_)) return u->tags->size();
  const auto d = std::get<UniformBits>(kind_).d;
  if (d >= 64) throw UnsupportedError("UniformBits support size overflows 64 bits");
  return std::size_t{1} << d;
}

UniversePoint Population::support_point(std::size_t i) const {
  if (i >= support_size()) throw std::out_of_range("support_point: index out of range");
  if (std::holds_alternative<UniformIndex>(kind_)) return IndexPoint{i};
  if (const auto* u = std::get_if<UniformPairs>(&kind_)) return PairPoint{i, (*u->tags)[i]};
  return BitsPoint{BitString::from_uint(i, std::get<UniformBits>(kind_).d)};
}

Dataset sample_dataset(const Population& pop, std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_dataset: n must be at least 1");
  Dataset out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(pop.sample(rng));
  return out;
}

std::size_t index_of(const UniversePoint& x) {
  if (const auto* p = std::get_if<IndexPoint>(&x)) return p->index;
  if (const auto* p = std::get_if<PairPoint>(&x)) return p->index;
  throw DomainError("index_of: bit-string point has no index");
}

}  // namespace phg
