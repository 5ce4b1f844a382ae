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

#include "phg/query.h"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "phg/errors.h"

namespace phg {
namespace {

// Largest d for which a uniform-bits population is enumerated outright.
constexpr std::size_t kMaxEnumerableBits = 24;

double table_at(const TableQuery& t, const UniversePoint& x) {
  std::size_t i = 0;
  if (t.domain == TableDomain::kIndex) {
    const auto* p = std::get_if<IndexPoint>(&x);
    if (p == nullptr) throw DomainError("table query over [N] evaluated off [N]");
    i = p->index;
  } else {
    const auto* p = std::get_if<PairPoint>(&x);
    if (p == nullptr) throw DomainError("table query over pairs evaluated off pairs");
    i = p->index;
  }
  if (i >= t.values->size()) throw DomainError("table query index out of range");
  return (*t.values)[i];
}

double masked_at(const MaskedQuery& m, const UniversePoint& x) {
  const auto* p = std::get_if<PairPoint>(&x);
  if (p == nullptr) throw DomainError("masked query evaluated off pairs");
  if (p->index >= m.base->size() || p->tag.size() != m.pads->tag_width()) {
    throw DomainError("masked query: point outside the lifted universe");
  }
  const bool bit = m.pads->pad_bit(p->index, p->tag, m.round) != ((*m.base)[p->index] != 0);
  return bit ? 1.0 : 0.0;
}

double membership_at(const MembershipQuery& m, const UniversePoint& x) {
  const auto* p = std::get_if<BitsPoint>(&x);
  if (p == nullptr || p->bits.size() != m.width) {
    throw DomainError("membership query evaluated off {0,1}^d");
  }
  return m.members->contains(p->bits) ? 1.0 : -1.0;
}

double enumerate_mean(const Query& q, const Population& pop) {
  const std::size_t size = pop.support_size();
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) sum += q.value(pop.support_point(i));
  return sum / static_cast<double>(size);
}

}  // namespace

Query Query::constant(double c) {
  if (!(c >= -1.0 && c <= 1.0)) throw std::invalid_argument("constant query outside [-1, 1]");
  return Query(ConstantQuery{c});
}

Query Query::table(std::vector<double> values, TableDomain domain) {
  return table(std::make_shared<const std::vector<double>>(std::move(values)), domain);
}

Query Query::table(std::shared_ptr<const std::vector<double>> values, TableDomain domain) {
  if (!values) throw std::invalid_argument("table query: null table");
  for (double v : *values) {
    if (!(v >= -1.0 && v <= 1.0)) throw std::invalid_argument("table query value outside [-1, 1]");
  }
  return Query(TableQuery{std::move(values), domain});
}

Query Query::membership(std::unordered_set<BitString> members, std::size_t width) {
  for (const auto& m : members) {
    if (m.size() != width) throw std::invalid_argument("membership query: member width mismatch");
  }
  return Query(MembershipQuery{
      std::make_shared<const std::unordered_set<BitString>>(std::move(members)), width});
}

Query Query::function(std::function<double(const UniversePoint&)> fn) {
  return Query(FunctionQuery{std::move(fn)});
}

double Query::value(const UniversePoint& x) const {
  double v = 0.0;
  if (const auto* c = std::get_if<ConstantQuery>(&impl_)) {
    v = c->value;
  } else if (const auto* t = std::get_if<TableQuery>(&impl_)) {
    v = table_at(*t, x);
  } else if (const auto* m = std::get_if<MaskedQuery>(&impl_)) {
    v = masked_at(*m, x);
  } else if (const auto* m = std::get_if<MembershipQuery>(&impl_)) {
    v = membership_at(*m, x);
  } else {
    v = std::get<FunctionQuery>(impl_).fn(x);
  }
  assert(v >= -1.0 && v <= 1.0);
  return v;
}

double query_mean_sample(const Query& q, const Dataset& X) {
  if (X.empty()) throw std::invalid_argument("query_mean_sample: empty dataset");
  double sum = 0.0;
  for (const auto& x : X) sum += q.value(x);
  return sum / static_cast<double>(X.size());
}

double query_mean_population(const Query& q, const Population& pop) {
  const auto& kind = q.kind();
  if (const auto* c = std::get_if<ConstantQuery>(&kind)) return c->value;

  if (const auto* m = std::get_if<MembershipQuery>(&kind)) {
    const auto* bits = std::get_if<UniformBits>(&pop.kind());
    if (bits == nullptr || bits->d != m->width) {
      throw UnsupportedError("membership query needs a uniform-bits population of its width");
    }
    const auto size = static_cast<double>(m->members->size());
    return -1.0 + 2.0 * std::ldexp(size, -static_cast<int>(m->width));
  }

  if (const auto* t = std::get_if<TableQuery>(&kind)) {
    const bool index_pop = std::holds_alternative<UniformIndex>(pop.kind());
    const bool pair_pop = std::holds_alternative<UniformPairs>(pop.kind());
    if ((t->domain == TableDomain::kIndex && !index_pop) ||
        (t->domain == TableDomain::kPairs && !pair_pop)) {
      throw UnsupportedError("table query and population live on different universes");
    }
    if (pop.support_size() != t->values->size()) {
      throw DomainError("table length differs from the population's universe size");
    }
    double sum = 0.0;
    for (double v : *t->values) sum += v;
    return sum / static_cast<double>(t->values->size());
  }

  if (const auto* m = std::get_if<MaskedQuery>(&kind)) {
    const auto* pairs = std::get_if<UniformPairs>(&pop.kind());
    if (pairs == nullptr) throw UnsupportedError("masked query needs a uniform-pairs population");
    const auto& tags = *pairs->tags;
    if (tags.size() != m->base->size()) {
      throw DomainError("masked query and population disagree on N");
    }
    // Walk the support without copying the (possibly long) tags.
    double sum = 0.0;
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (tags[i].size() != m->pads->tag_width()) throw DomainError("masked query tag width");
      const bool bit = m->pads->pad_bit(i, tags[i], m->round) != ((*m->base)[i] != 0);
      sum += bit ? 1.0 : 0.0;
    }
    return sum / static_cast<double>(tags.size());
  }

  // Function queries: enumerate when the support is small enough.
  if (const auto* bits = std::get_if<UniformBits>(&pop.kind());
      bits != nullptr && bits->d > kMaxEnumerableBits) {
    throw UnsupportedError("function query over a uniform-bits population too large to enumerate");
  }
  return enumerate_mean(q, pop);
}

GapReport phg_gap(const Query& q, const Dataset& X, const Population& pop) {
  GapReport r;
  r.sample_mean = query_mean_sample(q, X);
  r.population_mean = query_mean_population(q, pop);
  r.gap = r.sample_mean - r.population_mean;
  return r;
}

}  // namespace phg
