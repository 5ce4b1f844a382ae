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

#ifndef PHG_QUERY_H_
#define PHG_QUERY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_set>
#include <variant>
#include <vector>

#include "phg/bits.h"
#include "phg/universe.h"

namespace phg {

struct ConstantQuery {
  double value = 0.0;
};

// Which universe a table is read over. kPairs tables ignore the tag and read
// the value of the pair's index.
enum class TableDomain { kIndex, kPairs };

struct TableQuery {
  std::shared_ptr<const std::vector<double>> values;
  TableDomain domain = TableDomain::kIndex;
};

// Mask accessor for lifted queries over pairs. pad_bit(i, tag, j) is the
// j-th pad bit at point (i, tag): tag^j xor m_i^j for one-time-pad masks and
// G(tag)^j xor G(s_i)^j for PRG masks. It vanishes on the support point of i.
class PadSource {
 public:
  virtual ~PadSource() = default;
  virtual std::size_t universe_size() const = 0;
  virtual std::size_t rounds() const = 0;
  virtual std::size_t tag_width() const = 0;
  virtual bool pad_bit(std::size_t i, const BitString& tag, std::size_t j) const = 0;
  // Tags of the support points, indexed by i.
  virtual std::shared_ptr<const std::vector<BitString>> support_tags() const = 0;
};

// q(i, y) = pad_bit(i, y, round) xor base[i], with base bits in {0, 1}.
struct MaskedQuery {
  std::shared_ptr<const std::vector<std::uint8_t>> base;
  std::shared_ptr<const PadSource> pads;
  std::size_t round = 0;
};

// +1 on members, -1 elsewhere, over {0,1}^width.
struct MembershipQuery {
  std::shared_ptr<const std::unordered_set<BitString>> members;
  std::size_t width = 0;
};

// Arbitrary evaluator; used for test traps and ad hoc queries.
struct FunctionQuery {
  std::function<double(const UniversePoint&)> fn;
};

// A statistical query X -> [-1, 1]. evaluate() counts point evaluations so a
// pipeline can be audited for how often (and where) it touched the query;
// value() is the uncounted route used by metrics.
class Query {
 public:
  using Variant =
      std::variant<ConstantQuery, TableQuery, MaskedQuery, MembershipQuery, FunctionQuery>;

  explicit Query(Variant impl) : impl_(std::move(impl)) {}

  static Query constant(double c);
  static Query table(std::vector<double> values, TableDomain domain = TableDomain::kIndex);
  static Query table(std::shared_ptr<const std::vector<double>> values,
                     TableDomain domain = TableDomain::kIndex);
  static Query membership(std::unordered_set<BitString> members, std::size_t width);
  static Query function(std::function<double(const UniversePoint&)> fn);

  double evaluate(const UniversePoint& x) const {
    ++evaluations_;
    return value(x);
  }
  double value(const UniversePoint& x) const;

  std::size_t evaluations() const { return evaluations_; }
  void reset_evaluations() { evaluations_ = 0; }

  const Variant& kind() const { return impl_; }

 private:
  Variant impl_;
  // One game thread at a time; not synchronised.
  mutable std::size_t evaluations_ = 0;
};

struct GapReport {
  double sample_mean = 0.0;
  double population_mean = 0.0;
  double gap = 0.0;  // sample_mean - population_mean
};

// Mean of q over the points of X (uncounted).
double query_mean_sample(const Query& q, const Dataset& X);

// Exact expectation of q under pop, by enumeration of the support or in
// closed form (membership over uniform bits). Throws UnsupportedError when
// neither route applies.
double query_mean_population(const Query& q, const Population& pop);

GapReport phg_gap(const Query& q, const Dataset& X, const Population& pop);

}  // namespace phg

#endif  // PHG_QUERY_H_
