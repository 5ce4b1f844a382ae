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

#include "phg/lifting.h"

#include <cmath>
#include <stdexcept>

#include "phg/errors.h"

namespace phg {

MaskInstance::MaskInstance(std::vector<BitString> masks)
    : masks_(std::make_shared<const std::vector<BitString>>(std::move(masks))) {
  if (masks_->empty()) throw std::invalid_argument("MaskInstance: N must be positive");
  k_ = masks_->front().size();
  if (k_ == 0) throw std::invalid_argument("MaskInstance: k must be positive");
  for (const auto& m : *masks_) {
    if (m.size() != k_) throw std::invalid_argument("MaskInstance: ragged mask rows");
  }
}

PrgInstance::PrgInstance(std::size_t k, std::vector<BitString> seeds, std::shared_ptr<const Expander> g)
    : k_(k),
      seeds_(std::make_shared<const std::vector<BitString>>(std::move(seeds))),
      g_(std::move(g)) {
  if (k_ == 0 || seeds_->empty()) throw std::invalid_argument("PrgInstance: need N, k >= 1");
  if (!g_) throw std::invalid_argument("PrgInstance: null expander");
  ell_ = seeds_->front().size();
  if (ell_ < kMinSeedBits) throw std::invalid_argument("PrgInstance: seeds shorter than 16 bits");
  expanded_.reserve(seeds_->size());
  for (const auto& s : *seeds_) {
    if (s.size() != ell_) throw std::invalid_argument("PrgInstance: ragged seeds");
    expanded_.push_back(g_->expand(s, k_));
    if (expanded_.back().size() != k_) throw std::logic_error("PrgInstance: expander returned wrong length");
  }
}

bool PrgInstance::pad_bit(std::size_t i, const BitString& tag, std::size_t j) const {
  if (tag == (*seeds_)[i]) return false;
  return g_->bit(tag, j) != expanded_[i].get(j);
}

std::shared_ptr<const MaskInstance> build_masked_instance(std::size_t N, std::size_t k, Rng& rng) {
  if (N == 0 || k == 0) throw std::invalid_argument("build_masked_instance: need N, k >= 1");
  std::vector<BitString> masks;
  masks.reserve(N);
  for (std::size_t i = 0; i < N; ++i) masks.push_back(BitString::random(k, rng));
  return std::make_shared<const MaskInstance>(std::move(masks));
}

std::shared_ptr<const PrgInstance> build_prg_instance(std::size_t N, std::size_t k, std::size_t ell, Rng& rng,
                                                      std::shared_ptr<const Expander> g) {
  if (N == 0 || k == 0) throw std::invalid_argument("build_prg_instance: need N, k >= 1");
  if (ell < kMinSeedBits) throw std::invalid_argument("build_prg_instance: ell must be at least 16");
  if (!g) g = std::make_shared<const ChaChaExpander>();
  std::vector<BitString> seeds;
  seeds.reserve(N);
  for (std::size_t i = 0; i < N; ++i) seeds.push_back(BitString::random(ell, rng));
  return std::make_shared<const PrgInstance>(k, std::move(seeds), std::move(g));
}

std::size_t default_seed_length(std::size_t k) {
  auto root = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(k), 0.25)));
  // pow can land a hair above an exact fourth power.
  if (root > 1 && (root - 1) * (root - 1) * (root - 1) * (root - 1) >= k) --root;
  const std::size_t bits = std::max<std::size_t>(root, 1) * 16;
  return (bits + 7) / 8 * 8;
}

Population pair_population(const PadSource& inst) { return Population::uniform_pairs(inst.support_tags()); }

Query lift_bits(std::shared_ptr<const std::vector<std::uint8_t>> base, std::shared_ptr<const PadSource> inst,
                std::size_t j) {
  if (!inst) throw std::invalid_argument("lift_query: null instance");
  if (!base || base->size() != inst->universe_size()) {
    throw std::invalid_argument("lift_query: base query length differs from N");
  }
  if (j >= inst->rounds()) throw std::out_of_range("lift_query: round beyond mask length");
  for (auto b : *base) {
    if (b > 1) throw std::invalid_argument("lift_query: base query is not bit-valued");
  }
  return Query(MaskedQuery{std::move(base), std::move(inst), j});
}

Query lift_query(const Query& q_hat, std::shared_ptr<const PadSource> inst, std::size_t j) {
  const auto* t = std::get_if<TableQuery>(&q_hat.kind());
  if (t == nullptr || t->domain != TableDomain::kIndex) {
    throw std::invalid_argument("lift_query: base query must be a table over [N]");
  }
  auto base = std::make_shared<std::vector<std::uint8_t>>(t->values->size());
  for (std::size_t i = 0; i < base->size(); ++i) {
    const double v = (*t->values)[i];
    if (v != 0.0 && v != 1.0) throw std::invalid_argument("lift_query: base query is not bit-valued");
    (*base)[i] = v == 1.0;
  }
  return lift_bits(std::move(base), std::move(inst), j);
}

Query lift_final_query(const Query& q_star) {
  const auto* t = std::get_if<TableQuery>(&q_star.kind());
  if (t == nullptr || t->domain != TableDomain::kIndex) {
    throw std::invalid_argument("lift_final_query: expected a table over [N]");
  }
  return Query::table(t->values, TableDomain::kPairs);
}

SimulatedNaturalMechanism::SimulatedNaturalMechanism(const GeneralMechanismFactory& factory,
                                                     std::vector<std::size_t> sample, std::size_t N,
                                                     std::size_t k, Rng& mask_rng)
    : sample_(std::move(sample)), inst_(build_masked_instance(N, k, mask_rng)) {
  X_.reserve(sample_.size());
  for (auto i : sample_) {
    if (i >= N) throw std::invalid_argument("simulate_natural: sample index outside [N]");
    X_.push_back(PairPoint{i, inst_->mask(i)});
  }
  mech_ = factory(X_, pair_population(*inst_));
  if (!mech_) throw std::invalid_argument("simulate_natural: factory returned no mechanism");
}

double SimulatedNaturalMechanism::answer(std::span<const double> sample_values) {
  if (sample_values.size() != sample_.size()) {
    throw std::invalid_argument("simulate_natural: wrong partial query length");
  }
  // Off-sample items get base bit 0.
  auto base = std::make_shared<std::vector<std::uint8_t>>(inst_->universe_size(), 0);
  for (std::size_t t = 0; t < sample_.size(); ++t) {
    const double v = sample_values[t];
    if (v != 0.0 && v != 1.0) throw std::invalid_argument("simulate_natural: partial query is not bit-valued");
    (*base)[sample_[t]] = v == 1.0;
  }
  last_ = std::make_unique<Query>(lift_bits(std::move(base), inst_, round_++));
  return clamp_unit(mech_->answer(*last_));
}

std::unique_ptr<NaturalMechanism> simulate_natural(const GeneralMechanismFactory& factory,
                                                   std::vector<std::size_t> sample, std::size_t N,
                                                   std::size_t k, Rng& mask_rng) {
  return std::make_unique<SimulatedNaturalMechanism>(factory, std::move(sample), N, k, mask_rng);
}

}  // namespace phg
