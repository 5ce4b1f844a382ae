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

#ifndef PHG_LIFTING_H_
#define PHG_LIFTING_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "phg/bits.h"
#include "phg/mechanisms.h"
#include "phg/prg.h"
#include "phg/query.h"
#include "phg/universe.h"

namespace phg {

// One-time-pad lifting: item i carries a uniformly random k-bit mask m_i and
// the population is uniform over the N pairs (i, m_i). Only the support is
// stored; off-support points are handled by the pad formula on demand.
class MaskInstance : public PadSource {
 public:
  explicit MaskInstance(std::vector<BitString> masks);

  std::size_t universe_size() const override { return masks_->size(); }
  std::size_t rounds() const override { return k_; }
  std::size_t tag_width() const override { return k_; }
  bool pad_bit(std::size_t i, const BitString& tag, std::size_t j) const override {
    return tag.get(j) != (*masks_)[i].get(j);
  }
  std::shared_ptr<const std::vector<BitString>> support_tags() const override { return masks_; }

  const BitString& mask(std::size_t i) const { return (*masks_)[i]; }

 private:
  std::shared_ptr<const std::vector<BitString>> masks_;
  std::size_t k_;
};

// PRG lifting: item i carries an l-bit seed s_i, its mask is G(s_i), and a
// point (i, z) reads its pad as G(z) xor G(s_i). Points are l bits wide no
// matter how many rounds are played.
class PrgInstance : public PadSource {
 public:
  PrgInstance(std::size_t k, std::vector<BitString> seeds, std::shared_ptr<const Expander> g);

  std::size_t universe_size() const override { return seeds_->size(); }
  std::size_t rounds() const override { return k_; }
  std::size_t tag_width() const override { return ell_; }
  bool pad_bit(std::size_t i, const BitString& tag, std::size_t j) const override;
  std::shared_ptr<const std::vector<BitString>> support_tags() const override { return seeds_; }

  std::size_t seed_length() const { return ell_; }
  const BitString& seed(std::size_t i) const { return (*seeds_)[i]; }
  // G(s_i), k bits.
  const BitString& expanded(std::size_t i) const { return expanded_[i]; }
  const Expander& expander() const { return *g_; }

 private:
  std::size_t k_;
  std::size_t ell_;
  std::shared_ptr<const std::vector<BitString>> seeds_;
  std::shared_ptr<const Expander> g_;
  std::vector<BitString> expanded_;
};

std::shared_ptr<const MaskInstance> build_masked_instance(std::size_t N, std::size_t k, Rng& rng);

// Seeds drawn uniformly from {0,1}^ell; ell >= 16. Defaults to ChaCha.
std::shared_ptr<const PrgInstance> build_prg_instance(std::size_t N, std::size_t k, std::size_t ell,
                                                      Rng& rng,
                                                      std::shared_ptr<const Expander> g = nullptr);

// ceil(k^(1/4)) * 16, a whole number of bytes.
std::size_t default_seed_length(std::size_t k);

// Uniform over the instance's support pairs.
Population pair_population(const PadSource& inst);

// q(i, y) = pad_bit(i, y, j) xor q_hat(i). q_hat must be a {0,1}-valued table
// over [N]; on the support the lifted query equals q_hat.
Query lift_query(const Query& q_hat, std::shared_ptr<const PadSource> inst, std::size_t j);
Query lift_bits(std::shared_ptr<const std::vector<std::uint8_t>> base,
                std::shared_ptr<const PadSource> inst, std::size_t j);

// (i, y) -> q_star(i). Preserves the gap exactly because the population
// lives on one point per index.
Query lift_final_query(const Query& q_star);

using GeneralMechanismFactory =
    std::function<std::unique_ptr<GeneralMechanism>(const Dataset&, const Population&)>;

// Runs an arbitrary mechanism inside the natural game: draws its own masks,
// lifts the index sample to pairs, and answers each partial query by handing
// the mechanism the lifted query built from on-sample values (and zeros
// off-sample).
class SimulatedNaturalMechanism : public NaturalMechanism {
 public:
  SimulatedNaturalMechanism(const GeneralMechanismFactory& factory, std::vector<std::size_t> sample,
                            std::size_t N, std::size_t k, Rng& mask_rng);

  double answer(std::span<const double> sample_values) override;

  const Dataset& lifted_sample() const { return X_; }
  std::shared_ptr<const MaskInstance> instance() const { return inst_; }
  // Query handed to the mechanism in the most recent round.
  const Query* last_query() const { return last_.get(); }

 private:
  std::vector<std::size_t> sample_;
  std::shared_ptr<const MaskInstance> inst_;
  Dataset X_;
  std::unique_ptr<GeneralMechanism> mech_;
  std::size_t round_ = 0;
  std::unique_ptr<Query> last_;
};

std::unique_ptr<NaturalMechanism> simulate_natural(const GeneralMechanismFactory& factory,
                                                   std::vector<std::size_t> sample, std::size_t N,
                                                   std::size_t k, Rng& mask_rng);

}  // namespace phg

#endif  // PHG_LIFTING_H_
