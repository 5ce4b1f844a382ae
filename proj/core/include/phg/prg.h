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

#ifndef PHG_PRG_H_
#define PHG_PRG_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>

#include "phg/bits.h"
#include "phg/random.h"

namespace phg {

// Deterministic expander G: {0,1}^l -> {0,1}^*. Implementations must be
// pure functions of (seed, position).
class Expander {
 public:
  virtual ~Expander() = default;
  virtual BitString expand(const BitString& seed, std::size_t out_len) const = 0;
  // Bit `index` of the expansion; the default expands a prefix.
  virtual bool bit(const BitString& seed, std::size_t index) const {
    return expand(seed, index + 1).get(index);
  }
};

// Keyed stream expander: key = BLAKE2b-256("phg.prg.v1" || u32le(l) ||
// seed bytes), output = ChaCha20 (IETF, zero nonce) keystream, read most
// significant bit first. Byte-exact across runs and platforms.
class ChaChaExpander : public Expander {
 public:
  BitString expand(const BitString& seed, std::size_t out_len) const override;
  // Generates only the 64-byte block holding `index`.
  bool bit(const BitString& seed, std::size_t index) const override;
};

// Ideal random function for substitution tests: explicit rows for known
// seeds, fresh uniformly random rows (memoised) for any other seed.
class TableExpander : public Expander {
 public:
  TableExpander(std::size_t row_len, std::uint64_t seed) : row_len_(row_len), rng_(seed) {}
  void assign(const BitString& seed, BitString row);
  BitString expand(const BitString& seed, std::size_t out_len) const override;

 private:
  const BitString& row(const BitString& seed) const;
  std::size_t row_len_;
  mutable Rng rng_;
  mutable std::map<BitString, BitString> rows_;
};

// Minimum accepted seed length.
inline constexpr std::size_t kMinSeedBits = 16;

// G(seed) truncated to out_len bits, with the ChaCha expander. seed >= 16 bits.
BitString prg_expand(const BitString& seed, std::size_t out_len);

}  // namespace phg

#endif  // PHG_PRG_H_
