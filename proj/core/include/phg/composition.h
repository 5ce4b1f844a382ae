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

#ifndef PHG_COMPOSITION_H_
#define PHG_COMPOSITION_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phg/bits.h"
#include "phg/prg.h"
#include "phg/query.h"
#include "phg/random.h"
#include "phg/stats.h"

namespace phg {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(std::size_t k);

// Uniform on {0, ..., bound - 1} by rejection on bit-length draws.
BigInt uniform_below(const BigInt& bound, Rng& rng);

bool all_distinct(std::span<const BitString> elems);

// 5 * ceil(log2 n): n uniform d-bit elements collide with probability at
// most 1 / (2 n^3).
std::size_t default_element_bits(std::size_t n);

struct PermRank {
  BigInt value;    // in [0, k!)
  BigInt modulus;  // k!
};

// Lexicographic (Lehmer-code) rank of the index permutation sigma with
// x_sigma(1) < ... < x_sigma(k), comparing elements as big-endian integers.
// Throws std::invalid_argument on repeated elements.
PermRank perm_rank(std::span<const BitString> prefix);

struct EncrypermuteParams {
  std::size_t k = 0;  // prefix length (the key)
  std::size_t t = 0;  // payload length in elements
  std::size_t d = 0;  // bits per element
  std::size_t n = 0;  // dataset size

  // k + t <= n, t >= 1 and 2^(d t) <= k!.
  void validate() const;
};

// Big-endian concatenation of d-bit elements read as one integer.
BigInt encode_block(std::span<const BitString> elems, std::size_t d);
// Inverse of encode_block; requires 0 <= m < 2^(d t).
std::vector<BitString> decode_block(const BigInt& m, std::size_t t, std::size_t d);

// c = (m + r) mod k!, where r ranks the first k elements and m encodes the
// next t. A dataset with repeated elements gets a uniformly random c.
BigInt encrypermute(std::span<const BitString> X, const EncrypermuteParams& params, Rng& rng);

// Recovers elements k+1..k+t from c and the known first k. Throws
// DecryptionError when the recovered block is out of range.
std::vector<BitString> decrypt_round(const BigInt& c, std::span<const BitString> known_prefix,
                                     const EncrypermuteParams& params);

// Stages of growing prefix length that together reveal the whole dataset
// once the first `prefix` elements are public.
struct CompositionSchedule {
  double alpha = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t prefix = 0;  // elements published by the first mechanism
  std::vector<EncrypermuteParams> stages;

  // prefix = max(ceil(n^alpha), least k with k! >= 2^d), capped at n;
  // t_i = max(1, floor(alpha k_i / 20)), shrunk until 2^(d t_i) <= k_i!;
  // k_{i+1} = k_i + t_i until the dataset is covered.
  static CompositionSchedule make(std::size_t n, double alpha);
  static CompositionSchedule make(std::size_t n, double alpha, std::size_t d);
};

// Membership predicate: +1 on the given elements, -1 elsewhere in {0,1}^d.
Query membership_query(std::span<const BitString> elems, std::size_t d);

struct CompositionAttackResult {
  bool success = false;
  std::vector<BitString> dataset;  // reconstruction, in order
  std::optional<Query> membership;
  std::string failure;
};

// Chains decrypt_round across the schedule starting from the published
// prefix. Any out-of-range stage is reported as a failure, not thrown.
CompositionAttackResult composition_attack(std::span<const BitString> prefix, std::span<const BigInt> outputs,
                                           const CompositionSchedule& schedule);

// floor((k / 8) log2 k).
std::size_t default_prg_seed_bits(std::size_t k);

// The `ell` least significant bits of p, most significant first.
BitString low_bits(const BigInt& p, std::size_t ell);

// c = (elements k+1..n) xor G(s), s = ell low bits of the prefix rank (of a
// uniform draw in [0, k!) when X repeats an element). ell >= 16, k < n.
BitString prg_encrypermute(std::span<const BitString> X, std::size_t k, std::size_t ell, const Expander& g,
                           Rng& rng);

// Recomputes the key from the known prefix and strips it from c.
std::vector<BitString> prg_decrypt(const BitString& c, std::span<const BitString> known_prefix, std::size_t ell,
                                   const Expander& g);

// Exact statistical distance between the ell low bits of a uniform draw from
// {0, ..., N-1} and the uniform distribution on {0,1}^ell, by counting.
// N <= 2^24, ell <= ceil(log2 N).
Rational low_bits_sd(std::uint64_t N, std::size_t ell);

struct UniformityReport {
  std::vector<std::uint64_t> counts;  // histogram of c over {0, ..., k! - 1}
  ChiSquareResult fit;
};

using DatasetSource = std::function<std::vector<BitString>(Rng&)>;

// Each trial draws D from `source`, shuffles it uniformly and histograms the
// Encrypermute output. Requires k! <= 10^4.
UniformityReport encrypermute_uniformity_test(const EncrypermuteParams& params, const DatasetSource& source,
                                              std::size_t trials, Rng& rng);

// Histograms c for uniformly shuffled copies of two fixed datasets and tests
// the two histograms for homogeneity.
ChiSquareResult encrypermute_two_sample_test(const EncrypermuteParams& params, std::span<const BitString> first,
                                             std::span<const BitString> second, std::size_t trials, Rng& rng);

}  // namespace phg

#endif  // PHG_COMPOSITION_H_
