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

#include "phg/composition.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "phg/errors.h"

namespace phg {
namespace {

BigInt pow2(std::size_t e) { return BigInt(1) << e; }

void shuffle(std::vector<BitString>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

std::size_t check_width(std::span<const BitString> elems) {
  if (elems.empty()) throw std::invalid_argument("empty element list");
  const std::size_t d = elems.front().size();
  for (const auto& e : elems) {
    if (e.size() != d) throw std::invalid_argument("elements have different widths");
  }
  return d;
}

// Least k with k! >= 2^bits.
std::size_t min_key_length(std::size_t bits) {
  const BigInt target = pow2(bits);
  BigInt f = 1;
  std::size_t k = 1;
  while (f < target) f *= ++k;
  return k;
}

std::vector<std::uint64_t> histogram_c(const EncrypermuteParams& params, const DatasetSource& source,
                                       std::size_t trials, Rng& rng) {
  const BigInt modulus = factorial(params.k);
  if (modulus > 10000) throw std::invalid_argument("uniformity test needs k! <= 10^4");
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(modulus));
  for (std::size_t t = 0; t < trials; ++t) {
    auto X = source(rng);
    shuffle(X, rng);
    const BigInt c = encrypermute(X, params, rng);
    ++counts[static_cast<std::size_t>(c)];
  }
  return counts;
}

}  // namespace

BigInt factorial(std::size_t k) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    BigInt x = 0;
    std::size_t have = 0;
    while (have < bits) {
      x = (x << 64) | BigInt(rng.next_u64());
      have += 64;
    }
    x >>= (have - bits);
    if (x < bound) return x;
  }
}

bool all_distinct(std::span<const BitString> elems) {
  std::unordered_set<BitString> seen;
  seen.reserve(elems.size());
  for (const auto& e : elems) {
    if (!seen.insert(e).second) return false;
  }
  return true;
}

std::size_t default_element_bits(std::size_t n) {
  if (n == 0) throw std::invalid_argument("default_element_bits: n must be positive");
  const std::size_t ceil_log = n <= 1 ? 0 : std::bit_width(n - 1);
  return 5 * std::max<std::size_t>(ceil_log, 1);
}

PermRank perm_rank(std::span<const BitString> prefix) {
  const std::size_t k = prefix.size();
  if (k > 0) check_width(prefix);
  if (!all_distinct(prefix)) throw std::invalid_argument("perm_rank: repeated element in prefix");

  // sigma lists positions in increasing order of their elements.
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::sort(sigma.begin(), sigma.end(), [&](std::size_t a, std::size_t b) { return prefix[a] < prefix[b]; });

  // Lehmer code of sigma in the factorial number system.
  BigInt rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < k; ++j) smaller_after += sigma[j] < sigma[i];
    rank = rank * (k - i) + smaller_after;
  }
  return {rank, factorial(k)};
}

void EncrypermuteParams::validate() const {
  if (k == 0 || t == 0 || d == 0) throw std::invalid_argument("Encrypermute: k, t, d must be positive");
  if (k + t > n) throw std::invalid_argument("Encrypermute: k + t exceeds n");
  if (pow2(d * t) > factorial(k)) throw std::invalid_argument("Encrypermute: 2^(d t) exceeds k!");
}

BigInt encode_block(std::span<const BitString> elems, std::size_t d) {
  BigInt m = 0;
  for (const auto& e : elems) {
    if (e.size() != d) throw std::invalid_argument("encode_block: element width differs from d");
    if (d <= 64) {
      m = (m << d) | BigInt(e.to_uint());
    } else {
      for (std::size_t i = 0; i < d; ++i) m = (m << 1) | BigInt(e.get(i) ? 1 : 0);
    }
  }
  return m;
}

std::vector<BitString> decode_block(const BigInt& m, std::size_t t, std::size_t d) {
  if (m < 0 || m >= pow2(d * t)) throw DecryptionError("decode_block: value outside [0, 2^(d t))");
  std::vector<BitString> out(t, BitString(d));
  BigInt rest = m;
  const BigInt mask = pow2(d) - 1;
  for (std::size_t e = t; e-- > 0;) {
    const BigInt chunk = rest & mask;
    rest >>= d;
    if (d <= 64) {
      out[e] = BitString::from_uint(static_cast<std::uint64_t>(chunk), d);
    } else {
      for (std::size_t i = 0; i < d; ++i) out[e].set(i, boost::multiprecision::bit_test(chunk, d - 1 - i));
    }
  }
  return out;
}

BigInt encrypermute(std::span<const BitString> X, const EncrypermuteParams& params, Rng& rng) {
  params.validate();
  if (X.size() != params.n) throw std::invalid_argument("encrypermute: dataset size differs from n");
  if (check_width(X) != params.d) throw std::invalid_argument("encrypermute: element width differs from d");
  if (!all_distinct(X)) return uniform_below(factorial(params.k), rng);

  const PermRank r = perm_rank(X.first(params.k));
  const BigInt m = encode_block(X.subspan(params.k, params.t), params.d);
  return (m + r.value) % r.modulus;
}

std::vector<BitString> decrypt_round(const BigInt& c, std::span<const BitString> known_prefix,
                                     const EncrypermuteParams& params) {
  params.validate();
  if (known_prefix.size() != params.k) throw std::invalid_argument("decrypt_round: prefix length differs from k");
  const PermRank r = perm_rank(known_prefix);
  if (c < 0 || c >= r.modulus) throw DecryptionError("decrypt_round: ciphertext outside [0, k!)");
  const BigInt m = (c + r.modulus - r.value) % r.modulus;
  return decode_block(m, params.t, params.d);
}

CompositionSchedule CompositionSchedule::make(std::size_t n, double alpha) {
  return make(n, alpha, default_element_bits(n));
}

CompositionSchedule CompositionSchedule::make(std::size_t n, double alpha, std::size_t d) {
  if (n < 2) throw std::invalid_argument("CompositionSchedule: n must be at least 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("CompositionSchedule: alpha must lie in (0, 1)");
  CompositionSchedule s;
  s.alpha = alpha;
  s.n = n;
  s.d = d;
  auto root = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), alpha) - 1e-9));
  s.prefix = std::min(n, std::max(root, min_key_length(d)));

  std::size_t k = s.prefix;
  while (k < n) {
    auto t = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(k) / 20.0));
    t = std::min(std::max<std::size_t>(t, 1), n - k);
    const BigInt kf = factorial(k);
    while (t > 1 && pow2(d * t) > kf) --t;
    EncrypermuteParams p{k, t, d, n};
    p.validate();
    s.stages.push_back(p);
    k += t;
  }
  return s;
}

Query membership_query(std::span<const BitString> elems, std::size_t d) {
  return Query::membership(std::unordered_set<BitString>(elems.begin(), elems.end()), d);
}

CompositionAttackResult composition_attack(std::span<const BitString> prefix, std::span<const BigInt> outputs,
                                           const CompositionSchedule& schedule) {
  CompositionAttackResult r;
  if (prefix.size() != schedule.prefix || outputs.size() != schedule.stages.size()) {
    r.failure = "transcript does not match the schedule";
    return r;
  }
  r.dataset.assign(prefix.begin(), prefix.end());
  for (std::size_t i = 0; i < schedule.stages.size(); ++i) {
    const auto& stage = schedule.stages[i];
    try {
      auto revealed = decrypt_round(outputs[i], std::span<const BitString>(r.dataset).first(stage.k), stage);
      r.dataset.insert(r.dataset.end(), revealed.begin(), revealed.end());
    } catch (const DecryptionError& e) {
      r.failure = "stage " + std::to_string(i) + ": " + e.what();
      return r;
    } catch (const std::invalid_argument& e) {
      r.failure = "stage " + std::to_string(i) + ": " + e.what();
      return r;
    }
  }
  r.success = r.dataset.size() == schedule.n;
  if (!r.success) {
    r.failure = "schedule did not cover the dataset";
    return r;
  }
  r.membership = membership_query(r.dataset, schedule.d);
  return r;
}

std::size_t default_prg_seed_bits(std::size_t k) {
  if (k < 2) return 0;
  return static_cast<std::size_t>(std::floor(static_cast<double>(k) / 8.0 * std::log2(static_cast<double>(k))));
}

BitString low_bits(const BigInt& p, std::size_t ell) {
  BitString s(ell);
  for (std::size_t i = 0; i < ell; ++i) s.set(i, boost::multiprecision::bit_test(p, ell - 1 - i));
  return s;
}

BitString prg_encrypermute(std::span<const BitString> X, std::size_t k, std::size_t ell, const Expander& g,
                           Rng& rng) {
  if (ell < kMinSeedBits) throw std::invalid_argument("prg_encrypermute: seed length below 16 bits");
  if (k == 0 || k >= X.size()) throw std::invalid_argument("prg_encrypermute: need 1 <= k < n");
  const std::size_t d = check_width(X);

  const BigInt p = all_distinct(X) ? perm_rank(X.first(k)).value : uniform_below(factorial(k), rng);
  const BitString key = g.expand(low_bits(p, ell), d * (X.size() - k));
  BitString m;
  for (const auto& x : X.subspan(k)) m.append(x);
  return m ^ key;
}

std::vector<BitString> prg_decrypt(const BitString& c, std::span<const BitString> known_prefix, std::size_t ell,
                                   const Expander& g) {
  if (ell < kMinSeedBits) throw std::invalid_argument("prg_decrypt: seed length below 16 bits");
  const std::size_t d = check_width(known_prefix);
  if (c.size() % d != 0) throw std::invalid_argument("prg_decrypt: ciphertext is not a whole number of elements");
  const BitString m = c ^ g.expand(low_bits(perm_rank(known_prefix).value, ell), c.size());
  std::vector<BitString> out;
  out.reserve(c.size() / d);
  for (std::size_t pos = 0; pos < c.size(); pos += d) out.push_back(m.slice(pos, d));
  return out;
}

Rational low_bits_sd(std::uint64_t N, std::size_t ell) {
  if (N == 0 || N > (std::uint64_t{1} << 24)) throw std::invalid_argument("low_bits_sd: need 1 <= N <= 2^24");
  const std::size_t ceil_log = N <= 1 ? 0 : std::bit_width(N - 1);
  if (ell > ceil_log) throw std::invalid_argument("low_bits_sd: ell exceeds ceil(log2 N)");

  const std::uint64_t cells = std::uint64_t{1} << ell;
  const std::uint64_t mask = cells - 1;
  std::vector<std::uint64_t> counts(cells, 0);
  for (std::uint64_t v = 0; v < N; ++v) ++counts[v & mask];

  // SD = sum_s |count_s / N - 2^-ell| / 2 = sum_s |count_s 2^ell - N| / (2 N 2^ell).
  BigInt num = 0;
  for (auto c : counts) {
    const BigInt scaled = BigInt(c) * cells;
    num += scaled >= N ? scaled - N : BigInt(N) - scaled;
  }
  return Rational(num, BigInt(2) * N * cells);
}

UniformityReport encrypermute_uniformity_test(const EncrypermuteParams& params, const DatasetSource& source,
                                              std::size_t trials, Rng& rng) {
  UniformityReport r;
  r.counts = histogram_c(params, source, trials, rng);
  r.fit = chi_square_uniform(r.counts);
  return r;
}

ChiSquareResult encrypermute_two_sample_test(const EncrypermuteParams& params, std::span<const BitString> first,
                                             std::span<const BitString> second, std::size_t trials, Rng& rng) {
  const std::vector<BitString> a(first.begin(), first.end());
  const std::vector<BitString> b(second.begin(), second.end());
  const auto ca = histogram_c(params, [&](Rng&) { return a; }, trials, rng);
  const auto cb = histogram_c(params, [&](Rng&) { return b; }, trials, rng);
  return chi_square_two_sample(ca, cb);
}

}  // namespace phg
