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

#include "phg/random.h"

#include <sodium.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace phg {
namespace {

void store_le(std::uint64_t v, unsigned char* out) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

std::uint64_t load_le(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[i];
  return v;
}

// Bernoulli(p) for up to 64 lanes at once. `p_bits` is floor(p * 2^64).
std::uint64_t bernoulli_lanes(std::mt19937_64& engine, std::uint64_t p_bits) {
  std::uint64_t result = 0;
  std::uint64_t undecided = ~std::uint64_t{0};
  for (int b = 63; b >= 0 && undecided != 0; --b) {
    // Remaining bits of p are all zero: every undecided lane has U >= p.
    if ((p_bits & ((b == 63) ? ~std::uint64_t{0}
                             : ((std::uint64_t{1} << (b + 1)) - 1))) == 0) {
      break;
    }
    const std::uint64_t r = engine();
    if ((p_bits >> b) & 1) {
      result |= undecided & ~r;
      undecided &= r;
    } else {
      undecided &= ~r;
    }
  }
  return result;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
  std::array<unsigned char, 16> in{};
  store_le(seed, in.data());
  store_le(index, in.data() + 8);
  std::array<unsigned char, 8> out{};
  crypto_generichash(out.data(), out.size(), in.data(), in.size(), nullptr, 0);
  return load_le(out.data());
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Rejection on the largest multiple of bound that fits in 64 bits.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x <= limit) return x % bound;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

void Rng::fill_bernoulli(double p, std::span<std::uint8_t> out) {
  if (!(p > 0.0)) {
    std::fill(out.begin(), out.end(), std::uint8_t{0});
    return;
  }
  if (p >= 1.0) {
    std::fill(out.begin(), out.end(), std::uint8_t{1});
    return;
  }
  const auto p_bits = static_cast<std::uint64_t>(std::ldexp(p, 64));
  std::size_t i = 0;
  while (i < out.size()) {
    const std::uint64_t lanes = bernoulli_lanes(engine_, p_bits);
    const std::size_t take = std::min<std::size_t>(64, out.size() - i);
    for (std::size_t b = 0; b < take; ++b) {
      out[i + b] = static_cast<std::uint8_t>((lanes >> b) & 1);
    }
    i += take;
  }
}

}  // namespace phg
