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

#include "phg/prg.h"

#include <sodium.h>

#include <array>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace phg {
namespace {

constexpr std::string_view kDomain = "phg.prg.v1";
constexpr std::size_t kBlockBytes = 64;

using Key = std::array<unsigned char, crypto_stream_chacha20_ietf_KEYBYTES>;

Key derive_key(const BitString& seed) {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  const auto bytes = seed.to_bytes();
  const auto width = static_cast<std::uint32_t>(seed.size());
  crypto_generichash_state st;
  crypto_generichash_init(&st, nullptr, 0, crypto_stream_chacha20_ietf_KEYBYTES);
  crypto_generichash_update(&st, reinterpret_cast<const unsigned char*>(kDomain.data()), kDomain.size());
  const std::array<unsigned char, 4> w{static_cast<unsigned char>(width), static_cast<unsigned char>(width >> 8),
                                       static_cast<unsigned char>(width >> 16),
                                       static_cast<unsigned char>(width >> 24)};
  crypto_generichash_update(&st, w.data(), w.size());
  crypto_generichash_update(&st, bytes.data(), bytes.size());
  Key key{};
  crypto_generichash_final(&st, key.data(), key.size());
  return key;
}

constexpr std::array<unsigned char, crypto_stream_chacha20_ietf_NONCEBYTES> kNonce{};

}  // namespace

BitString ChaChaExpander::expand(const BitString& seed, std::size_t out_len) const {
  const Key key = derive_key(seed);
  std::vector<std::uint8_t> stream((out_len + 7) / 8);
  if (!stream.empty()) {
    crypto_stream_chacha20_ietf(stream.data(), stream.size(), kNonce.data(), key.data());
  }
  return BitString::from_bytes(stream, out_len);
}

bool ChaChaExpander::bit(const BitString& seed, std::size_t index) const {
  const Key key = derive_key(seed);
  const std::size_t byte = index / 8;
  std::array<unsigned char, kBlockBytes> zeros{};
  std::array<unsigned char, kBlockBytes> block{};
  crypto_stream_chacha20_ietf_xor_ic(block.data(), zeros.data(), block.size(), kNonce.data(),
                                     static_cast<std::uint32_t>(byte / kBlockBytes), key.data());
  return (block[byte % kBlockBytes] >> (7 - index % 8)) & 1;
}

void TableExpander::assign(const BitString& seed, BitString row) {
  if (row.size() != row_len_) throw std::invalid_argument("TableExpander: row length mismatch");
  rows_[seed] = std::move(row);
}

const BitString& TableExpander::row(const BitString& seed) const {
  auto it = rows_.find(seed);
  if (it == rows_.end()) it = rows_.emplace(seed, BitString::random(row_len_, rng_)).first;
  return it->second;
}

BitString TableExpander::expand(const BitString& seed, std::size_t out_len) const {
  if (out_len > row_len_) throw std::invalid_argument("TableExpander: request beyond row length");
  return row(seed).slice(0, out_len);
}

BitString prg_expand(const BitString& seed, std::size_t out_len) {
  if (seed.size() < kMinSeedBits) throw std::invalid_argument("prg_expand: seed shorter than 16 bits");
  return ChaChaExpander{}.expand(seed, out_len);
}

}  // namespace phg
