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

#include "phg/bits.h"

#include <bit>
#include <stdexcept>

#include "phg/random.h"

namespace phg {

BitString::BitString(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw std::invalid_argument("BitString::from_uint: width > 64");
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.set(i, (value >> (width - 1 - i)) & 1);
  }
  return out;
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitString::from_string: expected '0' or '1'");
    }
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t size) {
  if (bytes.size() * 8 < size) throw std::invalid_argument("BitString::from_bytes: too few bytes");
  BitString out(size);
  // Whole words first; the tail is masked off below.
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::uint64_t word = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      const std::size_t idx = w * 8 + b;
      word = (word << 8) | (idx < bytes.size() ? bytes[idx] : 0);
    }
    out.words_[w] = word;
  }
  if (const std::size_t tail = size & 63; tail != 0) {
    out.words_.back() &= ~std::uint64_t{0} << (64 - tail);
  }
  return out;
}

BitString BitString::random(std::size_t size, Rng& rng) {
  BitString out(size);
  for (auto& w : out.words_) w = rng.next_u64();
  if (const std::size_t tail = size & 63; tail != 0) {
    out.words_.back() &= ~std::uint64_t{0} << (64 - tail);
  }
  return out;
}

void BitString::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (63 - (i & 63));
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::uint64_t BitString::to_uint() const {
  if (size_ > 64) throw std::out_of_range("BitString::to_uint: more than 64 bits");
  if (size_ == 0) return 0;
  return words_[0] >> (64 - size_);
}

std::string BitString::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((size_ + 7) / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (56 - 8 * (i % 8)));
  }
  return out;
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > size_) throw std::out_of_range("BitString::slice: out of range");
  BitString out(len);
  for (std::size_t i = 0; i < len; ++i) out.set(i, get(pos + i));
  return out;
}

void BitString::append(const BitString& other) {
  const std::size_t old = size_;
  size_ += other.size_;
  words_.resize((size_ + 63) / 64, 0);
  for (std::size_t i = 0; i < other.size_; ++i) set(old + i, other.get(i));
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitString: xor of different widths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (auto c = a.words_[w] <=> b.words_[w]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t BitString::hash() const {
  // FNV-1a over the packed words; tail bits are always zero.
  std::uint64_t h = 1469598103934665603ull ^ size_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  return (a ^ b).popcount();
}

}  // namespace phg
