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

#ifndef PHG_BITS_H_
#define PHG_BITS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phg {

class Rng;

// Fixed-width bit vector. Bit 0 is the most significant bit wherever a
// numeric reading is taken, so equal-width strings order the same way as
// the big-endian integers they spell.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size);

  // `width` low bits of `value`, most significant first. width <= 64.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  // Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view bits);
  // First `size` bits of `bytes`, each byte read most significant bit first.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t size);
  static BitString random(std::size_t size, Rng& rng);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1;
  }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (63 - (i & 63)); }

  // Numeric value; requires size() <= 64.
  std::uint64_t to_uint() const;
  std::string to_string() const;
  // ceil(size / 8) bytes, most significant bit first, zero padded.
  std::vector<std::uint8_t> to_bytes() const;

  std::size_t popcount() const;

  // Bits [pos, pos + len).
  BitString slice(std::size_t pos, std::size_t len) const;
  void append(const BitString& other);

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  friend bool operator==(const BitString&, const BitString&) = default;
  // Shorter strings order first; equal widths order numerically.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

  std::size_t hash() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

}  // namespace phg

template <>
struct std::hash<phg::BitString> {
  std::size_t operator()(const phg::BitString& b) const noexcept { return b.hash(); }
};

#endif  // PHG_BITS_H_
