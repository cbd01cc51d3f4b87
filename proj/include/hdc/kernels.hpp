#pragma once

// Raw word-level kernels over packed 32-bit words. Component j of a vector
// lives in word j / 32 at bit j % 32 (bit 0 is the least significant).
// These operate on word indices so callers can split one vector into
// disjoint word ranges and process them on different workers.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace hdc {

using Word = std::uint32_t;
inline constexpr std::size_t kWordBits = 32;
inline constexpr std::size_t kWordBytes = sizeof(Word);

constexpr std::size_t words_for(std::size_t dim) noexcept {
  return (dim + kWordBits - 1) / kWordBits;
}

/// Mask of the valid bits of word `w` in a `dim`-component vector.
constexpr Word valid_mask(std::size_t dim, std::size_t w) noexcept {
  const std::size_t first = w * kWordBits;
  if (first >= dim) return 0;
  const std::size_t n = dim - first;
  return n >= kWordBits ? ~Word{0} : static_cast<Word>((Word{1} << n) - 1);
}

/// Number of components stored in words [begin, end).
constexpr std::size_t lane_count(std::size_t dim, std::size_t begin, std::size_t end) noexcept {
  const std::size_t lo = std::min(dim, begin * kWordBits);
  const std::size_t hi = std::min(dim, end * kWordBits);
  return hi > lo ? hi - lo : 0;
}

namespace detail {

// Reads n in [1, 32] consecutive components starting at `start`, with
// start + n <= dim (no wrap-around).
inline Word read_bits(std::span<const Word> words, std::size_t start, std::size_t n) noexcept {
  const std::size_t wi = start / kWordBits;
  const std::size_t off = start % kWordBits;
  std::uint64_t v = words[wi] >> off;
  if (off + n > kWordBits) v |= static_cast<std::uint64_t>(words[wi + 1]) << (kWordBits - off);
  if (n < kWordBits) v &= (std::uint64_t{1} << n) - 1;
  return static_cast<Word>(v);
}

}  // namespace detail

/// Word `w` of the vector rotated by `shift` positions toward higher indices:
/// out[j] = in[(j - shift) mod dim]. `shift` must already be in [0, dim).
inline Word rotated_word(std::span<const Word> words, std::size_t dim, std::size_t shift,
                         std::size_t w) noexcept {
  const std::size_t first = w * kWordBits;
  const std::size_t count = std::min(kWordBits, dim - first);
  if (shift == 0) return words[w];
  const std::size_t src = (first + dim - shift) % dim;
  if (src + count <= dim) return detail::read_bits(words, src, count);
  const std::size_t head = dim - src;
  return detail::read_bits(words, src, head) |
         static_cast<Word>(detail::read_bits(words, 0, count - head) << head);
}

/// Bitwise majority of one word position across `inputs`, computed with
/// bit-sliced counters. Components whose ones-count equals exactly half of an
/// even-sized input take the corresponding bit of `tie`.
inline Word majority_word(std::span<const Word> inputs, Word tie) noexcept {
  const std::size_t m = inputs.size();
  const int planes_used = static_cast<int>(std::bit_width(m));
  Word planes[64] = {};
  for (Word x : inputs) {
    Word carry = x;
    for (int p = 0; carry != 0 && p < planes_used; ++p) {
      const Word next = planes[p] & carry;
      planes[p] ^= carry;
      carry = next;
    }
  }
  const std::size_t half = m / 2;
  Word greater = 0;
  Word equal = ~Word{0};
  for (int p = planes_used - 1; p >= 0; --p) {
    if ((half >> p) & 1U) {
      equal &= planes[p];
    } else {
      greater |= equal & planes[p];
      equal &= ~planes[p];
    }
  }
  if (m % 2 == 1) return greater;
  return greater | (equal & tie);
}

}  // namespace hdc
