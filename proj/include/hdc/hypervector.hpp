#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/kernels.hpp"
#include "hdc/op_counter.hpp"
#include "hdc/random.hpp"

namespace hdc {

/// Dense binary hypervector packed into 32-bit words.
///
/// Padding bits (indices >= dimension() in the last word) are zero after every
/// public operation. A default-constructed vector has dimension 0 and only
/// exists as a placeholder; every constructor that takes a dimension rejects 0.
class Hypervector {
 public:
  Hypervector() = default;

  explicit Hypervector(std::size_t dim) : dim_(dim), words_(words_for(dim), 0) {
    if (dim == 0) fail(ErrorKind::invalid_dimension, "hypervector dimension must be >= 1");
  }

  /// Adopts `words`; padding bits are cleared.
  static Hypervector from_words(std::size_t dim, std::vector<Word> words) {
    if (dim == 0) fail(ErrorKind::invalid_dimension, "hypervector dimension must be >= 1");
    if (words.size() != words_for(dim)) {
      fail(ErrorKind::invalid_argument, "word count " + std::to_string(words.size()) +
                                            " does not match dimension " + std::to_string(dim));
    }
    Hypervector hv;
    hv.dim_ = dim;
    hv.words_ = std::move(words);
    hv.clear_padding();
    return hv;
  }

  static Hypervector ones(std::size_t dim) {
    Hypervector hv(dim);
    for (auto& w : hv.words_) w = ~Word{0};
    hv.clear_padding();
    return hv;
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const Word> words() const noexcept { return words_; }

  /// Mutable word access for kernels. Writers must leave padding bits zero.
  std::span<Word> mutable_words() noexcept { return words_; }

  bool operator[](std::size_t j) const noexcept {
    return (words_[j / kWordBits] >> (j % kWordBits)) & 1U;
  }

  void clear_padding() noexcept {
    if (!words_.empty()) words_.back() &= valid_mask(dim_, words_.size() - 1);
  }

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Word> words_;
};

inline void require_same_dimension(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    fail(ErrorKind::dimension_mismatch, std::string(what) + ": dimension " + std::to_string(a) +
                                            " vs " + std::to_string(b));
  }
}

enum class GenerationMode {
  iid,       ///< every component an independent fair coin
  balanced,  ///< exactly floor(D/2) ones at uniformly random positions
};

/// Seed hypervector `index` of the stream keyed by `seed`.
///
/// In iid mode word w is the low half of counter_hash(seed, index, w), so any
/// word can be generated independently. Balanced mode runs a partial
/// Fisher-Yates shuffle over component positions.
inline Hypervector random_hypervector(RngSeed seed, std::uint64_t index, std::size_t dim,
                                      GenerationMode mode = GenerationMode::iid) {
  if (dim == 0) fail(ErrorKind::invalid_dimension, "random_hypervector: dimension must be >= 1");
  Hypervector hv(dim);
  auto words = hv.mutable_words();
  if (mode == GenerationMode::iid) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      words[w] = static_cast<Word>(counter_hash(seed.value, index, w));
    }
    hv.clear_padding();
    return hv;
  }
  std::vector<std::uint32_t> positions(dim);
  std::iota(positions.begin(), positions.end(), 0U);
  SplitMix64 rng(counter_hash(seed.value, index, ~std::uint64_t{0}));
  const std::size_t ones = dim / 2;
  for (std::size_t i = 0; i < ones; ++i) {
    const std::size_t pick = i + rng.bounded(dim - i);
    std::swap(positions[i], positions[pick]);
    const std::size_t j = positions[i];
    words[j / kWordBits] |= Word{1} << (j % kWordBits);
  }
  return hv;
}

inline Hypervector bind(const Hypervector& a, const Hypervector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "bind");
  Hypervector out(a.dimension());
  auto dst = out.mutable_words();
  auto x = a.words();
  auto y = b.words();
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = x[w] ^ y[w];
  op_counter().add(a.dimension());
  return out;
}

inline Hypervector complement(const Hypervector& a) {
  Hypervector out(a.dimension());
  auto dst = out.mutable_words();
  auto src = a.words();
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = ~src[w];
  out.clear_padding();
  return out;
}

/// Reduces any signed rotation amount to [0, dim).
constexpr std::size_t normalize_shift(std::int64_t k, std::size_t dim) noexcept {
  const auto d = static_cast<std::int64_t>(dim);
  std::int64_t r = k % d;
  if (r < 0) r += d;
  return static_cast<std::size_t>(r);
}

/// Circular rotation by `k` positions toward higher component indices.
inline Hypervector permute(const Hypervector& a, std::int64_t k) {
  const std::size_t dim = a.dimension();
  if (dim == 0) fail(ErrorKind::invalid_dimension, "permute: empty hypervector");
  const std::size_t shift = normalize_shift(k, dim);
  Hypervector out(dim);
  auto dst = out.mutable_words();
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = rotated_word(a.words(), dim, shift, w);
  op_counter().add(dim);
  return out;
}

inline bool extract_bit(const Hypervector& a, std::size_t j) {
  if (j >= a.dimension()) {
    fail(ErrorKind::out_of_range, "extract_bit: index " + std::to_string(j) +
                                      " >= dimension " + std::to_string(a.dimension()));
  }
  return a[j];
}

inline Hypervector insert_bit(Hypervector a, std::size_t j, bool value) {
  if (j >= a.dimension()) {
    fail(ErrorKind::out_of_range, "insert_bit: index " + std::to_string(j) +
                                      " >= dimension " + std::to_string(a.dimension()));
  }
  auto words = a.mutable_words();
  const Word mask = Word{1} << (j % kWordBits);
  if (value) {
    words[j / kWordBits] |= mask;
  } else {
    words[j / kWordBits] &= ~mask;
  }
  return a;
}

inline std::size_t popcount(const Hypervector& a) noexcept {
  std::size_t n = 0;
  for (Word w : a.words()) n += static_cast<std::size_t>(std::popcount(w));
  op_counter().add(a.dimension());
  return n;
}

inline std::size_t hamming(const Hypervector& a, const Hypervector& b) {
  require_same_dimension(a.dimension(), b.dimension(), "hamming");
  std::size_t n = 0;
  auto x = a.words();
  auto y = b.words();
  for (std::size_t w = 0; w < x.size(); ++w) n += static_cast<std::size_t>(std::popcount(x[w] ^ y[w]));
  op_counter().add(a.dimension());
  return n;
}

inline double normalized_hamming(const Hypervector& a, const Hypervector& b) {
  return static_cast<double>(hamming(a, b)) / static_cast<double>(a.dimension());
}

/// Per-component ones-counts of a bundle under construction.
class Accumulator {
 public:
  Accumulator() = default;

  explicit Accumulator(std::size_t dim) : dim_(dim), counts_(dim, 0) {
    if (dim == 0) fail(ErrorKind::invalid_dimension, "accumulator dimension must be >= 1");
  }

  /// Restores a persisted accumulator; validates 0 <= counts[j] <= total.
  static Accumulator from_counts(std::vector<std::uint32_t> counts, std::uint64_t total) {
    if (counts.empty()) fail(ErrorKind::invalid_dimension, "accumulator dimension must be >= 1");
    for (auto c : counts) {
      if (c > total) fail(ErrorKind::invalid_argument, "accumulator count exceeds total");
    }
    Accumulator acc;
    acc.dim_ = counts.size();
    acc.counts_ = std::move(counts);
    acc.total_ = total;
    return acc;
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::uint64_t total() const noexcept { return total_; }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }

  void add(const Hypervector& v) {
    require_same_dimension(dim_, v.dimension(), "accumulate");
    auto words = v.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      Word bits = words[w];
      while (bits != 0) {
        ++counts_[w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
    }
    ++total_;
    op_counter().add(dim_);
  }

  void merge(const Accumulator& other) {
    require_same_dimension(dim_, other.dim_, "accumulator merge");
    for (std::size_t j = 0; j < dim_; ++j) counts_[j] += other.counts_[j];
    total_ += other.total_;
  }

  /// Adds externally computed counts for components [begin, end), e.g. one
  /// worker's share of a bundle. The caller bumps the total separately.
  void add_counts(std::size_t begin, std::span<const std::uint32_t> counts) noexcept {
    for (std::size_t i = 0; i < counts.size(); ++i) counts_[begin + i] += counts[i];
  }
  void add_total(std::uint64_t n) noexcept { total_ += n; }
  std::span<std::uint32_t> mutable_counts() noexcept { return counts_; }

  friend bool operator==(const Accumulator&, const Accumulator&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint32_t> counts_;
  std::uint64_t total_ = 0;
};

inline Accumulator accumulate(Accumulator acc, const Hypervector& v) {
  acc.add(v);
  return acc;
}

/// Majority readout: 1 where counts*2 > total, 0 where counts*2 < total, and
/// tiebreak[j] on exact ties (possible only for even totals).
inline Hypervector threshold_majority(const Accumulator& acc, const Hypervector& tiebreak) {
  if (acc.total() == 0) fail(ErrorKind::empty_bundle, "threshold_majority: empty bundle");
  require_same_dimension(acc.dimension(), tiebreak.dimension(), "threshold_majority");
  Hypervector out(acc.dimension());
  auto dst = out.mutable_words();
  auto counts = acc.counts();
  const std::uint64_t total = acc.total();
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const std::uint64_t twice = 2 * std::uint64_t{counts[j]};
    const bool bit = twice > total || (twice == total && tiebreak[j]);
    if (bit) dst[j / kWordBits] |= Word{1} << (j % kWordBits);
  }
  op_counter().add(acc.dimension());
  return out;
}

/// Direct majority of a list of vectors; `tiebreak` only matters for an even
/// number of inputs.
inline Hypervector majority(std::span<const Hypervector> inputs, const Hypervector& tiebreak) {
  if (inputs.empty()) fail(ErrorKind::empty_bundle, "majority: empty bundle");
  const std::size_t dim = inputs.front().dimension();
  for (const auto& v : inputs) require_same_dimension(dim, v.dimension(), "majority");
  require_same_dimension(dim, tiebreak.dimension(), "majority tiebreak");
  Hypervector out(dim);
  auto dst = out.mutable_words();
  std::vector<Word> column(inputs.size());
  for (std::size_t w = 0; w < dst.size(); ++w) {
    for (std::size_t i = 0; i < inputs.size(); ++i) column[i] = inputs[i].words()[w];
    dst[w] = majority_word(column, tiebreak.words()[w]);
  }
  op_counter().add(dim * inputs.size());
  return out;
}

// Hex text form: "<dimension>:" followed by each word as 8 lowercase hex
// digits, most significant nibble first, words in index order.

inline std::string to_hex(const Hypervector& hv) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = std::to_string(hv.dimension());
  out.push_back(':');
  out.reserve(out.size() + hv.word_count() * 8);
  for (Word w : hv.words()) {
    for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kDigits[(w >> shift) & 0xFU]);
  }
  return out;
}

inline Hypervector from_hex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    fail(ErrorKind::parse_error, "hypervector hex: missing '<dimension>:' prefix");
  }
  std::size_t dim = 0;
  for (char c : text.substr(0, colon)) {
    if (c < '0' || c > '9') fail(ErrorKind::parse_error, "hypervector hex: bad dimension");
    dim = dim * 10 + static_cast<std::size_t>(c - '0');
  }
  if (dim == 0) fail(ErrorKind::invalid_dimension, "hypervector hex: dimension must be >= 1");
  const auto digits = text.substr(colon + 1);
  const std::size_t n_words = words_for(dim);
  if (digits.size() != n_words * 8) {
    fail(ErrorKind::parse_error, "hypervector hex: expected " + std::to_string(n_words * 8) +
                                     " digits, got " + std::to_string(digits.size()));
  }
  std::vector<Word> words(n_words, 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    Word nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<Word>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<Word>(c - 'a' + 10);
    } else {
      fail(ErrorKind::parse_error, "hypervector hex: invalid digit");
    }
    words[i / 8] = (words[i / 8] << 4) | nibble;
  }
  if ((words.back() & ~valid_mask(dim, n_words - 1)) != 0) {
    fail(ErrorKind::parse_error, "hypervector hex: padding bits set");
  }
  return Hypervector::from_words(dim, std::move(words));
}

}  // namespace hdc
