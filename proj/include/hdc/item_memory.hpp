#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/random.hpp"

namespace hdc {

/// Item memory: one random, nearly orthogonal hypervector per discrete
/// symbol (here, per channel).
class ItemMemory {
 public:
  ItemMemory() = default;

  ItemMemory(RngSeed seed, std::size_t symbols, std::size_t dim,
             GenerationMode mode = GenerationMode::iid)
      : seed_(seed), dim_(dim) {
    if (symbols == 0) fail(ErrorKind::invalid_argument, "item memory needs at least one symbol");
    if (dim == 0) fail(ErrorKind::invalid_dimension, "item memory dimension must be >= 1");
    entries_.reserve(symbols);
    for (std::size_t c = 0; c < symbols; ++c) entries_.push_back(random_hypervector(seed, c, dim, mode));
  }

  /// Memory over caller-provided vectors; the seed is informational only.
  static ItemMemory from_entries(std::vector<Hypervector> entries, RngSeed seed = {}) {
    if (entries.empty()) fail(ErrorKind::invalid_argument, "item memory needs at least one symbol");
    ItemMemory im;
    im.seed_ = seed;
    im.dim_ = entries.front().dimension();
    for (const auto& e : entries) require_same_dimension(im.dim_, e.dimension(), "item memory entries");
    im.entries_ = std::move(entries);
    return im;
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  RngSeed seed() const noexcept { return seed_; }
  const std::vector<Hypervector>& entries() const noexcept { return entries_; }

  const Hypervector& lookup(std::size_t symbol) const {
    if (symbol >= entries_.size()) {
      fail(ErrorKind::out_of_range, "item memory: symbol " + std::to_string(symbol) +
                                        " >= " + std::to_string(entries_.size()));
    }
    return entries_[symbol];
  }

 private:
  RngSeed seed_{};
  std::size_t dim_ = 0;
  std::vector<Hypervector> entries_;
};

inline ItemMemory build_item_memory(RngSeed seed, std::size_t channels, std::size_t dim,
                                    GenerationMode mode = GenerationMode::iid) {
  return ItemMemory(seed, channels, dim, mode);
}

/// Continuous item memory: L level hypervectors between two orthogonal
/// endpoints, plus the analog range they quantize.
///
/// Level 0 is a seeded random vector. A seeded shuffle picks floor(D/2)
/// distinct positions; step p -> p+1 flips the next floor(D/2)/(L-1) of them
/// (the first floor(D/2) % (L-1) steps flip one extra). No position flips
/// twice, so hamming(level p, level q) is exactly the number of positions
/// flipped between p and q and the endpoints differ in exactly floor(D/2).
class ContinuousItemMemory {
 public:
  ContinuousItemMemory() = default;

  ContinuousItemMemory(RngSeed seed, std::size_t levels, std::size_t dim, double min_value,
                       double max_value, GenerationMode mode = GenerationMode::iid)
      : seed_(seed), dim_(dim), min_(min_value), max_(max_value) {
    if (levels < 2) fail(ErrorKind::invalid_argument, "continuous item memory needs >= 2 levels");
    if (dim == 0) fail(ErrorKind::invalid_dimension, "continuous item memory dimension must be >= 1");
    if (!std::isfinite(min_value) || !std::isfinite(max_value) || !(min_value < max_value)) {
      fail(ErrorKind::invalid_argument, "continuous item memory range requires min < max");
    }

    std::vector<std::uint32_t> order(dim);
    for (std::size_t j = 0; j < dim; ++j) order[j] = static_cast<std::uint32_t>(j);
    const std::size_t flips = dim / 2;
    SplitMix64 rng(counter_hash(derive_seed(seed, "cim-flip").value, 0, 0));
    for (std::size_t i = 0; i < flips; ++i) {
      std::swap(order[i], order[i + rng.bounded(dim - i)]);
    }

    levels_.reserve(levels);
    levels_.push_back(random_hypervector(derive_seed(seed, "cim-base"), 0, dim, mode));
    const std::size_t steps = levels - 1;
    std::size_t next = 0;
    for (std::size_t step = 0; step < steps; ++step) {
      const std::size_t count = flips / steps + (step < flips % steps ? 1 : 0);
      Hypervector level = levels_.back();
      auto words = level.mutable_words();
      for (std::size_t i = 0; i < count; ++i, ++next) {
        const std::size_t j = order[next];
        words[j / kWordBits] ^= Word{1} << (j % kWordBits);
      }
      levels_.push_back(std::move(level));
    }
  }

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return levels_.size(); }
  double min_value() const noexcept { return min_; }
  double max_value() const noexcept { return max_; }
  RngSeed seed() const noexcept { return seed_; }
  const std::vector<Hypervector>& levels() const noexcept { return levels_; }

  /// Nearest level for `sample`; round half up, clamped to [0, L-1].
  std::size_t quantize(double sample) const {
    if (!std::isfinite(sample)) fail(ErrorKind::invalid_argument, "quantize: non-finite sample");
    const double top = static_cast<double>(levels_.size() - 1);
    const double scaled = (sample - min_) / (max_ - min_) * top;
    const double rounded = std::floor(scaled + 0.5);
    if (rounded <= 0.0) return 0;
    if (rounded >= top) return levels_.size() - 1;
    return static_cast<std::size_t>(rounded);
  }

  const Hypervector& lookup(std::size_t level) const {
    if (level >= levels_.size()) {
      fail(ErrorKind::out_of_range, "continuous item memory: level " + std::to_string(level) +
                                        " >= " + std::to_string(levels_.size()));
    }
    return levels_[level];
  }

 private:
  RngSeed seed_{};
  std::size_t dim_ = 0;
  double min_ = 0.0;
  double max_ = 1.0;
  std::vector<Hypervector> levels_;
};

inline ContinuousItemMemory build_cim(RngSeed seed, std::size_t levels, std::size_t dim,
                                      double min_value, double max_value,
                                      GenerationMode mode = GenerationMode::iid) {
  return ContinuousItemMemory(seed, levels, dim, min_value, max_value, mode);
}

inline std::size_t quantize(const ContinuousItemMemory& cim, double sample) {
  return cim.quantize(sample);
}

}  // namespace hdc
