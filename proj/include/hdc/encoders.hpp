#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/item_memory.hpp"

namespace hdc {

/// Scratch space for the spatial kernel, sized for one channel count.
struct SpatialScratch {
  std::vector<Word> column;
  std::vector<const Word*> levels;
};

/// Spatial encoding of words [begin, end) for one timestamp whose samples
/// already quantize to `levels` (one per channel). Writes out[begin, end) and
/// returns the component-operations performed.
///
/// Channel c contributes im[c] XOR cim[levels[c]]. With an even channel count
/// the first two bound vectors XORed together join as an extra voter, so the
/// majority is always over an odd number of inputs.
inline std::size_t spatial_encode_words(const ItemMemory& im, const ContinuousItemMemory& cim,
                                        std::span<const std::size_t> levels, std::span<Word> out,
                                        std::size_t begin, std::size_t end,
                                        SpatialScratch& scratch) {
  const std::size_t channels = im.size();
  const bool even = channels % 2 == 0;
  scratch.column.resize(channels + (even ? 1 : 0));
  scratch.levels.resize(channels);
  for (std::size_t c = 0; c < channels; ++c) scratch.levels[c] = cim.levels()[levels[c]].words().data();
  const auto& items = im.entries();
  for (std::size_t w = begin; w < end; ++w) {
    for (std::size_t c = 0; c < channels; ++c) {
      scratch.column[c] = items[c].words()[w] ^ scratch.levels[c][w];
    }
    if (even) scratch.column[channels] = scratch.column[0] ^ scratch.column[1];
    out[w] = majority_word(scratch.column, 0);
  }
  const std::size_t lanes = lane_count(im.dimension(), begin, end);
  const std::size_t voters = channels + (even ? 1 : 0);
  return lanes * (channels + (even ? 1 : 0) + voters);
}

inline void check_memories(const ItemMemory& im, const ContinuousItemMemory& cim) {
  require_same_dimension(im.dimension(), cim.dimension(), "spatial_encode memories");
}

/// Spatial hypervector of one frame from pre-quantized levels.
inline Hypervector spatial_encode_levels(const ItemMemory& im, const ContinuousItemMemory& cim,
                                         std::span<const std::size_t> levels) {
  check_memories(im, cim);
  if (levels.size() != im.size()) {
    fail(ErrorKind::channel_mismatch, "spatial_encode: frame has " + std::to_string(levels.size()) +
                                          " channels, item memory has " + std::to_string(im.size()));
  }
  for (auto level : levels) {
    if (level >= cim.size()) fail(ErrorKind::out_of_range, "spatial_encode: level out of range");
  }
  Hypervector out(im.dimension());
  SpatialScratch scratch;
  op_counter().add(
      spatial_encode_words(im, cim, levels, out.mutable_words(), 0, out.word_count(), scratch));
  return out;
}

/// Spatial hypervector of one frame of raw samples (one per channel).
inline Hypervector spatial_encode(const ItemMemory& im, const ContinuousItemMemory& cim,
                                  std::span<const double> frame) {
  if (frame.size() != im.size()) {
    fail(ErrorKind::channel_mismatch, "spatial_encode: frame has " + std::to_string(frame.size()) +
                                          " channels, item memory has " + std::to_string(im.size()));
  }
  std::vector<std::size_t> levels(frame.size());
  for (std::size_t c = 0; c < frame.size(); ++c) levels[c] = cim.quantize(frame[c]);
  return spatial_encode_levels(im, cim, levels);
}

/// Word w of the N-gram over `window` (oldest first): XOR of window[k]
/// rotated by k.
inline Word ngram_word(std::span<const Hypervector* const> window, std::size_t w) noexcept {
  const std::size_t dim = window.front()->dimension();
  Word acc = 0;
  for (std::size_t k = 0; k < window.size(); ++k) {
    acc ^= rotated_word(window[k]->words(), dim, k % dim, w);
  }
  return acc;
}

/// Temporal N-gram encoding: S[0] ^ rho^1 S[1] ^ ... ^ rho^(N-1) S[N-1].
inline Hypervector ngram_encode(std::span<const Hypervector> window) {
  if (window.empty()) fail(ErrorKind::empty_bundle, "ngram_encode: empty window");
  const std::size_t dim = window.front().dimension();
  std::vector<const Hypervector*> refs;
  refs.reserve(window.size());
  for (const auto& v : window) {
    require_same_dimension(dim, v.dimension(), "ngram_encode");
    refs.push_back(&v);
  }
  Hypervector out(dim);
  auto dst = out.mutable_words();
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = ngram_word(refs, w);
  op_counter().add(dim * window.size());
  return out;
}

}  // namespace hdc
