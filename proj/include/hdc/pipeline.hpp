#pragma once

// End-to-end chain: quantize -> spatial encode per timestamp -> N-gram over a
// sliding window -> bundle -> associative memory.
//
// Data parallelism follows one rule: a trial's hypervectors are split into
// contiguous word ranges, one per worker, and every phase of the chain runs
// over all timestamps of the worker's range. Rotation reads across ranges, so
// the N-gram phase starts only after every spatial vector is complete. All
// outputs are independent of the worker count.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdc/assoc_memory.hpp"
#include "hdc/encoders.hpp"
#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/item_memory.hpp"
#include "hdc/parallel.hpp"
#include "hdc/random.hpp"

namespace hdc {

struct PipelineConfig {
  std::size_t dimension = 10000;
  std::size_t channels = 4;
  std::size_t levels = 22;
  double min_value = 0.0;
  double max_value = 21.0;
  std::size_t ngram = 1;
  RngSeed seed{1};
  std::size_t workers = 1;
  GenerationMode generation = GenerationMode::iid;

  void validate() const {
    if (dimension == 0) fail(ErrorKind::invalid_dimension, "config: dimension must be >= 1");
    if (channels == 0) fail(ErrorKind::invalid_argument, "config: channels must be >= 1");
    if (levels < 2) fail(ErrorKind::invalid_argument, "config: levels must be >= 2");
    if (ngram == 0) fail(ErrorKind::invalid_argument, "config: ngram must be >= 1");
    if (workers == 0) fail(ErrorKind::invalid_argument, "config: workers must be >= 1");
    if (!std::isfinite(min_value) || !std::isfinite(max_value) || !(min_value < max_value)) {
      fail(ErrorKind::invalid_argument, "config: min must be < max");
    }
  }
};

/// One labeled recording: `samples[c][t]` is channel c at timestamp t.
struct Trial {
  std::string label;
  std::vector<std::vector<double>> samples;

  std::size_t channels() const noexcept { return samples.size(); }
  std::size_t length() const noexcept { return samples.empty() ? 0 : samples.front().size(); }
};

struct Dataset {
  std::size_t channels = 0;
  std::vector<Trial> trials;

  /// Labels in order of first appearance.
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& t : trials) {
      bool seen = false;
      for (const auto& l : out) seen = seen || l == t.label;
      if (!seen) out.push_back(t.label);
    }
    return out;
  }
};

struct Memories {
  ItemMemory im;
  ContinuousItemMemory cim;
};

inline Memories build_memories(const PipelineConfig& config) {
  config.validate();
  return Memories{
      build_item_memory(config.seed, config.channels, config.dimension, config.generation),
      build_cim(config.seed, config.levels, config.dimension, config.min_value, config.max_value,
                config.generation)};
}

inline constexpr int kModelFormatVersion = 1;

struct Model {
  PipelineConfig config;
  AssociativeMemory am;
  int format_version = kModelFormatVersion;
};

inline RngSeed class_tie_seed(const PipelineConfig& config) { return derive_seed(config.seed, "am-tie"); }

inline Hypervector query_tiebreak(const PipelineConfig& config) {
  return random_hypervector(derive_seed(config.seed, "query-tie"), 0, config.dimension);
}

inline void check_trial(const PipelineConfig& config, const Trial& trial) {
  if (trial.channels() != config.channels) {
    fail(ErrorKind::channel_mismatch, "trial '" + trial.label + "' has " +
                                          std::to_string(trial.channels()) + " channels, expected " +
                                          std::to_string(config.channels));
  }
  for (const auto& stream : trial.samples) {
    if (stream.size() != trial.length()) {
      fail(ErrorKind::invalid_argument, "trial '" + trial.label + "' has channel streams of unequal length");
    }
  }
  if (trial.length() < config.ngram) {
    fail(ErrorKind::window_too_short, "trial '" + trial.label + "' has " +
                                          std::to_string(trial.length()) + " samples, ngram is " +
                                          std::to_string(config.ngram));
  }
}

/// N-gram hypervectors of every sliding window (stride 1) of `trial`:
/// T - N + 1 vectors, the k-th covering timestamps k .. k + N - 1.
inline std::vector<Hypervector> encode_trial(const PipelineConfig& config, const Memories& memories,
                                             const Trial& trial) {
  config.validate();
  check_trial(config, trial);
  const std::size_t dim = config.dimension;
  const std::size_t channels = config.channels;
  const std::size_t length = trial.length();
  const std::size_t n = config.ngram;
  require_same_dimension(dim, memories.im.dimension(), "encode_trial memories");
  require_same_dimension(dim, memories.cim.dimension(), "encode_trial memories");

  std::vector<std::size_t> levels(length * channels);
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t c = 0; c < channels; ++c) {
      levels[t * channels + c] = memories.cim.quantize(trial.samples[c][t]);
    }
  }

  std::vector<Hypervector> spatial(length, Hypervector(dim));
  const std::size_t n_words = words_for(dim);
  const std::size_t windows = length - n + 1;
  std::vector<Hypervector> grams;
  if (n > 1) grams.assign(windows, Hypervector(dim));

  parallel_for(config.workers, n_words, [&](Range r, std::size_t) {
    SpatialScratch scratch;
    std::uint64_t ops = 0;
    for (std::size_t t = 0; t < length; ++t) {
      ops += spatial_encode_words(memories.im, memories.cim,
                                  std::span(levels).subspan(t * channels, channels),
                                  spatial[t].mutable_words(), r.begin, r.end, scratch);
    }
    op_counter().add(ops);
  });
  if (n == 1) return spatial;

  parallel_for(config.workers, n_words, [&](Range r, std::size_t) {
    std::vector<const Hypervector*> window(n);
    for (std::size_t t = 0; t < windows; ++t) {
      for (std::size_t k = 0; k < n; ++k) window[k] = &spatial[t + k];
      auto out = grams[t].mutable_words();
      for (std::size_t w = r.begin; w < r.end; ++w) out[w] = ngram_word(window, w);
    }
    op_counter().add(lane_count(dim, r.begin, r.end) * n * windows);
  });
  return grams;
}

/// Adds every vector of `vectors` to `acc`, splitting components across
/// workers. Each worker counts its word range with bit-sliced counters and
/// flushes them into the accumulator's integer counts.
inline void accumulate_all(Accumulator& acc, std::span<const Hypervector> vectors, std::size_t workers) {
  if (vectors.empty()) return;
  const std::size_t dim = acc.dimension();
  for (const auto& v : vectors) require_same_dimension(dim, v.dimension(), "accumulate");
  constexpr std::size_t kPlanes = 16;
  constexpr std::size_t kFlushEvery = (std::size_t{1} << kPlanes) - 1;
  const std::size_t n_words = words_for(dim);
  auto counts = acc.mutable_counts();

  parallel_for(workers, n_words, [&](Range r, std::size_t) {
    const std::size_t span_words = r.size();
    std::vector<Word> planes(kPlanes * span_words, 0);
    auto flush = [&] {
      for (std::size_t p = 0; p < kPlanes; ++p) {
        for (std::size_t i = 0; i < span_words; ++i) {
          Word bits = planes[p * span_words + i];
          planes[p * span_words + i] = 0;
          const std::size_t base = (r.begin + i) * kWordBits;
          while (bits != 0) {
            counts[base + static_cast<std::size_t>(std::countr_zero(bits))] += std::uint32_t{1} << p;
            bits &= bits - 1;
          }
        }
      }
    };
    std::size_t pending = 0;
    for (const auto& v : vectors) {
      auto src = v.words();
      for (std::size_t i = 0; i < span_words; ++i) {
        Word carry = src[r.begin + i];
        for (std::size_t p = 0; carry != 0 && p < kPlanes; ++p) {
          Word& plane = planes[p * span_words + i];
          const Word next = plane & carry;
          plane ^= carry;
          carry = next;
        }
      }
      if (++pending == kFlushEvery) {
        flush();
        pending = 0;
      }
    }
    flush();
    op_counter().add(lane_count(dim, r.begin, r.end) * vectors.size());
  });
  acc.add_total(vectors.size());
}

/// Bundles the windows of one trial into a single query hypervector.
inline Hypervector bundle_windows(const PipelineConfig& config, std::span<const Hypervector> windows) {
  Accumulator acc(config.dimension);
  accumulate_all(acc, windows, config.workers);
  return threshold_majority(acc, query_tiebreak(config));
}

/// Number of training trials taken from a class of `count` trials.
inline std::size_t training_share(double fraction, std::size_t count) {
  // The epsilon keeps e.g. 0.3 * 10 = 3.0000000000000004 from rounding up to 4.
  const double wanted = std::ceil(fraction * static_cast<double>(count) - 1e-9);
  return std::min(count, static_cast<std::size_t>(std::max(0.0, wanted)));
}

struct TrainOptions {
  double train_fraction = 0.25;
  /// When set, the per-class trial order is shuffled before taking the share.
  std::optional<RngSeed> split_seed;
  /// Classes that must receive training data; missing ones are an error.
  std::vector<std::string> required_labels;
};

/// Indices of the training trials, per class in first-appearance order.
inline std::vector<std::pair<std::string, std::vector<std::size_t>>> training_split(
    const Dataset& dataset, const TrainOptions& options) {
  if (!(options.train_fraction > 0.0 && options.train_fraction <= 1.0)) {
    fail(ErrorKind::invalid_argument, "train fraction must be in (0, 1]");
  }
  std::vector<std::pair<std::string, std::vector<std::size_t>>> split;
  for (const auto& label : dataset.labels()) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < dataset.trials.size(); ++i) {
      if (dataset.trials[i].label == label) members.push_back(i);
    }
    if (options.split_seed) {
      SplitMix64 rng(counter_hash(options.split_seed->value, fnv1a(label), 0));
      for (std::size_t i = members.size(); i > 1; --i) {
        std::swap(members[i - 1], members[rng.bounded(i)]);
      }
    }
    members.resize(training_share(options.train_fraction, members.size()));
    split.emplace_back(label, std::move(members));
  }
  for (const auto& required : options.required_labels) {
    bool found = false;
    for (const auto& [label, members] : split) found = found || (label == required && !members.empty());
    if (!found) fail(ErrorKind::missing_class, "class '" + required + "' has no training trials");
  }
  for (const auto& [label, members] : split) {
    if (members.empty()) fail(ErrorKind::missing_class, "class '" + label + "' has no training trials");
  }
  return split;
}

inline Model train(const PipelineConfig& config, const Memories& memories, const Dataset& dataset,
                   const TrainOptions& options = {}) {
  config.validate();
  if (dataset.trials.empty()) fail(ErrorKind::invalid_argument, "train: dataset has no trials");
  Model model{config, AssociativeMemory(config.dimension, class_tie_seed(config)), kModelFormatVersion};
  for (const auto& [label, members] : training_split(dataset, options)) {
    Accumulator acc(config.dimension);
    for (auto i : members) {
      const auto grams = encode_trial(config, memories, dataset.trials[i]);
      accumulate_all(acc, grams, config.workers);
    }
    model.am.absorb(label, acc);
  }
  return model;
}

inline Model train(const PipelineConfig& config, const Dataset& dataset, const TrainOptions& options = {}) {
  return train(config, build_memories(config), dataset, options);
}

struct TrialClassification {
  QueryResult result;
  std::vector<std::string> window_labels;
};

/// Classifies one trial: its window N-grams are bundled into one query (the
/// same way prototypes are built) and matched against the memory. Per-window
/// labels are reported alongside for diagnostics.
inline TrialClassification classify_trial(const Model& model, const Memories& memories, const Trial& trial,
                                          std::size_t workers, bool per_window = true) {
  PipelineConfig config = model.config;
  config.workers = workers;
  const auto grams = encode_trial(config, memories, trial);
  TrialClassification out;
  out.result = am_query(model.am, bundle_windows(config, grams), workers);
  if (per_window) {
    out.window_labels.resize(grams.size());
    parallel_for(workers, grams.size(), [&](Range r, std::size_t) {
      for (std::size_t t = r.begin; t < r.end; ++t) out.window_labels[t] = am_query(model.am, grams[t]).label;
    });
  }
  return out;
}

inline TrialClassification classify_trial(const Model& model, const Trial& trial, bool per_window = true) {
  return classify_trial(model, build_memories(model.config), trial, model.config.workers, per_window);
}

/// Logical memory footprint in bytes, 4 bytes per 32-bit word.
struct Footprint {
  std::size_t words_per_vector = 0;
  std::size_t cim = 0;
  std::size_t im = 0;
  std::size_t am = 0;
  std::size_t spatial_buffer = 0;
  std::size_t ngram_buffer = 0;
  std::size_t window_buffers = 0;
  std::size_t total = 0;
};

inline Footprint footprint(const PipelineConfig& config, std::size_t classes) {
  Footprint f;
  f.words_per_vector = words_for(config.dimension);
  const std::size_t vector_bytes = f.words_per_vector * kWordBytes;
  f.cim = config.levels * vector_bytes;
  f.im = config.channels * vector_bytes;
  f.am = classes * vector_bytes;
  f.spatial_buffer = vector_bytes;
  f.ngram_buffer = vector_bytes;
  f.window_buffers = config.ngram * vector_bytes;
  f.total = f.cim + f.im + f.am + f.spatial_buffer + f.ngram_buffer + f.window_buffers;
  return f;
}

}  // namespace hdc
