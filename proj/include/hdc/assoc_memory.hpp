#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/parallel.hpp"
#include "hdc/random.hpp"

namespace hdc {

/// Tie-break vector used when a class bundles an even number of vectors.
inline Hypervector class_tiebreak(RngSeed tie_seed, std::string_view label, std::size_t dim) {
  return random_hypervector(tie_seed, fnv1a(label), dim);
}

struct ClassPrototype {
  std::string label;
  Hypervector prototype;
};

/// Bundles `vectors` into one prototype by componentwise majority.
inline ClassPrototype train_class(std::span<const Hypervector> vectors, const std::string& label,
                                  RngSeed tie_seed) {
  if (vectors.empty()) fail(ErrorKind::empty_bundle, "train_class: no vectors for class '" + label + "'");
  Accumulator acc(vectors.front().dimension());
  for (const auto& v : vectors) acc.add(v);
  return {label, threshold_majority(acc, class_tiebreak(tie_seed, label, acc.dimension()))};
}

struct QueryResult {
  std::string label;
  std::size_t index = 0;
  std::size_t distance = 0;
  std::vector<std::size_t> all_distances;
};

/// Labeled prototypes plus the per-class counts they were read out from.
/// Keeping the counts makes incremental updates identical to retraining.
class AssociativeMemory {
 public:
  struct Entry {
    std::string label;
    Hypervector prototype;
    Accumulator counts;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  AssociativeMemory() = default;

  AssociativeMemory(std::size_t dim, RngSeed tie_seed) : dim_(dim), tie_seed_(tie_seed) {
    if (dim == 0) fail(ErrorKind::invalid_dimension, "associative memory dimension must be >= 1");
  }

  std::size_t dimension() const noexcept { return dim_; }
  RngSeed tie_seed() const noexcept { return tie_seed_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  std::uint64_t train_count(std::size_t k) const { return entries_.at(k).counts.total(); }

  /// Index of `label`, or size() when absent.
  std::size_t find(std::string_view label) const noexcept {
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (entries_[k].label == label) return k;
    }
    return entries_.size();
  }

  /// Adds bundled counts to `label` (creating the class if new) and re-reads
  /// its prototype. Empty accumulators are ignored.
  void absorb(const std::string& label, const Accumulator& counts) {
    require_same_dimension(dim_, counts.dimension(), "associative memory update");
    if (counts.total() == 0) return;
    std::size_t k = find(label);
    if (k == entries_.size()) {
      entries_.push_back(Entry{label, Hypervector(dim_), Accumulator(dim_)});
    }
    Entry& e = entries_[k];
    e.counts.merge(counts);
    e.prototype = threshold_majority(e.counts, class_tiebreak(tie_seed_, label, dim_));
  }

  friend bool operator==(const AssociativeMemory&, const AssociativeMemory&) = default;

 private:
  std::size_t dim_ = 0;
  RngSeed tie_seed_{};
  std::vector<Entry> entries_;
};

/// Returns a copy of `am` with `vectors` bundled into class `label`.
inline AssociativeMemory am_update(AssociativeMemory am, const std::string& label,
                                   std::span<const Hypervector> vectors) {
  if (vectors.empty()) return am;
  Accumulator acc(am.dimension());
  for (const auto& v : vectors) acc.add(v);
  am.absorb(label, acc);
  return am;
}

/// Nearest prototype by Hamming distance; ties go to the lowest class index.
/// With workers > 1 the word range is split and per-part distances summed.
inline QueryResult am_query(const AssociativeMemory& am, const Hypervector& query,
                            std::size_t workers = 1) {
  if (am.empty()) fail(ErrorKind::invalid_argument, "am_query: associative memory is empty");
  require_same_dimension(am.dimension(), query.dimension(), "am_query");
  const auto& entries = am.entries();
  const std::size_t classes = entries.size();
  const std::size_t n_words = query.word_count();
  const std::size_t parts = std::max<std::size_t>(1, std::min(workers, n_words));
  std::vector<std::size_t> partial(parts * classes, 0);
  parallel_for(parts, n_words, [&](Range r, std::size_t part) {
    auto q = query.words();
    for (std::size_t k = 0; k < classes; ++k) {
      auto p = entries[k].prototype.words();
      std::size_t d = 0;
      for (std::size_t w = r.begin; w < r.end; ++w) d += static_cast<std::size_t>(std::popcount(q[w] ^ p[w]));
      partial[part * classes + k] = d;
    }
  });
  QueryResult result;
  result.all_distances.assign(classes, 0);
  for (std::size_t part = 0; part < parts; ++part) {
    for (std::size_t k = 0; k < classes; ++k) result.all_distances[k] += partial[part * classes + k];
  }
  result.distance = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 0; k < classes; ++k) {
    if (result.all_distances[k] < result.distance) {
      result.distance = result.all_distances[k];
      result.index = k;
    }
  }
  result.label = entries[result.index].label;
  op_counter().add(am.dimension() * classes);
  return result;
}

}  // namespace hdc
