#pragma once

// Brute-force reference implementation used only by tests. Vectors are plain
// arrays of 0/1 bytes and every operation is a direct per-component loop
// written from the definitions. Nothing here touches packed words or shares
// code with the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace oracle {

using UnpackedVector = std::vector<std::uint8_t>;

inline void require_same(const UnpackedVector& a, const UnpackedVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("oracle: dimension mismatch");
}

inline UnpackedVector bind(const UnpackedVector& a, const UnpackedVector& b) {
  require_same(a, b);
  UnpackedVector out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] != b[j] ? 1 : 0;
  return out;
}

// out[j] = a[(j - k) mod D]
inline UnpackedVector permute(const UnpackedVector& a, std::int64_t k) {
  const auto d = static_cast<std::int64_t>(a.size());
  UnpackedVector out(a.size());
  for (std::int64_t j = 0; j < d; ++j) {
    std::int64_t src = (j - k) % d;
    if (src < 0) src += d;
    out[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(src)];
  }
  return out;
}

inline std::size_t popcount(const UnpackedVector& a) {
  std::size_t n = 0;
  for (auto bit : a) n += bit;
  return n;
}

inline std::size_t hamming(const UnpackedVector& a, const UnpackedVector& b) {
  require_same(a, b);
  std::size_t n = 0;
  for (std::size_t j = 0; j < a.size(); ++j) n += a[j] != b[j] ? 1 : 0;
  return n;
}

/// Column sums.
inline std::vector<std::uint64_t> column_counts(const std::vector<UnpackedVector>& vs) {
  std::vector<std::uint64_t> counts(vs.front().size(), 0);
  for (const auto& v : vs) {
    require_same(v, vs.front());
    for (std::size_t j = 0; j < v.size(); ++j) counts[j] += v[j];
  }
  return counts;
}

/// Majority vote per component; exact ties take tie[j].
inline UnpackedVector majority(const std::vector<UnpackedVector>& vs, const UnpackedVector& tie) {
  if (vs.empty()) throw std::invalid_argument("oracle: empty bundle");
  const auto counts = column_counts(vs);
  const std::size_t m = vs.size();
  UnpackedVector out(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const std::uint64_t ones = counts[j];
    const std::uint64_t zeros = m - ones;
    out[j] = ones > zeros ? 1 : (ones < zeros ? 0 : tie[j]);
  }
  return out;
}

/// Nearest of L evenly spaced levels over [lo, hi] by exhaustive scan; a
/// sample exactly between two levels goes to the upper one. Clamps outside.
inline std::size_t quantize(double sample, double lo, double hi, std::size_t levels) {
  if (!std::isfinite(sample)) throw std::invalid_argument("oracle: non-finite sample");
  const double x = (sample - lo) / (hi - lo) * static_cast<double>(levels - 1);
  std::size_t best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < levels; ++l) {
    const double gap = std::fabs(x - static_cast<double>(l));
    if (gap <= best_gap) {
      best_gap = gap;
      best = l;
    }
    if (static_cast<double>(l) > x) break;
  }
  return best;
}

/// Spatial vector: majority of im[c] XOR cim[level_c]; with an even channel
/// count the XOR of the first two bound vectors joins the vote.
inline UnpackedVector spatial_encode(const std::vector<UnpackedVector>& im, const std::vector<UnpackedVector>& cim,
                                     const std::vector<std::size_t>& levels) {
  std::vector<UnpackedVector> bound;
  for (std::size_t c = 0; c < im.size(); ++c) bound.push_back(oracle::bind(im[c], cim[levels[c]]));
  if (bound.size() % 2 == 0) bound.push_back(oracle::bind(bound[0], bound[1]));
  return majority(bound, UnpackedVector(im.front().size(), 0));
}

inline UnpackedVector ngram_encode(const std::vector<UnpackedVector>& window) {
  if (window.empty()) throw std::invalid_argument("oracle: empty window");
  UnpackedVector out(window.front().size(), 0);
  for (std::size_t k = 0; k < window.size(); ++k) {
    out = oracle::bind(out, permute(window[k], static_cast<std::int64_t>(k)));
  }
  return out;
}

struct QueryAnswer {
  std::size_t index = 0;
  std::vector<std::size_t> distances;
};

inline QueryAnswer am_query(const std::vector<UnpackedVector>& prototypes, const UnpackedVector& query) {
  if (prototypes.empty()) throw std::invalid_argument("oracle: empty memory");
  QueryAnswer ans;
  for (const auto& p : prototypes) ans.distances.push_back(hamming(p, query));
  for (std::size_t k = 1; k < prototypes.size(); ++k) {
    if (ans.distances[k] < ans.distances[ans.index]) ans.index = k;
  }
  return ans;
}

/// Whole chain for one trial: quantize, spatially encode every timestamp,
/// then N-gram every sliding window.
struct ChainSetup {
  std::vector<UnpackedVector> im;
  std::vector<UnpackedVector> cim;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t ngram = 1;
};

inline std::vector<UnpackedVector> encode_trial(const ChainSetup& setup,
                                                const std::vector<std::vector<double>>& samples) {
  const std::size_t length = samples.front().size();
  std::vector<UnpackedVector> spatial;
  for (std::size_t t = 0; t < length; ++t) {
    std::vector<std::size_t> levels;
    for (const auto& stream : samples) levels.push_back(quantize(stream[t], setup.lo, setup.hi, setup.cim.size()));
    spatial.push_back(spatial_encode(setup.im, setup.cim, levels));
  }
  std::vector<UnpackedVector> grams;
  for (std::size_t t = 0; t + setup.ngram <= length; ++t) {
    grams.emplace_back(ngram_encode(std::vector<UnpackedVector>(spatial.begin() + static_cast<std::ptrdiff_t>(t),
                                                                spatial.begin() + static_cast<std::ptrdiff_t>(t + setup.ngram))));
  }
  return grams;
}

// Name-dispatched entry point, for randomized drivers that pick operations
// by name.
struct OpInputs {
  std::vector<UnpackedVector> vectors;
  std::vector<std::int64_t> scalars;
};

using OpResult = std::variant<UnpackedVector, std::int64_t>;

inline OpResult oracle_op(const std::string& name, const OpInputs& in) {
  if (name == "bind") return oracle::bind(in.vectors.at(0), in.vectors.at(1));
  if (name == "permute") return permute(in.vectors.at(0), in.scalars.at(0));
  if (name == "popcount") return static_cast<std::int64_t>(popcount(in.vectors.at(0)));
  if (name == "hamming") return static_cast<std::int64_t>(hamming(in.vectors.at(0), in.vectors.at(1)));
  if (name == "extract_bit") return static_cast<std::int64_t>(in.vectors.at(0).at(static_cast<std::size_t>(in.scalars.at(0))));
  if (name == "insert_bit") {
    auto out = in.vectors.at(0);
    out.at(static_cast<std::size_t>(in.scalars.at(0))) = in.scalars.at(1) != 0 ? 1 : 0;
    return out;
  }
  if (name == "majority") {
    // last vector is the tie-break
    std::vector<UnpackedVector> voters(in.vectors.begin(), in.vectors.end() - 1);
    return majority(voters, in.vectors.back());
  }
  if (name == "ngram_encode") return ngram_encode(in.vectors);
  if (name == "am_query") {
    std::vector<UnpackedVector> protos(in.vectors.begin(), in.vectors.end() - 1);
    return static_cast<std::int64_t>(am_query(protos, in.vectors.back()).index);
  }
  throw std::invalid_argument("oracle: unknown operation '" + name + "'");
}

}  // namespace oracle
