#pragma once

// Dataset CSV format:
//
//   t,ch0,ch1,...,ch{C-1},label
//   0,3.5,0.25,...,rest
//   ...
//
// One row per timestamp. A trial ends at a blank line or where the label
// changes. The t column is informational and not interpreted.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/pipeline.hpp"
#include "hdc/random.hpp"

namespace hdc {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] inline void csv_error(std::size_t line_no, const std::string& what) {
  fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

inline void append_number(std::string& out, double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

}  // namespace detail

inline Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Dataset ds;
  bool have_header = false;
  bool open_trial = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (!have_header) {
      if (text.empty()) continue;
      const auto fields = detail::split_fields(text);
      if (fields.size() < 3 || detail::trim(fields.front()) != "t" || detail::trim(fields.back()) != "label") {
        detail::csv_error(line_no, "header must be t,ch0,...,ch{C-1},label");
      }
      ds.channels = fields.size() - 2;
      for (std::size_t c = 0; c < ds.channels; ++c) {
        if (detail::trim(fields[c + 1]) != "ch" + std::to_string(c)) {
          detail::csv_error(line_no, "expected column ch" + std::to_string(c));
        }
      }
      have_header = true;
      continue;
    }
    if (text.empty()) {
      open_trial = false;
      continue;
    }
    const auto fields = detail::split_fields(text);
    if (fields.size() != ds.channels + 2) {
      detail::csv_error(line_no, "expected " + std::to_string(ds.channels + 2) + " fields, got " +
                                     std::to_string(fields.size()));
    }
    const std::string label(detail::trim(fields.back()));
    if (label.empty()) detail::csv_error(line_no, "empty label");
    if (!open_trial || ds.trials.back().label != label) {
      Trial trial;
      trial.label = label;
      trial.samples.resize(ds.channels);
      ds.trials.push_back(std::move(trial));
      open_trial = true;
    }
    auto& trial = ds.trials.back();
    for (std::size_t c = 0; c < ds.channels; ++c) {
      const auto field = detail::trim(fields[c + 1]);
      double value = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
      if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(value)) {
        detail::csv_error(line_no, "bad sample '" + std::string(field) + "' in column ch" + std::to_string(c));
      }
      trial.samples[c].push_back(value);
    }
  }
  if (!have_header) fail(ErrorKind::parse_error, "line 0: missing header");
  return ds;
}

inline Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open dataset '" + path + "'");
  return read_dataset_csv(in);
}

/// Writes `ds` with a blank line after every trial, so consecutive trials of
/// the same class stay separate when read back.
inline void write_dataset_csv(std::ostream& out, const Dataset& ds) {
  std::string text = "t";
  for (std::size_t c = 0; c < ds.channels; ++c) text += ",ch" + std::to_string(c);
  text += ",label\n";
  for (const auto& trial : ds.trials) {
    for (std::size_t t = 0; t < trial.length(); ++t) {
      text += std::to_string(t);
      for (std::size_t c = 0; c < trial.channels(); ++c) {
        text.push_back(',');
        detail::append_number(text, trial.samples[c][t]);
      }
      text.push_back(',');
      text += trial.label;
      text.push_back('\n');
    }
    text.push_back('\n');
  }
  out << text;
}

struct SynthSpec {
  std::size_t classes = 5;
  std::size_t channels = 4;
  std::size_t length = 1500;
  std::size_t trials = 10;
  double noise_sigma = 0.0;
  RngSeed seed{1};
  std::size_t levels = 22;
  double min_value = 0.0;
  double max_value = 21.0;
};

/// Class k's per-channel level pattern; patterns are pairwise distinct.
inline std::vector<std::vector<std::size_t>> synth_patterns(const SynthSpec& spec) {
  double combos = std::pow(static_cast<double>(spec.levels), static_cast<double>(spec.channels));
  if (combos < static_cast<double>(spec.classes)) {
    fail(ErrorKind::invalid_argument, "synth: not enough distinct level patterns for the class count");
  }
  SplitMix64 rng(counter_hash(derive_seed(spec.seed, "synth-pattern").value, 0, 0));
  std::vector<std::vector<std::size_t>> patterns;
  while (patterns.size() < spec.classes) {
    std::vector<std::size_t> p(spec.channels);
    for (auto& level : p) level = rng.bounded(spec.levels);
    if (std::find(patterns.begin(), patterns.end(), p) == patterns.end()) patterns.push_back(std::move(p));
  }
  return patterns;
}

/// Synthetic stand-in for a multi-channel gesture recording. Each class holds
/// a fixed level per channel; samples are that level's analog value plus
/// Gaussian noise, clipped to the range. Trials are interleaved by class
/// (round r holds one trial of every class), labels are class0..class{K-1}.
inline Dataset synthesize(const SynthSpec& spec) {
  if (spec.classes < 2) fail(ErrorKind::invalid_argument, "synth: need at least 2 classes");
  if (spec.channels == 0 || spec.length == 0 || spec.trials == 0) {
    fail(ErrorKind::invalid_argument, "synth: channels, length and trials must be positive");
  }
  if (spec.levels < 2 || !(spec.min_value < spec.max_value)) {
    fail(ErrorKind::invalid_argument, "synth: need >= 2 levels and min < max");
  }
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    fail(ErrorKind::invalid_argument, "synth: noise sigma must be finite and >= 0");
  }
  const auto patterns = synth_patterns(spec);
  const double step = (spec.max_value - spec.min_value) / static_cast<double>(spec.levels - 1);
  const RngSeed noise_seed = derive_seed(spec.seed, "synth-noise");
  Dataset ds;
  ds.channels = spec.channels;
  for (std::size_t r = 0; r < spec.trials; ++r) {
    for (std::size_t k = 0; k < spec.classes; ++k) {
      Trial trial;
      trial.label = "class" + std::to_string(k);
      trial.samples.assign(spec.channels, std::vector<double>(spec.length));
      SplitMix64 rng(counter_hash(noise_seed.value, r, k));
      for (std::size_t t = 0; t < spec.length; ++t) {
        for (std::size_t c = 0; c < spec.channels; ++c) {
          double v = spec.min_value + step * static_cast<double>(patterns[k][c]);
          if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
          trial.samples[c][t] = std::clamp(v, spec.min_value, spec.max_value);
        }
      }
      ds.trials.push_back(std::move(trial));
    }
  }
  return ds;
}

}  // namespace hdc
