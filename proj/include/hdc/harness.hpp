#pragma once

// Evaluation, scalability sweeps and dimensionality-degradation runs.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdc/dataset.hpp"
#include "hdc/encoders.hpp"
#include "hdc/error.hpp"
#include "hdc/pipeline.hpp"

namespace hdc {

struct Evaluation {
  std::vector<std::string> labels;  // confusion matrix row/column order
  std::vector<std::string> truth;
  std::vector<std::string> predicted;
  std::vector<std::size_t> distances;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][predicted]
  double accuracy = 0.0;
};

inline Evaluation evaluate(const Model& model, const Memories& memories, const Dataset& dataset,
                           std::size_t workers) {
  if (dataset.channels != model.config.channels) {
    fail(ErrorKind::channel_mismatch, "dataset has " + std::to_string(dataset.channels) +
                                          " channels, model expects " + std::to_string(model.config.channels));
  }
  Evaluation ev;
  ev.labels = dataset.labels();
  for (const auto& e : model.am.entries()) {
    if (std::find(ev.labels.begin(), ev.labels.end(), e.label) == ev.labels.end()) ev.labels.push_back(e.label);
  }
  auto index_of = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(ev.labels.begin(), ev.labels.end(), l) - ev.labels.begin());
  };
  ev.confusion.assign(ev.labels.size(), std::vector<std::size_t>(ev.labels.size(), 0));
  std::size_t correct = 0;
  for (const auto& trial : dataset.trials) {
    const auto result = classify_trial(model, memories, trial, workers, false).result;
    ev.truth.push_back(trial.label);
    ev.predicted.push_back(result.label);
    ev.distances.push_back(result.distance);
    ++ev.confusion[index_of(trial.label)][index_of(result.label)];
    if (result.label == trial.label) ++correct;
  }
  ev.accuracy = dataset.trials.empty() ? 0.0
                                       : static_cast<double>(correct) / static_cast<double>(dataset.trials.size());
  return ev;
}

inline double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

/// Coefficient of determination of the least-squares line y = a + b x.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 1.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) return 1.0;
  if (sxx == 0.0) return 0.0;
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    ss_res += r * r;
  }
  return 1.0 - ss_res / syy;
}

/// Component-operations to classify one window in streaming form: spatially
/// encode the newest frame, form the N-gram, query the memory. Equals
/// D * (2C + 2[C even] + N + K).
inline std::uint64_t window_op_count(const Model& model, const Memories& memories) {
  const auto& cfg = model.config;
  const std::vector<std::size_t> levels(cfg.channels, 0);
  const std::uint64_t before = op_counter().value();
  const auto spatial = spatial_encode_levels(memories.im, memories.cim, levels);
  const std::vector<Hypervector> window(cfg.ngram, spatial);
  const auto gram = ngram_encode(window);
  if (!model.am.empty()) (void)am_query(model.am, gram);
  return op_counter().value() - before;
}

enum class SweepAxis { dimension, ngram, channels, workers };

inline const char* to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::dimension: return "dimension";
    case SweepAxis::ngram: return "ngram";
    case SweepAxis::channels: return "channels";
    case SweepAxis::workers: return "workers";
  }
  return "unknown";
}

inline SweepAxis parse_axis(const std::string& name) {
  if (name == "dimension") return SweepAxis::dimension;
  if (name == "ngram") return SweepAxis::ngram;
  if (name == "channels") return SweepAxis::channels;
  if (name == "workers") return SweepAxis::workers;
  fail(ErrorKind::invalid_argument, "unknown sweep axis '" + name + "'");
}

struct SweepSpec {
  SweepAxis axis = SweepAxis::dimension;
  std::vector<std::size_t> values;
  std::size_t repetitions = 3;
  PipelineConfig fixed;
  std::size_t classes = 5;
  std::size_t trial_length = 200;
  std::size_t trials_per_class = 2;
  double noise_sigma = 1.0;
  std::size_t memory_budget = std::size_t{1} << 30;  // bytes

  void validate() const {
    if (values.empty()) fail(ErrorKind::invalid_argument, "sweep: no axis values");
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] <= values[i - 1]) fail(ErrorKind::invalid_argument, "sweep: axis values must be strictly increasing");
    }
    if (repetitions < 3) fail(ErrorKind::invalid_argument, "sweep: timing runs need >= 3 repetitions");
  }
};

struct SweepRow {
  std::size_t axis_value = 0;
  double median_seconds = 0.0;
  std::uint64_t op_count = 0;
  std::size_t footprint_bytes = 0;
  double windows_per_second = 0.0;
  std::optional<std::string> error;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::dimension;
  std::vector<SweepRow> rows;
  double time_r2 = 0.0;  // wall time vs axis value, successful rows
  double ops_r2 = 0.0;   // op count vs axis value, successful rows
};

inline PipelineConfig with_axis(PipelineConfig cfg, SweepAxis axis, std::size_t value) {
  switch (axis) {
    case SweepAxis::dimension: cfg.dimension = value; break;
    case SweepAxis::ngram: cfg.ngram = value; break;
    case SweepAxis::channels: cfg.channels = value; break;
    case SweepAxis::workers: cfg.workers = value; break;
  }
  return cfg;
}

/// Bytes a sweep row needs: the model footprint plus the per-trial spatial
/// and N-gram buffers.
inline std::size_t sweep_working_set(const PipelineConfig& cfg, std::size_t classes, std::size_t trial_length) {
  const std::size_t vector_bytes = words_for(cfg.dimension) * kWordBytes;
  return footprint(cfg, classes).total + 2 * trial_length * vector_bytes;
}

/// A prepared sweep row: synthetic data and a trained model, ready to time.
struct SweepCase {
  PipelineConfig config;
  Dataset data;
  Memories memories;
  Model model;
  std::size_t windows = 0;
};

inline SweepCase prepare_sweep_case(const SweepSpec& spec, std::size_t value) {
  SweepCase c;
  c.config = with_axis(spec.fixed, spec.axis, value);
  c.config.validate();
  const std::size_t need = sweep_working_set(c.config, spec.classes, spec.trial_length);
  if (need > spec.memory_budget) {
    fail(ErrorKind::memory_budget, "row needs " + std::to_string(need) + " bytes, budget is " +
                                       std::to_string(spec.memory_budget));
  }
  SynthSpec synth;
  synth.classes = spec.classes;
  synth.channels = c.config.channels;
  synth.length = spec.trial_length;
  synth.trials = spec.trials_per_class;
  synth.noise_sigma = spec.noise_sigma;
  synth.seed = c.config.seed;
  synth.levels = c.config.levels;
  synth.min_value = c.config.min_value;
  synth.max_value = c.config.max_value;
  c.data = synthesize(synth);
  c.memories = build_memories(c.config);
  c.model = train(c.config, c.memories, c.data, TrainOptions{1.0, std::nullopt, {}});
  for (const auto& t : c.data.trials) c.windows += t.length() - c.config.ngram + 1;
  return c;
}

/// Seconds to classify every trial of the case once.
inline double time_sweep_case(const SweepCase& c) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& t : c.data.trials) (void)classify_trial(c.model, c.memories, t, c.config.workers, false);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Runs every row. Repetitions are interleaved across rows (rep 1 of every
/// row, then rep 2, ...) so slow drift on the host spreads over all rows.
inline SweepReport run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepReport report;
  report.axis = spec.axis;
  std::vector<std::optional<SweepCase>> cases;
  for (auto value : spec.values) {
    SweepRow row;
    row.axis_value = value;
    try {
      cases.emplace_back(prepare_sweep_case(spec, value));
    } catch (const Error& e) {
      cases.emplace_back(std::nullopt);
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    report.rows.push_back(std::move(row));
  }
  std::vector<std::vector<double>> seconds(cases.size());
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    for (std::size_t i = 0; i < cases.size(); ++i) {
      if (cases[i]) seconds[i].push_back(time_sweep_case(*cases[i]));
    }
  }
  std::vector<double> x, time, ops;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!cases[i]) continue;
    auto& row = report.rows[i];
    const auto& c = *cases[i];
    row.median_seconds = median(seconds[i]);
    row.windows_per_second = row.median_seconds > 0.0 ? static_cast<double>(c.windows) / row.median_seconds : 0.0;
    row.op_count = window_op_count(c.model, c.memories);
    row.footprint_bytes = footprint(c.config, spec.classes).total;
    x.push_back(static_cast<double>(row.axis_value));
    time.push_back(row.median_seconds);
    ops.push_back(static_cast<double>(row.op_count));
  }
  report.time_r2 = r_squared(x, time);
  report.ops_r2 = r_squared(x, ops);
  return report;
}

inline std::string sweep_csv(const SweepReport& report) {
  std::string out = "axisValue,medianWallTime,opCount,footprintBytes,throughputWindowsPerSec\n";
  for (const auto& row : report.rows) {
    if (row.error) continue;
    out += std::to_string(row.axis_value) + ",";
    detail::append_number(out, row.median_seconds);
    out += "," + std::to_string(row.op_count) + "," + std::to_string(row.footprint_bytes) + ",";
    detail::append_number(out, row.windows_per_second);
    out += "\n";
  }
  return out;
}

struct DegradationRow {
  std::size_t dimension = 0;
  double accuracy = 0.0;
};

/// Trains and tests at each dimension with the same split and seed; testing
/// uses the whole dataset.
inline std::vector<DegradationRow> run_degradation(const PipelineConfig& base, const Dataset& dataset,
                                                   const std::vector<std::size_t>& dims,
                                                   const TrainOptions& options) {
  if (dataset.labels().size() < 2) fail(ErrorKind::invalid_argument, "degradation: dataset needs >= 2 classes");
  std::vector<DegradationRow> rows;
  for (auto dim : dims) {
    PipelineConfig cfg = base;
    cfg.dimension = dim;
    const Memories memories = build_memories(cfg);
    const Model model = train(cfg, memories, dataset, options);
    rows.push_back({dim, evaluate(model, memories, dataset, cfg.workers).accuracy});
  }
  return rows;
}

}  // namespace hdc
