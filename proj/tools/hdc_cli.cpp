// hdc: train/classify HD classifiers on CSV data, generate synthetic
// datasets, run scalability sweeps and dimensionality-degradation tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hdc/hdc.hpp"

namespace {

using nlohmann::ordered_json;

struct ConfigFlags {
  std::optional<std::size_t> dim;
  std::optional<std::size_t> channels;
  std::size_t levels = 22;
  double min_value = 0.0;
  double max_value = 21.0;
  std::size_t ngram = 1;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  bool balanced = false;

  void attach(CLI::App* cmd, bool with_channels) {
    cmd->add_option("--dim", dim, "hypervector dimension (default 10000)");
    if (with_channels) cmd->add_option("--channels", channels, "input channels");
    cmd->add_option("--levels", levels, "continuous item memory levels")->capture_default_str();
    cmd->add_option("--min", min_value, "lower end of the signal range")->capture_default_str();
    cmd->add_option("--max", max_value, "upper end of the signal range")->capture_default_str();
    cmd->add_option("--ngram", ngram, "N-gram size")->capture_default_str();
    cmd->add_option("--seed", seed, "seed for item memories and tie-breaks")->capture_default_str();
    cmd->add_option("--workers", workers, "data-parallel workers")->capture_default_str();
    cmd->add_flag("--balanced", balanced, "seed vectors with exactly D/2 ones");
  }

  hdc::PipelineConfig config(std::size_t default_channels) const {
    hdc::PipelineConfig cfg;
    cfg.dimension = dim.value_or(10000);
    cfg.channels = channels.value_or(default_channels);
    cfg.levels = levels;
    cfg.min_value = min_value;
    cfg.max_value = max_value;
    cfg.ngram = ngram;
    cfg.seed = hdc::RngSeed{seed};
    cfg.workers = workers;
    cfg.generation = balanced ? hdc::GenerationMode::balanced : hdc::GenerationMode::iid;
    cfg.validate();
    return cfg;
  }
};

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * fraction);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) hdc::fail(hdc::ErrorKind::io_error, "cannot write '" + path + "'");
  out << text;
}

hdc::Dataset load_dataset(const std::string& path) { return hdc::read_dataset_csv(path); }

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_evaluation(const hdc::Evaluation& ev, const std::string& format) {
  if (format == "json") {
    ordered_json trials = ordered_json::array();
    for (std::size_t i = 0; i < ev.truth.size(); ++i) {
      trials.push_back({{"trial", i}, {"truth", ev.truth[i]}, {"predicted", ev.predicted[i]}, {"distance", ev.distances[i]}});
    }
    ordered_json doc = {{"trials", trials}, {"labels", ev.labels}, {"confusion", ev.confusion}, {"accuracy", ev.accuracy}};
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "trial,truth,predicted,distance\n";
  for (std::size_t i = 0; i < ev.truth.size(); ++i) {
    std::cout << i << "," << ev.truth[i] << "," << ev.predicted[i] << "," << ev.distances[i] << "\n";
  }
  std::cout << "\nconfusion (rows truth, columns predicted)\ntruth";
  for (const auto& l : ev.labels) std::cout << "," << l;
  std::cout << "\n";
  for (std::size_t r = 0; r < ev.labels.size(); ++r) {
    std::cout << ev.labels[r];
    for (auto n : ev.confusion[r]) std::cout << "," << n;
    std::cout << "\n";
  }
  std::cout << "\naccuracy," << percent(ev.accuracy) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-dimensional computing classifier toolkit"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model from a dataset CSV");
  std::string train_data, train_out = "model.json", train_labels;
  double train_frac = 0.25;
  std::optional<std::uint64_t> split_seed;
  ConfigFlags train_flags;
  train->add_option("--data", train_data, "dataset CSV")->required();
  train->add_option("--out", train_out, "model file to write")->capture_default_str();
  train->add_option("--train-frac", train_frac, "share of each class used for training")->capture_default_str();
  train->add_option("--split-seed", split_seed, "shuffle trials per class before splitting");
  train->add_option("--labels", train_labels, "comma-separated classes that must be present");
  train_flags.attach(train, true);

  // classify
  auto* classify = app.add_subcommand("classify", "classify every trial of a dataset");
  std::string cls_model, cls_data, cls_format = "csv";
  std::size_t cls_workers = 1;
  classify->add_option("--model", cls_model, "model file")->required();
  classify->add_option("--data", cls_data, "dataset CSV")->required();
  classify->add_option("--workers", cls_workers, "data-parallel workers")->capture_default_str();
  classify->add_option("--format", cls_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // synth
  auto* synth = app.add_subcommand("synth", "write a synthetic dataset CSV");
  hdc::SynthSpec synth_spec;
  std::string synth_out;
  std::uint64_t synth_seed = 1;
  synth->add_option("--out", synth_out, "CSV path ('-' for stdout)")->required();
  synth->add_option("--classes", synth_spec.classes, "classes")->capture_default_str();
  synth->add_option("--channels", synth_spec.channels, "channels")->capture_default_str();
  synth->add_option("--length", synth_spec.length, "samples per trial")->capture_default_str();
  synth->add_option("--trials", synth_spec.trials, "trials per class")->capture_default_str();
  synth->add_option("--noise", synth_spec.noise_sigma, "Gaussian noise sigma")->capture_default_str();
  synth->add_option("--seed", synth_seed, "seed")->capture_default_str();
  synth->add_option("--levels", synth_spec.levels, "levels of the value grid")->capture_default_str();
  synth->add_option("--min", synth_spec.min_value, "range minimum")->capture_default_str();
  synth->add_option("--max", synth_spec.max_value, "range maximum")->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "scalability sweep over one axis");
  std::string sweep_axis = "dimension", sweep_out, sweep_format = "csv";
  std::vector<std::size_t> sweep_values;
  hdc::SweepSpec sweep_spec;
  ConfigFlags sweep_flags;
  sweep->add_option("--axis", sweep_axis, "dimension, ngram, channels or workers")
      ->check(CLI::IsMember({"dimension", "ngram", "channels", "workers"}));
  sweep->add_option("--values", sweep_values, "strictly increasing axis values")->delimiter(',')->required();
  sweep->add_option("--reps", sweep_spec.repetitions, "timing repetitions (>= 3)")->capture_default_str();
  sweep->add_option("--classes", sweep_spec.classes, "classes in the synthetic data")->capture_default_str();
  sweep->add_option("--length", sweep_spec.trial_length, "samples per trial")->capture_default_str();
  sweep->add_option("--trials", sweep_spec.trials_per_class, "trials per class")->capture_default_str();
  sweep->add_option("--noise", sweep_spec.noise_sigma, "Gaussian noise sigma")->capture_default_str();
  sweep->add_option("--mem-budget", sweep_spec.memory_budget, "per-row memory budget in bytes")->capture_default_str();
  sweep->add_option("--out", sweep_out, "report path (default stdout)");
  sweep->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_flags.attach(sweep, true);

  // degradation
  auto* degrade = app.add_subcommand("degradation", "accuracy versus dimension");
  std::string deg_data, deg_format = "csv";
  std::vector<std::size_t> deg_dims{10000, 5000, 2000, 1000, 500, 200, 100};
  double deg_frac = 0.25;
  std::optional<std::uint64_t> deg_split_seed;
  ConfigFlags deg_flags;
  degrade->add_option("--data", deg_data, "dataset CSV")->required();
  degrade->add_option("--dims", deg_dims, "dimensions to evaluate")->delimiter(',');
  degrade->add_option("--train-frac", deg_frac, "share of each class used for training")->capture_default_str();
  degrade->add_option("--split-seed", deg_split_seed, "shuffle trials per class before splitting");
  degrade->add_option("--format", deg_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  deg_flags.attach(degrade, true);

  // footprint
  auto* foot = app.add_subcommand("footprint", "logical memory footprint of a configuration");
  std::size_t foot_classes = 5;
  std::string foot_format = "csv";
  ConfigFlags foot_flags;
  foot->add_option("--classes", foot_classes, "classes in the associative memory")->capture_default_str();
  foot->add_option("--format", foot_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  foot_flags.attach(foot, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train) {
      const auto data = load_dataset(train_data);
      const auto cfg = train_flags.config(data.channels);
      if (cfg.channels != data.channels) {
        hdc::fail(hdc::ErrorKind::channel_mismatch, "--channels " + std::to_string(cfg.channels) +
                                                        " but dataset has " + std::to_string(data.channels));
      }
      hdc::TrainOptions options;
      options.train_fraction = train_frac;
      if (split_seed) options.split_seed = hdc::RngSeed{*split_seed};
      options.required_labels = split_labels(train_labels);
      const auto model = hdc::train(cfg, data, options);
      hdc::save_model(model, train_out);
      std::cout << "class,training_vectors\n";
      for (const auto& e : model.am.entries()) std::cout << e.label << "," << e.counts.total() << "\n";
      std::cout << "model," << train_out << "\n";
    } else if (*classify) {
      const auto model = hdc::load_model(cls_model);
      const auto data = load_dataset(cls_data);
      if (cls_workers == 0) hdc::fail(hdc::ErrorKind::invalid_argument, "--workers must be >= 1");
      const auto memories = hdc::build_memories(model.config);
      print_evaluation(hdc::evaluate(model, memories, data, cls_workers), cls_format);
    } else if (*synth) {
      synth_spec.seed = hdc::RngSeed{synth_seed};
      std::ostringstream text;
      hdc::write_dataset_csv(text, hdc::synthesize(synth_spec));
      write_text(synth_out, text.str());
    } else if (*sweep) {
      sweep_spec.axis = hdc::parse_axis(sweep_axis);
      sweep_spec.values = sweep_values;
      sweep_spec.fixed = sweep_flags.config(4);
      const auto report = hdc::run_sweep(sweep_spec);
      for (const auto& row : report.rows) {
        if (row.error) std::cerr << "error: row " << row.axis_value << ": " << *row.error << "\n";
      }
      std::string text;
      if (sweep_format == "json") {
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
          ordered_json r = {{"axisValue", row.axis_value}};
          if (row.error) {
            r["error"] = *row.error;
          } else {
            r["medianWallTime"] = row.median_seconds;
            r["opCount"] = row.op_count;
            r["footprintBytes"] = row.footprint_bytes;
            r["throughputWindowsPerSec"] = row.windows_per_second;
          }
          rows.push_back(r);
        }
        text = ordered_json{{"axis", hdc::to_string(report.axis)}, {"rows", rows}, {"timeR2", report.time_r2}, {"opsR2", report.ops_r2}}
                   .dump(2) + "\n";
      } else {
        text = hdc::sweep_csv(report);
      }
      write_text(sweep_out, text);
      if (sweep_format == "csv") {
        std::cerr << "linearity axis=" << hdc::to_string(report.axis) << " time_r2=" << report.time_r2
                  << " ops_r2=" << report.ops_r2 << "\n";
      }
    } else if (*degrade) {
      const auto data = load_dataset(deg_data);
      const auto cfg = deg_flags.config(data.channels);
      hdc::TrainOptions options;
      options.train_fraction = deg_frac;
      if (deg_split_seed) options.split_seed = hdc::RngSeed{*deg_split_seed};
      const auto rows = hdc::run_degradation(cfg, data, deg_dims, options);
      if (deg_format == "json") {
        ordered_json out = ordered_json::array();
        for (const auto& r : rows) out.push_back({{"dimension", r.dimension}, {"accuracy", r.accuracy}});
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "dimension,accuracy\n";
        for (const auto& r : rows) std::cout << r.dimension << "," << percent(r.accuracy) << "\n";
      }
    } else if (*foot) {
      const auto cfg = foot_flags.config(4);
      const auto f = hdc::footprint(cfg, foot_classes);
      if (foot_format == "json") {
        std::cout << ordered_json{{"wordsPerVector", f.words_per_vector}, {"cim", f.cim}, {"im", f.im},
                                  {"am", f.am}, {"spatialBuffer", f.spatial_buffer},
                                  {"ngramBuffer", f.ngram_buffer}, {"windowBuffers", f.window_buffers},
                                  {"total", f.total}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << "component,bytes\n"
                  << "cim," << f.cim << "\nim," << f.im << "\nam," << f.am << "\nspatial_buffer," << f.spatial_buffer
                  << "\nngram_buffer," << f.ngram_buffer << "\nwindow_buffers," << f.window_buffers << "\ntotal,"
                  << f.total << "\n";
      }
    }
  } catch (const hdc::Error& e) {
    std::string msg = e.what();
    for (auto& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::cerr << "error: " << hdc::to_string(e.kind()) << ": " << msg << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
