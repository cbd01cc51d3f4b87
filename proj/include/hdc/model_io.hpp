#pragma once

// Model file: one line of JSON.
//
//   {"format_version":1,
//    "config":{"dimension":..,"channels":..,"levels":..,"min":..,"max":..,
//              "ngram":..,"seed":..,"generation":"iid"|"balanced"},
//    "classes":[{"label":..,"train_count":..,"prototype":"<D>:<hex words>",
//                "counts":[..]}, ...]}
//
// Item memories are not stored; they regenerate from the config. The worker
// count is a runtime setting and is not part of the model.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdc/assoc_memory.hpp"
#include "hdc/error.hpp"
#include "hdc/hypervector.hpp"
#include "hdc/pipeline.hpp"

namespace hdc {

inline std::string serialize_model(const Model& model) {
  using nlohmann::ordered_json;
  const auto& cfg = model.config;
  ordered_json config = {
      {"dimension", cfg.dimension},
      {"channels", cfg.channels},
      {"levels", cfg.levels},
      {"min", cfg.min_value},
      {"max", cfg.max_value},
      {"ngram", cfg.ngram},
      {"seed", cfg.seed.value},
      {"generation", cfg.generation == GenerationMode::iid ? "iid" : "balanced"},
  };
  ordered_json classes = ordered_json::array();
  for (const auto& entry : model.am.entries()) {
    const auto counts = entry.counts.counts();
    classes.push_back({
        {"label", entry.label},
        {"train_count", entry.counts.total()},
        {"prototype", to_hex(entry.prototype)},
        {"counts", std::vector<std::uint32_t>(counts.begin(), counts.end())},
    });
  }
  ordered_json doc = {{"format_version", model.format_version}, {"config", config}, {"classes", classes}};
  return doc.dump() + "\n";
}

inline Model parse_model(const std::string& text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, std::string("model: ") + e.what());
  }
  try {
    const int version = doc.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      fail(ErrorKind::parse_error, "model: unsupported format_version " + std::to_string(version));
    }
    const auto& c = doc.at("config");
    PipelineConfig cfg;
    cfg.dimension = c.at("dimension").get<std::size_t>();
    cfg.channels = c.at("channels").get<std::size_t>();
    cfg.levels = c.at("levels").get<std::size_t>();
    cfg.min_value = c.at("min").get<double>();
    cfg.max_value = c.at("max").get<double>();
    cfg.ngram = c.at("ngram").get<std::size_t>();
    cfg.seed = RngSeed{c.at("seed").get<std::uint64_t>()};
    const auto generation = c.at("generation").get<std::string>();
    if (generation == "iid") {
      cfg.generation = GenerationMode::iid;
    } else if (generation == "balanced") {
      cfg.generation = GenerationMode::balanced;
    } else {
      fail(ErrorKind::parse_error, "model: unknown generation mode '" + generation + "'");
    }
    cfg.validate();

    Model model{cfg, AssociativeMemory(cfg.dimension, class_tie_seed(cfg)), version};
    for (const auto& entry : doc.at("classes")) {
      const auto label = entry.at("label").get<std::string>();
      auto counts = entry.at("counts").get<std::vector<std::uint32_t>>();
      if (counts.size() != cfg.dimension) {
        fail(ErrorKind::dimension_mismatch, "model: class '" + label + "' counts length mismatch");
      }
      const auto total = entry.at("train_count").get<std::uint64_t>();
      if (total == 0) fail(ErrorKind::parse_error, "model: class '" + label + "' has train_count 0");
      if (model.am.find(label) != model.am.size()) fail(ErrorKind::parse_error, "model: duplicate label '" + label + "'");
      const auto prototype = from_hex(entry.at("prototype").get<std::string>());
      require_same_dimension(cfg.dimension, prototype.dimension(), "model prototype");
      model.am.absorb(label, Accumulator::from_counts(std::move(counts), total));
      if (model.am.entries().back().prototype != prototype) {
        fail(ErrorKind::parse_error, "model: prototype of class '" + label + "' disagrees with its counts");
      }
    }
    return model;
  } catch (const json::exception& e) {
    fail(ErrorKind::parse_error, std::string("model: ") + e.what());
  }
}

inline void save_model(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io_error, "cannot write model '" + path + "'");
  out << serialize_model(model);
  if (!out) fail(ErrorKind::io_error, "cannot write model '" + path + "'");
}

inline Model load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io_error, "cannot open model '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_model(text.str());
}

}  // namespace hdc
