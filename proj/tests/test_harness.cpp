#include <gtest/gtest.h>

#include "hdc/harness.hpp"

using namespace hdc;

TEST(Stats, Median) {
  EXPECT_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_EQ(median({}), 0.0);
}

TEST(Stats, RSquared) {
  EXPECT_DOUBLE_EQ(r_squared({1, 2, 3, 4}, {3, 5, 7, 9}), 1.0);
  EXPECT_NEAR(r_squared({1, 2, 3, 4}, {1, 4, 9, 16}), 625.0 / 645.0, 1e-12);
  EXPECT_LT(r_squared({1, 2, 3, 4}, {1, -1, 1, -1}), 0.5);
}

TEST(Evaluate, NoiselessSyntheticIsPerfect) {
  SynthSpec spec;
  spec.length = 20;
  spec.trials = 4;
  const auto ds = synthesize(spec);
  PipelineConfig cfg;
  cfg.dimension = 2000;
  const auto mem = build_memories(cfg);
  const auto model = train(cfg, mem, ds, TrainOptions{0.25, std::nullopt, {}});
  const auto ev = evaluate(model, mem, ds, 1);
  EXPECT_DOUBLE_EQ(ev.accuracy, 1.0);
  ASSERT_EQ(ev.confusion.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(ev.confusion[i][i], 4u);
}

TEST(Evaluate, SingleClassModelPredictsThatClass) {
  SynthSpec spec;
  spec.length = 10;
  spec.trials = 2;
  auto ds = synthesize(spec);
  Dataset only_a = ds;
  std::erase_if(only_a.trials, [](const Trial& t) { return t.label != "class0"; });
  PipelineConfig cfg;
  cfg.dimension = 500;
  const auto mem = build_memories(cfg);
  const auto model = train(cfg, mem, only_a, TrainOptions{1.0, std::nullopt, {}});
  const auto ev = evaluate(model, mem, ds, 2);
  for (const auto& p : ev.predicted) EXPECT_EQ(p, "class0");
  EXPECT_DOUBLE_EQ(ev.accuracy, 0.2);
}

TEST(Evaluate, ChannelMismatch) {
  SynthSpec spec;
  spec.length = 5;
  spec.trials = 1;
  const auto ds = synthesize(spec);
  PipelineConfig cfg;
  cfg.dimension = 64;
  const auto model = train(cfg, ds, TrainOptions{1.0, std::nullopt, {}});
  spec.channels = 3;
  EXPECT_THROW(evaluate(model, build_memories(cfg), synthesize(spec), 1), Error);
}

TEST(Sweep, ValidatesSpec) {
  SweepSpec spec;
  spec.values = {2, 1};
  EXPECT_THROW(run_sweep(spec), Error);
  spec.values = {1, 2};
  spec.repetitions = 2;
  EXPECT_THROW(run_sweep(spec), Error);
  spec.values = {};
  spec.repetitions = 3;
  EXPECT_THROW(run_sweep(spec), Error);
  EXPECT_THROW(parse_axis("colour"), Error);
}

TEST(Sweep, DimensionOpCountsExactlyLinear) {
  SweepSpec spec;
  spec.axis = SweepAxis::dimension;
  spec.values = {1000, 2000, 5000, 10000};
  spec.trial_length = 20;
  spec.trials_per_class = 1;
  const auto report = run_sweep(spec);
  ASSERT_EQ(report.rows.size(), 4u);
  for (const auto& r : report.rows) ASSERT_FALSE(r.error.has_value()) << *r.error;
  EXPECT_EQ(report.rows[3].op_count, 2 * report.rows[2].op_count);
  EXPECT_EQ(report.rows[0].op_count, 1000u * (8 + 2 + 1 + 5));
  EXPECT_DOUBLE_EQ(report.ops_r2, 1.0);
  EXPECT_EQ(report.rows[3].footprint_bytes, 42568u);
  const auto csv = sweep_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "axisValue,medianWallTime,opCount,footprintBytes,throughputWindowsPerSec");
}

TEST(Sweep, ChannelFootprintLinearAndBudgetErrorsPerRow) {
  SweepSpec spec;
  spec.axis = SweepAxis::channels;
  spec.values = {4, 8, 16, 64};
  spec.trial_length = 5;
  spec.trials_per_class = 1;
  spec.fixed.dimension = 1000;
  const auto report = run_sweep(spec);
  const std::size_t step = words_for(1000) * 4;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_EQ(report.rows[i].footprint_bytes - report.rows[0].footprint_bytes,
              (spec.values[i] - spec.values[0]) * step);
  }

  spec.memory_budget = footprint(with_axis(spec.fixed, SweepAxis::channels, 8), 5).total + 2 * 5 * step;
  const auto limited = run_sweep(spec);
  ASSERT_EQ(limited.rows.size(), 4u);
  EXPECT_FALSE(limited.rows[0].error.has_value());
  EXPECT_FALSE(limited.rows[1].error.has_value());
  ASSERT_TRUE(limited.rows[2].error.has_value());
  EXPECT_NE(limited.rows[2].error->find("memory-budget"), std::string::npos);
  EXPECT_TRUE(limited.rows[3].error.has_value());
}

TEST(Sweep, NgramOpCountsAffine) {
  SweepSpec spec;
  spec.axis = SweepAxis::ngram;
  spec.values = {1, 2, 5, 10};
  spec.trial_length = 20;
  spec.trials_per_class = 1;
  spec.fixed.dimension = 1000;
  const auto report = run_sweep(spec);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    EXPECT_EQ(report.rows[i].op_count, 1000u * (10 + spec.values[i] + 5));
  }
  EXPECT_DOUBLE_EQ(report.ops_r2, 1.0);
}

TEST(Degradation, DeterministicAndRejectsSingleClass) {
  SynthSpec spec;
  spec.length = 30;
  spec.trials = 4;
  spec.noise_sigma = 4.0;
  const auto ds = synthesize(spec);
  PipelineConfig cfg;
  const std::vector<std::size_t> dims{1000, 64};
  const auto a = run_degradation(cfg, ds, dims, TrainOptions{0.25, std::nullopt, {}});
  const auto b = run_degradation(cfg, ds, dims, TrainOptions{0.25, std::nullopt, {}});
  ASSERT_EQ(a.size(), 2u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].dimension, dims[i]);
    EXPECT_EQ(a[i].accuracy, b[i].accuracy);
  }
  Dataset one = ds;
  std::erase_if(one.trials, [](const Trial& t) { return t.label != "class0"; });
  EXPECT_THROW(run_degradation(cfg, one, dims, TrainOptions{}), Error);
}
