// Drives the hdc executable end to end through the shell.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hdc_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run hdc(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + HDC_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          err.string() + "\"";
  Run r;
  const int raw = std::system(cmd.c_str());
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

std::string accuracy_line(const std::string& text) {
  const auto pos = text.find("accuracy,");
  return pos == std::string::npos ? "" : text.substr(pos, text.find('\n', pos) - pos);
}

}  // namespace

TEST(Cli, SynthTrainClassifyNoiseless) {
  auto r = hdc("synth --out " + path("clean.csv") + " --length 40 --trials 4");
  ASSERT_EQ(r.status, 0) << r.err;
  r = hdc("train --data " + path("clean.csv") + " --out " + path("clean.json") + " --dim 2000");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("class0,40\n"), std::string::npos) << r.out;
  r = hdc("classify --model " + path("clean.json") + " --data " + path("clean.csv"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(accuracy_line(r.out), "accuracy,100.00");

  r = hdc("classify --model " + path("clean.json") + " --data " + path("clean.csv") + " --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["accuracy"].get<double>(), 1.0);
  EXPECT_EQ(doc["trials"].size(), 20u);
}

TEST(Cli, RerunsAreByteIdentical) {
  ASSERT_EQ(hdc("synth --out " + path("noisy.csv") + " --length 30 --trials 3 --noise 3").status, 0);
  ASSERT_EQ(hdc("synth --out " + path("noisy2.csv") + " --length 30 --trials 3 --noise 3").status, 0);
  EXPECT_EQ(slurp(path("noisy.csv")), slurp(path("noisy2.csv")));
  ASSERT_EQ(hdc("train --data " + path("noisy.csv") + " --out " + path("a.json") + " --dim 1000").status, 0);
  ASSERT_EQ(hdc("train --data " + path("noisy.csv") + " --out " + path("b.json") + " --dim 1000").status, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST(Cli, WorkerCountDoesNotChangeResults) {
  ASSERT_EQ(hdc("synth --out " + path("w.csv") + " --length 30 --trials 3 --noise 4").status, 0);
  std::string model1, pred1;
  for (int workers : {1, 2, 4, 8}) {
    const auto model = path("w" + std::to_string(workers) + ".json");
    auto r = hdc("train --data " + path("w.csv") + " --out " + model + " --dim 1500 --workers " +
                 std::to_string(workers));
    ASSERT_EQ(r.status, 0) << r.err;
    r = hdc("classify --model " + model + " --data " + path("w.csv") + " --workers " + std::to_string(workers));
    ASSERT_EQ(r.status, 0) << r.err;
    if (workers == 1) {
      model1 = slurp(model);
      pred1 = r.out;
    } else {
      EXPECT_EQ(slurp(model), model1) << workers;
      EXPECT_EQ(r.out, pred1) << workers;
    }
  }
}

TEST(Cli, SmallDimensionModelHasSevenWords) {
  ASSERT_EQ(hdc("synth --out " + path("d200.csv") + " --length 10 --trials 2").status, 0);
  ASSERT_EQ(hdc("train --data " + path("d200.csv") + " --out " + path("d200.json") + " --dim 200").status, 0);
  const auto doc = nlohmann::json::parse(slurp(path("d200.json")));
  const auto proto = doc["classes"][0]["prototype"].get<std::string>();
  EXPECT_EQ(proto.substr(0, 4), "200:");
  EXPECT_EQ(proto.size() - 4, 7u * 8u);
}

TEST(Cli, MalformedCsvReportsLine) {
  {
    std::ofstream bad(path("bad.csv"));
    bad << "t,ch0,ch1,label\n0,1,2,a\n1,1,oops,a\n";
  }
  const auto r = hdc("train --data " + path("bad.csv") + " --out " + path("bad.json"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("error: parse-error"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("bad.json")));
}

TEST(Cli, MissingRequiredLabel) {
  ASSERT_EQ(hdc("synth --out " + path("lbl.csv") + " --length 10 --trials 2").status, 0);
  const auto r = hdc("train --data " + path("lbl.csv") + " --out " + path("lbl.json") + " --labels class0,rest");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("error: missing-class"), std::string::npos) << r.err;
}

TEST(Cli, ChannelMismatchOnClassify) {
  ASSERT_EQ(hdc("synth --out " + path("c4.csv") + " --length 10 --trials 2").status, 0);
  ASSERT_EQ(hdc("synth --out " + path("c3.csv") + " --length 10 --trials 2 --channels 3").status, 0);
  ASSERT_EQ(hdc("train --data " + path("c4.csv") + " --out " + path("c4.json") + " --dim 300").status, 0);
  const auto r = hdc("classify --model " + path("c4.json") + " --data " + path("c3.csv"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("error: channel-mismatch"), std::string::npos) << r.err;
}

TEST(Cli, Footprint) {
  const auto r = hdc("footprint --format json");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["total"].get<std::size_t>(), 42568u);
  EXPECT_EQ(doc["cim"].get<std::size_t>(), 27544u);
}

TEST(Cli, SweepWritesCsv) {
  const auto r = hdc("sweep --axis ngram --values 1,2,3 --dim 500 --length 10 --trials 1");
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "axisValue,medianWallTime,opCount,footprintBytes,throughputWindowsPerSec");
  int rows = 0;
  while (std::getline(lines, line)) rows += line.empty() ? 0 : 1;
  EXPECT_EQ(rows, 3);
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(hdc("sweep --axis ngram --values 3,2").status, 0);
  EXPECT_NE(hdc("train --data " + path("nope.csv")).status, 0);
  EXPECT_NE(hdc("frobnicate").status, 0);
}
