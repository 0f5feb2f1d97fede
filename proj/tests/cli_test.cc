// Copyright 2026 The PUET Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "puet/data_io.h"
#include "puet/forest.h"

namespace puet::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "puet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("puet_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    // Positives centred at (2, 2), negatives at (-2, -2).
    Rng rng(7);
    std::normal_distribution<double> normal(0.0, 0.7);
    LabeledDataset p;
    LabeledDataset u;
    LabeledDataset labeled;
    p.x = Matrix(0, 0);
    for (int i = 0; i < 160; ++i) {
      const bool positive = i % 2 == 0;
      const double shift = positive ? 2.0 : -2.0;
      const std::vector<double> row = {normal(rng) + shift, normal(rng) + shift};
      labeled.x.AppendRow(row);
      labeled.y.push_back(positive ? 1 : -1);
      u.x.AppendRow(row);
      u.y.push_back(-1);
      if (positive && i < 80) {
        p.x.AppendRow(row);
        p.y.push_back(1);
      }
    }
    Write("p.svm", p);
    Write("u.svm", u);
    Write("labeled.svm", labeled);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void Write(const std::string& name, const LabeledDataset& data) {
    std::ofstream out(dir_ / name);
    WriteLibsvm(out, data);
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  Result Train(std::vector<std::string> extra = {},
               const std::string& loss = "quadratic",
               const std::string& trees = "20") {
    std::vector<std::string> args = {"train", "--method", "pu-et", "--risk",
                                     "nnpu", "--loss", loss, "--trees",
                                     trees, "--prior", "0.5", "--seed", "7",
                                     "-p", Path("p.svm"), "-u", Path("u.svm"),
                                     "-o", Path("model.puet")};
    args.insert(args.end(), extra.begin(), extra.end());
    return RunCli(args);
  }

  fs::path dir_;
};

TEST_F(CliTest, TrainWritesALoadableModel) {
  const Result r = Train();
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("tree 19: depth"), std::string::npos) << r.err;
  const ForestModel model = ForestModel::Load(Path("model.puet"));
  EXPECT_EQ(model.trees().size(), 20u);
  EXPECT_EQ(model.config().prior, 0.5);
  EXPECT_EQ(model.SerializeToString(), Slurp(dir_ / "model.puet"));
}

TEST_F(CliTest, TrainIsReproducibleAcrossJobs) {
  ASSERT_EQ(Train({"--jobs", "1"}).code, kExitOk);
  const std::string first = Slurp(dir_ / "model.puet");
  ASSERT_EQ(Train({"--jobs", "4"}).code, kExitOk);
  EXPECT_EQ(Slurp(dir_ / "model.puet"), first);
}

TEST_F(CliTest, ConfigurationErrors) {
  const Result savage = Train({}, "savage");
  EXPECT_EQ(savage.code, kExitUsage);
  EXPECT_NE(savage.err.find("savage"), std::string::npos) << savage.err;

  const Result trees = Train({"--jobs", "0"}, "quadratic", "0");
  EXPECT_EQ(trees.code, kExitUsage);
  EXPECT_NE(trees.err.find("--trees"), std::string::npos) << trees.err;
  EXPECT_NE(trees.err.find("--jobs"), std::string::npos) << trees.err;
  EXPECT_FALSE(fs::exists(dir_ / "model.puet"));

  EXPECT_EQ(RunCli({"train", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(RunCli({}).code, kExitUsage);
}

TEST_F(CliTest, MissingDataIsADataError) {
  const Result r = RunCli({"train", "--prior", "0.5", "-p", Path("none.svm"),
                           "-u", Path("u.svm"), "-o", Path("m.puet")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("none.svm"), std::string::npos);
}

TEST_F(CliTest, HelpListsTheCanonicalFlags) {
  const Result train = RunCli({"train", "--help"});
  EXPECT_EQ(train.code, kExitOk);
  for (const char* flag :
       {"--method", "--risk", "--loss", "--trees", "--max-depth",
        "--min-node-size", "--features", "--thresholds", "--split-mode",
        "--prior", "--seed", "--jobs", "--positive-label", "--format",
        "--label-col", "-p", "-u", "-d", "-o"}) {
    EXPECT_NE(train.out.find(flag), std::string::npos) << flag;
  }
  const Result importance = RunCli({"importance", "--help"});
  EXPECT_NE(importance.out.find("--grid"), std::string::npos);
  const Result reproduce = RunCli({"reproduce", "--help"});
  EXPECT_NE(reproduce.out.find("--replications"), std::string::npos);
}

TEST_F(CliTest, PredictAndEvaluate) {
  ASSERT_EQ(Train().code, kExitOk);
  const Result pred = RunCli({"predict", "--model", Path("model.puet"), "-d",
                              Path("labeled.svm"), "-o", Path("pred.txt")});
  ASSERT_EQ(pred.code, kExitOk) << pred.err;
  std::istringstream lines(Slurp(dir_ / "pred.txt"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(line == "1" || line == "-1") << line;
    ++n;
  }
  EXPECT_EQ(n, 160);

  const Result eval = RunCli({"evaluate", "--predictions", Path("pred.txt"),
                              "-d", Path("labeled.svm"), "--output-format",
                              "csv"});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  EXPECT_EQ(eval.out.substr(0, eval.out.find('\n')),
            "n,accuracy,f_score,tp,fp,tn,fn,test_pn_risk");

  const Result with_model =
      RunCli({"evaluate", "--model", Path("model.puet"), "-d",
              Path("labeled.svm"), "-p", Path("p.svm"), "-u", Path("u.svm")});
  ASSERT_EQ(with_model.code, kExitOk) << with_model.err;
  EXPECT_NE(with_model.out.find("\"train_pu_risk\""), std::string::npos);
  EXPECT_NE(with_model.out.find("\"accuracy\": 1.0"), std::string::npos)
      << with_model.out;
}

TEST_F(CliTest, EvaluateRejectsLengthMismatch) {
  std::ofstream(dir_ / "short.txt") << "1\n-1\n";
  const Result r = RunCli({"evaluate", "--predictions", Path("short.txt"),
                           "-d", Path("labeled.svm")});
  EXPECT_EQ(r.code, kExitData);
}

TEST_F(CliTest, PredictEdgeCases) {
  // Single-leaf model: a constant column.
  TreeNode leaf;
  leaf.prediction = 1;
  ForestConfig config;
  config.prior = 0.5;
  config.n_trees = 1;
  ForestModel(config, 2, ExampleWeights::ForPu(1, 1, 0.5), {Tree({leaf})})
      .Save(Path("leaf.puet"));
  const Result constant =
      RunCli({"predict", "--model", Path("leaf.puet"), "-d", Path("u.svm")});
  ASSERT_EQ(constant.code, kExitOk) << constant.err;
  EXPECT_EQ(constant.out, [] {
    std::string s;
    for (int i = 0; i < 160; ++i) s += "1\n";
    return s;
  }());

  std::ofstream(dir_ / "empty.svm").close();
  const Result empty =
      RunCli({"predict", "--model", Path("leaf.puet"), "-d", Path("empty.svm")});
  EXPECT_EQ(empty.code, kExitOk);
  EXPECT_EQ(empty.out, "");

  std::ofstream(dir_ / "bad.puet") << "puet-model 1\nmethod pu-et\ntrees x\n";
  const Result corrupted =
      RunCli({"predict", "--model", Path("bad.puet"), "-d", Path("u.svm")});
  EXPECT_NE(corrupted.code, kExitOk);
  EXPECT_EQ(corrupted.code, kExitData);
}

TEST_F(CliTest, ImportanceWritesCsvAndPgm) {
  // 784 features: random pixels with the signal in two of them.
  Rng rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LabeledDataset p;
  LabeledDataset u;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> row(784);
    for (auto& v : row) v = unit(rng) < 0.1 ? unit(rng) : 0.0;
    const bool positive = i % 2 == 0;
    row[406] = positive ? 1.0 : 0.0;
    row[407] = positive ? 0.8 : 0.1;
    u.x.AppendRow(row);
    u.y.push_back(-1);
    if (positive && i < 100) {
      p.x.AppendRow(row);
      p.y.push_back(1);
    }
  }
  Write("p784.svm", p);
  Write("u784.svm", u);
  ASSERT_EQ(RunCli({"train", "--trees", "10", "--prior", "0.5", "-p",
                    Path("p784.svm"), "-u", Path("u784.svm"), "-o",
                    Path("m784.puet")})
                .code,
            kExitOk);
  const Result r = RunCli({"importance", "--model", Path("m784.puet"), "--grid",
                           "28x28", "--pgm", Path("imp.pgm"), "-o",
                           Path("imp.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream pgm(Slurp(dir_ / "imp.pgm"));
  std::string magic;
  int w = 0;
  int h = 0;
  int maxval = 0;
  pgm >> magic >> w >> h >> maxval;
  EXPECT_EQ(magic, "P2");
  EXPECT_EQ(w, 28);
  EXPECT_EQ(h, 28);
  EXPECT_EQ(maxval, 255);
  int pixels = 0;
  int v = 0;
  while (pgm >> v) ++pixels;
  EXPECT_EQ(pixels, 784);
  const std::string csv = Slurp(dir_ / "imp.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "feature,raw,normalized");

  const Result bad_grid = RunCli({"importance", "--model", Path("m784.puet"),
                                  "--grid", "10x10", "--pgm", Path("x.pgm")});
  EXPECT_EQ(bad_grid.code, kExitUsage);
}

TEST_F(CliTest, ReproduceMushroomsNnpu) {
  const Result r =
      RunCli({"reproduce", "-d", std::string(PUET_DATA_DIR) + "/mushrooms.libsvm",
              "--only", "pu-et/nnpu/quadratic", "--replications", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  EXPECT_EQ(line, "setting,run_seed,accuracy,f_score,train_pu_risk,test_pn_risk");
  double sum = 0.0;
  int n = 0;
  while (std::getline(rows, line)) {
    std::istringstream cells(line);
    std::string setting;
    std::string seed;
    std::string accuracy;
    std::getline(cells, setting, ',');
    std::getline(cells, seed, ',');
    std::getline(cells, accuracy, ',');
    EXPECT_EQ(setting, "pu-et/nnpu/quadratic");
    sum += std::stod(accuracy);
    ++n;
  }
  ASSERT_EQ(n, 5);
  EXPECT_GE(sum / n, 0.985);
}

TEST_F(CliTest, ReproduceWithoutDataPrintsFetchInstructions) {
  const Result r = RunCli({"reproduce", "-d", Path("missing.libsvm")});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("mushrooms"), std::string::npos) << r.err;
}

TEST_F(CliTest, FeatureCurveRejectsZero) {
  const Result r = RunCli({"feature-curve", "-d", Path("labeled.svm"), "--k",
                           "0,1", "--n-positive", "20"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST_F(CliTest, ConfigFileSuppliesFlags) {
  std::ofstream(dir_ / "run.toml") << "[train]\ntrees = 3\nprior = 0.5\n";
  const Result r = RunCli({"--config", Path("run.toml"), "train", "-p",
                           Path("p.svm"), "-u", Path("u.svm"), "-o",
                           Path("cfg.puet")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(ForestModel::Load(Path("cfg.puet")).trees().size(), 3u);
}

}  // namespace
}  // namespace puet::cli
