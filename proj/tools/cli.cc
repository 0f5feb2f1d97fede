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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "puet/data_io.h"
#include "puet/errors.h"
#include "puet/experiment.h"
#include "puet/forest.h"
#include "puet/importance.h"
#include "puet/metrics.h"

namespace puet::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr const char* kMushroomsHint =
    "fetch agaricus-lepiota.data from the UCI Machine Learning Repository "
    "(mushroom dataset) and convert it with\n"
    "  python3 tools/mushrooms_to_libsvm.py agaricus-lepiota.data "
    "data/mushrooms.libsvm";

// Collects every validation problem so they can be reported together.
class Problems {
 public:
  void Add(std::string message) { messages_.push_back(std::move(message)); }

  // Runs `fn`, recording a ConfigError instead of propagating it.
  void Check(const std::function<void()>& fn) {
    try {
      fn();
    } catch (const ConfigError& e) {
      Add(e.what());
    }
  }

  void ThrowIfAny() const {
    if (messages_.empty()) return;
    std::string text = messages_.size() == 1 ? "" : "invalid flags:";
    for (const auto& m : messages_) {
      text += messages_.size() == 1 ? m : "\n  " + m;
    }
    throw ConfigError(text);
  }

 private:
  std::vector<std::string> messages_;
};

std::string Fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// Shared flag groups.

struct DataFlags {
  std::string format = "libsvm";
  std::string positive_label = "1";
  std::string label_col = "label";
};

void AddDataFlags(CLI::App* app, DataFlags& f) {
  app->add_option("--format", f.format, "Input format: libsvm|csv")
      ->capture_default_str();
  app->add_option("--positive-label", f.positive_label,
                  "Label value mapped to the positive class")
      ->capture_default_str();
  app->add_option("--label-col", f.label_col, "CSV label column name")
      ->capture_default_str();
}

LoadOptions MakeLoadOptions(const DataFlags& f, Problems& problems) {
  LoadOptions options;
  problems.Check([&] { options.format = ParseDataFormat(f.format); });
  options.positive_label = f.positive_label;
  options.label_column = f.label_col;
  if (options.format == DataFormat::kLibsvm) {
    problems.Check([&] {
      if (!std::all_of(f.positive_label.begin(), f.positive_label.end(),
                       [](char c) { return std::isdigit(c) || c == '-' ||
                                           c == '+' || c == '.'; }) ||
          f.positive_label.empty()) {
        throw ConfigError("--positive-label must be numeric for libsvm input");
      }
    });
  }
  return options;
}

// Pads narrower LIBSVM matrices with zero columns so all share one width.
void AlignDimensions(std::vector<LabeledDataset*> sets, DataFormat format) {
  std::size_t d = 0;
  for (const auto* s : sets) d = std::max(d, s->dim());
  for (auto* s : sets) {
    if (s->dim() == d) continue;
    if (format == DataFormat::kCsv) {
      throw DataError("input files have different numbers of columns");
    }
    Matrix wide(s->x.rows(), d);
    for (std::size_t r = 0; r < s->x.rows(); ++r) {
      std::copy(s->x.row(r).begin(), s->x.row(r).end(), wide.row(r).begin());
    }
    s->x = std::move(wide);
  }
}

struct ForestFlags {
  std::string method = "pu-et";
  std::string risk = "nnpu";
  std::string loss = "quadratic";
  int trees = 100;
  std::string max_depth = "none";
  std::int64_t min_node_size = 1;
  std::string features = "sqrt";
  int thresholds = 1;
  std::string split_mode;  // empty: the method's default
  double prior = 0.0;
  std::uint64_t seed = 0;
  int jobs = 1;
  CLI::Option* prior_option = nullptr;
};

void AddForestFlags(CLI::App* app, ForestFlags& f) {
  app->add_option("--method", f.method,
                  "pu-et|pu-rf-bootstrap|pu-bagging-et|naive-pu-et|"
                  "supervised-pn-et")
      ->capture_default_str();
  app->add_option("--risk", f.risk, "Risk estimator: upu|nnpu|pn")
      ->capture_default_str();
  app->add_option("--loss", f.loss, "quadratic|logistic|sigmoid|savage")
      ->capture_default_str();
  app->add_option("--trees", f.trees, "Number of trees")->capture_default_str();
  app->add_option("--max-depth", f.max_depth,
                  "Maximum tree depth, or 'none' for unlimited")
      ->capture_default_str();
  app->add_option("--min-node-size", f.min_node_size,
                  "Nodes with fewer examples become leaves")
      ->capture_default_str();
  app->add_option("--features", f.features,
                  "Features sampled per node: an integer or 'sqrt'")
      ->capture_default_str();
  app->add_option("--thresholds", f.thresholds,
                  "Random thresholds per sampled feature")
      ->capture_default_str();
  app->add_option("--split-mode", f.split_mode,
                  "exact|random (default: exact for pu-rf-bootstrap, random "
                  "otherwise)");
  f.prior_option = app->add_option(
      "--prior", f.prior,
      "Class prior; defaults to the positive rate of labeled data");
  app->add_option("--seed", f.seed, "Random seed")->capture_default_str();
  app->add_option("--jobs", f.jobs, "Worker threads for tree training")
      ->capture_default_str();
}

bool PriorGiven(const ForestFlags& f) {
  return f.prior_option != nullptr && f.prior_option->count() > 0;
}

// Everything that can be checked before data is loaded. The prior is
// checked here only when given.
ForestConfig MakeForestConfig(const ForestFlags& f, Problems& problems) {
  ForestConfig config;
  problems.Check([&] {
    config = DefaultForestConfig(ParseForestMethod(f.method));
  });
  problems.Check([&] { config.estimator = ParseEstimator(f.risk); });
  problems.Check([&] { config.loss = ParseLoss(f.loss); });
  if (f.trees < 1) problems.Add("--trees must be >= 1");
  config.n_trees = std::max(f.trees, 1);
  if (f.jobs < 1) problems.Add("--jobs must be >= 1");
  config.jobs = std::max(f.jobs, 1);
  if (f.thresholds < 1) problems.Add("--thresholds must be >= 1");
  config.tree.splitter.n_thresholds = std::max(f.thresholds, 1);
  if (f.min_node_size < 1) problems.Add("--min-node-size must be >= 1");
  config.tree.stopping.min_node_size = std::max<std::int64_t>(f.min_node_size, 1);
  if (f.features != "sqrt") {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(
        f.features.data(), f.features.data() + f.features.size(), n);
    if (ec != std::errc() || ptr != f.features.data() + f.features.size() ||
        n < 1) {
      problems.Add("--features must be a positive integer or 'sqrt'");
    } else {
      config.tree.splitter.n_features = n;
    }
  }
  if (f.max_depth != "none") {
    int depth = 0;
    const auto [ptr, ec] = std::from_chars(
        f.max_depth.data(), f.max_depth.data() + f.max_depth.size(), depth);
    if (ec != std::errc() || ptr != f.max_depth.data() + f.max_depth.size() ||
        depth < 0) {
      problems.Add("--max-depth must be a nonnegative integer or 'none'");
    } else {
      config.tree.stopping.max_depth = depth;
    }
  }
  if (!f.split_mode.empty()) {
    problems.Check(
        [&] { config.tree.splitter.mode = ParseSplitMode(f.split_mode); });
  }
  if (PriorGiven(f)) {
    if (!(f.prior > 0.0 && f.prior < 1.0)) {
      problems.Add("--prior must lie in (0, 1)");
    }
    config.prior = f.prior;
  }
  config.seed = f.seed;
  problems.Check([&] {
    if (!UsesLabeledTrees(config.method) &&
        config.estimator == EstimatorKind::kPn) {
      throw ConfigError("--method " + f.method +
                        " needs --risk upu or --risk nnpu");
    }
    ValidateRiskCombination(config.EffectiveEstimator(), config.loss);
  });
  return config;
}

std::ostream& OpenOutput(const std::string& path, std::ofstream& file,
                         std::ostream& fallback) {
  if (path.empty() || path == "-") return fallback;
  file.open(path, std::ios::binary);
  if (!file) throw DataError("cannot write '" + path + "'");
  return file;
}

void RequireFile(const std::string& path, const char* what) {
  if (!std::filesystem::exists(path)) {
    throw DataError(std::string(what) + " file '" + path + "' not found");
  }
}

// ---------------------------------------------------------------------------
// train

struct TrainFlags {
  std::string positives;
  std::string unlabeled;
  std::string labeled;
  std::size_t n_positive = 1000;
  std::string output;
  DataFlags data;
  ForestFlags forest;
};

void RunTrain(const TrainFlags& f, std::ostream& err) {
  Problems problems;
  ForestConfig config = MakeForestConfig(f.forest, problems);
  const LoadOptions options = MakeLoadOptions(f.data, problems);
  const bool pu_files = !f.positives.empty() || !f.unlabeled.empty();
  if (pu_files && !f.labeled.empty()) {
    problems.Add("give either -p/-u or -d, not both");
  } else if (pu_files && (f.positives.empty() || f.unlabeled.empty())) {
    problems.Add("-p and -u must be given together");
  } else if (!pu_files && f.labeled.empty()) {
    problems.Add("training data missing: give -p and -u, or -d");
  }
  if (pu_files && config.method == ForestMethod::kSupervisedPnEt) {
    problems.Add("supervised-pn-et needs labeled data (-d)");
  }
  if (pu_files && !UsesLabeledTrees(config.method) && !PriorGiven(f.forest)) {
    problems.Add("--prior is required when training from -p/-u files");
  }
  if (f.n_positive < 1) problems.Add("--n-positive must be >= 1");
  problems.ThrowIfAny();

  Matrix first;
  Matrix second;
  if (pu_files) {
    RequireFile(f.positives, "positive");
    RequireFile(f.unlabeled, "unlabeled");
    auto p = LoadDataset(f.positives, options);
    auto u = LoadDataset(f.unlabeled, options);
    AlignDimensions({&p, &u}, options.format);
    first = std::move(p.x);
    second = std::move(u.x);
  } else {
    RequireFile(f.labeled, "labeled");
    const auto data = LoadDataset(f.labeled, options);
    if (config.method == ForestMethod::kSupervisedPnEt) {
      first = RowsWithLabel(data, +1);
      second = RowsWithLabel(data, -1);
    } else {
      auto pu = MakeScenarioForSeed(data, f.n_positive, config.seed);
      if (!PriorGiven(f.forest)) config.prior = pu.prior;
      first = std::move(pu.positives);
      second = std::move(pu.unlabeled);
    }
  }
  if (UsesLabeledTrees(config.method) && config.prior == 0.0) {
    const double n = static_cast<double>(first.rows() + second.rows());
    config.prior = n > 0 ? static_cast<double>(first.rows()) / n : 0.0;
  }

  std::vector<TreeTrainingRecord> log;
  const auto start = std::chrono::steady_clock::now();
  const ForestModel model = TrainForest(first, second, config, &log);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  for (const auto& rec : log) {
    err << "tree " << rec.index << ": depth " << rec.depth << ", "
        << rec.nodes << " nodes, " << rec.leaves << " leaves, "
        << Fixed(rec.seconds, 4) << " s\n";
  }
  err << "trained " << log.size() << " trees on " << first.rows() << " + "
      << second.rows() << " examples (d = " << model.dim() << ", prior "
      << Fixed(config.prior, 4) << ") in " << Fixed(elapsed.count(), 3)
      << " s\n";
  model.Save(f.output);
}

// ---------------------------------------------------------------------------
// predict

struct PredictFlags {
  std::string model;
  std::string data_path;
  std::string output;
  DataFlags data;
};

void RunPredict(const PredictFlags& f, std::ostream& out) {
  Problems problems;
  LoadOptions options = MakeLoadOptions(f.data, problems);
  problems.ThrowIfAny();
  const ForestModel model = ForestModel::Load(f.model);
  RequireFile(f.data_path, "input");
  std::ofstream file;
  std::ostream& sink = OpenOutput(f.output, file, out);
  if (std::filesystem::file_size(f.data_path) == 0) return;
  options.dim = model.dim();
  const auto data = LoadDataset(f.data_path, options);
  for (const int p : model.Predict(data.x)) sink << (p > 0 ? "1" : "-1") << '\n';
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateFlags {
  std::string model;
  std::string predictions;
  std::string data_path;
  std::string positives;
  std::string unlabeled;
  std::string risk;
  double prior = 0.0;
  CLI::Option* prior_option = nullptr;
  std::string output_format = "json";
  std::string output;
  DataFlags data;
};

std::vector<int> ReadPredictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<int> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line.erase(std::remove_if(line.begin(), line.end(),
                              [](char c) { return std::isspace(c); }),
               line.end());
    if (line.empty()) continue;
    if (line == "1" || line == "+1") {
      out.push_back(1);
    } else if (line == "-1") {
      out.push_back(-1);
    } else {
      throw DataError(path + ": line " + std::to_string(line_no) +
                      ": expected -1 or 1, got '" + line + "'");
    }
  }
  return out;
}

void RunEvaluate(const EvaluateFlags& f, std::ostream& out) {
  Problems problems;
  LoadOptions options = MakeLoadOptions(f.data, problems);
  if (f.model.empty() == f.predictions.empty()) {
    problems.Add("give exactly one of --model and --predictions");
  }
  const bool pu = !f.positives.empty() || !f.unlabeled.empty();
  if (pu && (f.positives.empty() || f.unlabeled.empty())) {
    problems.Add("-p and -u must be given together");
  }
  if (pu && f.model.empty()) problems.Add("-p/-u need --model");
  std::optional<EstimatorKind> risk;
  if (!f.risk.empty()) {
    problems.Check([&] { risk = ParseEstimator(f.risk); });
    if (risk == EstimatorKind::kPn) problems.Add("--risk must be upu or nnpu");
  }
  if (f.prior_option->count() > 0 && !(f.prior > 0.0 && f.prior < 1.0)) {
    problems.Add("--prior must lie in (0, 1)");
  }
  if (f.output_format != "json" && f.output_format != "csv") {
    problems.Add("--output-format must be json or csv");
  }
  problems.ThrowIfAny();

  std::optional<ForestModel> model;
  if (!f.model.empty()) {
    model = ForestModel::Load(f.model);
    options.dim = model->dim();
  }
  RequireFile(f.data_path, "labeled");
  const auto data = LoadDataset(f.data_path, options);
  const std::vector<int> predictions =
      model ? model->Predict(data.x) : ReadPredictions(f.predictions);
  const EvalSummary s = Evaluate(predictions, data.y);

  json result = {{"n", data.size()},       {"accuracy", s.accuracy},
                 {"f_score", s.f_score},   {"tp", s.tp},
                 {"fp", s.fp},             {"tn", s.tn},
                 {"fn", s.fn},
                 {"test_pn_risk", EmpiricalPnZeroOneRisk(predictions, data.y)}};
  if (pu) {
    const EstimatorKind estimator = risk.value_or(
        model->config().estimator == EstimatorKind::kPn
            ? EstimatorKind::kNnpu
            : model->config().estimator);
    const double prior =
        f.prior_option->count() > 0 ? f.prior : model->config().prior;
    if (!(prior > 0.0 && prior < 1.0)) {
      throw ConfigError("the model has no usable prior; pass --prior");
    }
    RequireFile(f.positives, "positive");
    RequireFile(f.unlabeled, "unlabeled");
    const auto p = LoadDataset(f.positives, options);
    const auto u = LoadDataset(f.unlabeled, options);
    result["train_pu_risk"] = EmpiricalPuZeroOneRisk(
        model->Predict(p.x), model->Predict(u.x), estimator, prior);
    result["train_pu_risk_estimator"] = std::string(EstimatorName(estimator));
  }

  std::ofstream file;
  std::ostream& sink = OpenOutput(f.output, file, out);
  if (f.output_format == "json") {
    sink << result.dump(2) << '\n';
    return;
  }
  std::string header;
  std::string row;
  for (const auto& [key, value] : result.items()) {
    header += (header.empty() ? "" : ",") + key;
    row += (row.empty() ? "" : ",") +
           (value.is_string() ? value.get<std::string>() : value.dump());
  }
  sink << header << '\n' << row << '\n';
}

// ---------------------------------------------------------------------------
// importance

struct ImportanceFlags {
  std::string model;
  std::string output;
  std::string pgm;
  std::string grid;
  bool normalized_pgm = false;
};

std::pair<int, int> ParseGrid(const std::string& grid) {
  const auto x = grid.find_first_of("xX");
  int w = 0;
  int h = 0;
  if (x != std::string::npos) {
    const auto a = std::from_chars(grid.data(), grid.data() + x, w);
    const auto b =
        std::from_chars(grid.data() + x + 1, grid.data() + grid.size(), h);
    if (a.ec == std::errc() && a.ptr == grid.data() + x &&
        b.ec == std::errc() && b.ptr == grid.data() + grid.size() && w > 0 &&
        h > 0) {
      return {w, h};
    }
  }
  throw ConfigError("--grid must look like WxH, got '" + grid + "'");
}

void RunImportance(const ImportanceFlags& f, std::ostream& out) {
  Problems problems;
  std::pair<int, int> grid{0, 0};
  if (!f.pgm.empty() && f.grid.empty()) problems.Add("--pgm needs --grid WxH");
  if (!f.grid.empty()) problems.Check([&] { grid = ParseGrid(f.grid); });
  problems.ThrowIfAny();

  const ForestModel model = ForestModel::Load(f.model);
  const ImportanceReport report = ComputeImportance(model);
  if (!f.pgm.empty()) {
    std::ofstream pgm(f.pgm, std::ios::binary);
    if (!pgm) throw DataError("cannot write '" + f.pgm + "'");
    WritePgm(pgm, f.normalized_pgm ? report.normalized : report.raw,
             grid.first, grid.second);
  }
  std::ofstream file;
  WriteImportanceCsv(OpenOutput(f.output, file, out), report);
}

// ---------------------------------------------------------------------------
// feature-curve and reproduce

struct ExperimentFlags {
  std::string labeled;
  std::string test;
  double test_fraction = 0.2;
  std::size_t n_positive = 1000;
  int replications = 5;
  std::string output_format = "csv";
  std::string output;
  DataFlags data;
  ForestFlags forest;
};

void AddExperimentFlags(CLI::App* app, ExperimentFlags& f) {
  app->add_option("--test", f.test,
                  "Labeled test file; without it the data is split randomly");
  app->add_option("--test-fraction", f.test_fraction,
                  "Test share of the random split")
      ->capture_default_str();
  app->add_option("--n-positive", f.n_positive,
                  "Labeled positives drawn per replication")
      ->capture_default_str();
  app->add_option("--replications", f.replications, "Replications per setting")
      ->capture_default_str();
  app->add_option("--output-format", f.output_format, "csv|json")
      ->capture_default_str();
  app->add_option("-o,--output", f.output, "Output file (default: stdout)");
  AddDataFlags(app, f.data);
  AddForestFlags(app, f.forest);
}

void CheckExperimentFlags(const ExperimentFlags& f, Problems& problems) {
  if (f.replications < 1) problems.Add("--replications must be >= 1");
  if (f.n_positive < 1) problems.Add("--n-positive must be >= 1");
  if (f.test.empty() && !(f.test_fraction > 0.0 && f.test_fraction < 1.0)) {
    problems.Add("--test-fraction must lie in (0, 1)");
  }
  if (f.output_format != "json" && f.output_format != "csv") {
    problems.Add("--output-format must be json or csv");
  }
}

// Train and test sets: the given test file, or a seeded random split.
std::pair<LabeledDataset, LabeledDataset> LoadExperimentData(
    const ExperimentFlags& f, const LoadOptions& options,
    const char* missing_hint) {
  if (!std::filesystem::exists(f.labeled)) {
    std::string message = "labeled file '" + f.labeled + "' not found";
    if (missing_hint != nullptr) message += "; " + std::string(missing_hint);
    throw DataError(message);
  }
  auto data = LoadDataset(f.labeled, options);
  if (!f.test.empty()) {
    RequireFile(f.test, "test");
    auto test = LoadDataset(f.test, options);
    AlignDimensions({&data, &test}, options.format);
    return {std::move(data), std::move(test)};
  }
  Rng rng(f.forest.seed);
  return TrainTestSplit(data, f.test_fraction, rng);
}

struct FeatureCurveFlags {
  ExperimentFlags experiment;
  std::vector<std::size_t> k_values;
  std::string ranking_model;
};

void RunFeatureCurve(const FeatureCurveFlags& f, std::ostream& out,
                     std::ostream& err) {
  const ExperimentFlags& e = f.experiment;
  Problems problems;
  ForestConfig config = MakeForestConfig(e.forest, problems);
  const LoadOptions options = MakeLoadOptions(e.data, problems);
  CheckExperimentFlags(e, problems);
  if (f.k_values.empty()) problems.Add("--k needs at least one value");
  for (const auto k : f.k_values) {
    if (k < 1) problems.Add("--k values must be >= 1");
  }
  problems.ThrowIfAny();

  auto [train, test] = LoadExperimentData(e, options, nullptr);
  std::vector<double> ranking;
  if (!f.ranking_model.empty()) {
    const ForestModel model = ForestModel::Load(f.ranking_model);
    if (model.dim() != train.dim()) {
      throw DataError("ranking model has " + std::to_string(model.dim()) +
                      " features, data has " + std::to_string(train.dim()));
    }
    ranking = ComputeImportance(model).raw;
  } else {
    const auto pu = MakeScenarioForSeed(train, e.n_positive, config.seed);
    ForestConfig ranking_config = config;
    if (ranking_config.prior == 0.0) ranking_config.prior = pu.prior;
    const ForestModel model =
        config.method == ForestMethod::kSupervisedPnEt
            ? TrainForest(RowsWithLabel(train, +1), RowsWithLabel(train, -1),
                          ranking_config)
            : TrainForest(pu.positives, pu.unlabeled, ranking_config);
    ranking = ComputeImportance(model).raw;
  }
  const auto curve = FeatureCurve(train, test, e.n_positive, config, ranking,
                                  f.k_values, config.seed, e.replications);
  std::ofstream file;
  std::ostream& sink = OpenOutput(e.output, file, out);
  if (e.output_format == "json") {
    json rows = json::array();
    for (const auto& p : curve) {
      rows.push_back({{"k", p.k},
                      {"mean_accuracy", p.mean_accuracy},
                      {"sd_accuracy", p.sd_accuracy}});
    }
    sink << rows.dump(2) << '\n';
  } else {
    sink << "k,mean_accuracy,sd_accuracy\n";
    for (const auto& p : curve) {
      sink << p.k << ',' << Fixed(p.mean_accuracy) << ','
           << Fixed(p.sd_accuracy) << '\n';
    }
  }
  for (const auto& p : curve) {
    err << "k = " << p.k << ": accuracy " << Fixed(100 * p.mean_accuracy, 2)
        << "% (" << Fixed(100 * p.sd_accuracy, 2) << ")\n";
  }
}

struct ReproduceSetting {
  std::string name;
  ForestMethod method;
  EstimatorKind estimator;
  LossKind loss;
};

const std::vector<ReproduceSetting>& ReproduceSettings() {
  static const std::vector<ReproduceSetting> settings = {
      {"pu-et/upu/quadratic", ForestMethod::kPuEt, EstimatorKind::kUpu,
       LossKind::kQuadratic},
      {"pu-et/upu/logistic", ForestMethod::kPuEt, EstimatorKind::kUpu,
       LossKind::kLogistic},
      {"pu-et/nnpu/quadratic", ForestMethod::kPuEt, EstimatorKind::kNnpu,
       LossKind::kQuadratic},
      {"pu-et/nnpu/logistic", ForestMethod::kPuEt, EstimatorKind::kNnpu,
       LossKind::kLogistic},
      {"supervised-pn-et", ForestMethod::kSupervisedPnEt, EstimatorKind::kNnpu,
       LossKind::kQuadratic},
      {"naive-pu-et", ForestMethod::kNaivePuEt, EstimatorKind::kNnpu,
       LossKind::kQuadratic},
      {"pu-bagging-et", ForestMethod::kPuBaggingEt, EstimatorKind::kNnpu,
       LossKind::kQuadratic},
  };
  return settings;
}

struct ReproduceFlags {
  ExperimentFlags experiment;
  std::vector<std::string> only;
};

void RunReproduce(const ReproduceFlags& f, std::ostream& out,
                  std::ostream& err) {
  const ExperimentFlags& e = f.experiment;
  Problems problems;
  const ForestConfig base = MakeForestConfig(e.forest, problems);
  const LoadOptions options = MakeLoadOptions(e.data, problems);
  CheckExperimentFlags(e, problems);
  std::vector<ReproduceSetting> settings;
  for (const auto& s : ReproduceSettings()) {
    if (f.only.empty() ||
        std::find(f.only.begin(), f.only.end(), s.name) != f.only.end()) {
      settings.push_back(s);
    }
  }
  for (const auto& name : f.only) {
    const auto& all = ReproduceSettings();
    if (std::none_of(all.begin(), all.end(),
                     [&](const auto& s) { return s.name == name; })) {
      problems.Add("unknown setting '" + name + "' in --only");
    }
  }
  problems.ThrowIfAny();

  const auto [train, test] = LoadExperimentData(e, options, kMushroomsHint);
  err << "train " << train.size() << " rows, test " << test.size()
      << " rows, d = " << train.dim() << '\n';

  json runs = json::array();
  json summary = json::array();
  for (const auto& setting : settings) {
    ForestConfig config = DefaultForestConfig(setting.method);
    config.estimator = setting.estimator;
    config.loss = setting.loss;
    config.n_trees = base.n_trees;
    config.jobs = base.jobs;
    config.prior = base.prior;
    config.tree = base.tree;
    if (e.forest.split_mode.empty()) {
      config.tree.splitter.mode = DefaultForestConfig(setting.method)
                                      .tree.splitter.mode;
    }
    const auto results = RunReplications(train, test, e.n_positive, config,
                                         base.seed, e.replications);
    std::vector<double> acc;
    std::vector<double> fs;
    std::vector<double> train_risk;
    std::vector<double> test_risk;
    for (const auto& r : results) {
      runs.push_back({{"setting", setting.name},
                      {"run_seed", r.seed},
                      {"accuracy", r.test.accuracy},
                      {"f_score", r.test.f_score},
                      {"train_pu_risk", r.train_pu_risk},
                      {"test_pn_risk", r.test_pn_risk},
                      {"seconds", r.seconds}});
      acc.push_back(r.test.accuracy);
      fs.push_back(r.test.f_score);
      train_risk.push_back(r.train_pu_risk);
      test_risk.push_back(r.test_pn_risk);
    }
    const MeanSd a = Summarize(acc);
    const MeanSd fscore = Summarize(fs);
    const MeanSd tr = Summarize(train_risk);
    const MeanSd te = Summarize(test_risk);
    summary.push_back({{"setting", setting.name},
                       {"accuracy_mean", a.mean},
                       {"accuracy_sd", a.sd},
                       {"f_score_mean", fscore.mean},
                       {"f_score_sd", fscore.sd},
                       {"train_pu_risk_mean", tr.mean},
                       {"train_pu_risk_sd", tr.sd},
                       {"test_pn_risk_mean", te.mean},
                       {"test_pn_risk_sd", te.sd}});
    err << std::left << std::setw(22) << setting.name << " accuracy "
        << Fixed(100 * a.mean, 2) << " (" << Fixed(100 * a.sd, 2) << ")  F "
        << Fixed(100 * fscore.mean, 2) << " (" << Fixed(100 * fscore.sd, 2)
        << ")  train risk " << Fixed(tr.mean, 3) << "  test risk "
        << Fixed(te.mean, 3) << '\n';
  }

  std::ofstream file;
  std::ostream& sink = OpenOutput(e.output, file, out);
  if (e.output_format == "json") {
    sink << json{{"runs", runs}, {"summary", summary}}.dump(2) << '\n';
    return;
  }
  sink << "setting,run_seed,accuracy,f_score,train_pu_risk,test_pn_risk\n";
  for (const auto& r : runs) {
    sink << r["setting"].get<std::string>() << ','
         << r["run_seed"].get<std::uint64_t>() << ','
         << Fixed(r["accuracy"].get<double>()) << ','
         << Fixed(r["f_score"].get<double>()) << ','
         << Fixed(r["train_pu_risk"].get<double>()) << ','
         << Fixed(r["test_pn_risk"].get<double>()) << '\n';
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Positive-unlabeled Extra Trees: train, predict, evaluate and "
               "explain tree ensembles from PU or labeled data",
               "puet"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with flag values; one "
                 "section per subcommand, command-line flags win");

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train", "Train a forest and save it");
  train_cmd->add_option("-p,--positives", train.positives,
                        "Labeled positive examples");
  train_cmd->add_option("-u,--unlabeled", train.unlabeled, "Unlabeled examples");
  train_cmd->add_option("-d,--data", train.labeled,
                        "Labeled data; a PU scenario is drawn from it unless "
                        "the method is supervised-pn-et");
  train_cmd->add_option("--n-positive", train.n_positive,
                        "Labeled positives drawn from -d data")
      ->capture_default_str();
  train_cmd->add_option("-o,--output", train.output, "Model file")->required();
  AddDataFlags(train_cmd, train.data);
  AddForestFlags(train_cmd, train.forest);

  PredictFlags predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Write one -1/1 prediction per input row");
  predict_cmd->add_option("--model", predict.model, "Model file")->required();
  predict_cmd->add_option("-d,--data", predict.data_path, "Input rows")
      ->required();
  predict_cmd->add_option("-o,--output", predict.output,
                          "Output file (default: stdout)");
  AddDataFlags(predict_cmd, predict.data);

  EvaluateFlags evaluate;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Accuracy, F-score and zero-one risks against true labels");
  evaluate_cmd->add_option("--model", evaluate.model, "Model file");
  evaluate_cmd->add_option("--predictions", evaluate.predictions,
                           "File with one -1/1 prediction per line");
  evaluate_cmd->add_option("-d,--data", evaluate.data_path, "Labeled data")
      ->required();
  evaluate_cmd->add_option("-p,--positives", evaluate.positives,
                           "Training positives for the PU training risk");
  evaluate_cmd->add_option("-u,--unlabeled", evaluate.unlabeled,
                           "Training unlabeled set for the PU training risk");
  evaluate_cmd->add_option("--risk", evaluate.risk,
                           "Estimator of the training risk: upu|nnpu "
                           "(default: the model's)");
  evaluate.prior_option = evaluate_cmd->add_option(
      "--prior", evaluate.prior, "Class prior (default: the model's)");
  evaluate_cmd->add_option("--output-format", evaluate.output_format,
                           "json|csv")
      ->capture_default_str();
  evaluate_cmd->add_option("-o,--output", evaluate.output,
                           "Output file (default: stdout)");
  AddDataFlags(evaluate_cmd, evaluate.data);

  ImportanceFlags importance;
  auto* importance_cmd = app.add_subcommand(
      "importance", "Risk-reduction feature importance of a model");
  importance_cmd->add_option("--model", importance.model, "Model file")
      ->required();
  importance_cmd->add_option("-o,--output", importance.output,
                             "CSV file (default: stdout)");
  importance_cmd->add_option("--pgm", importance.pgm,
                             "Also write the importances as a PGM image");
  importance_cmd->add_option("--grid", importance.grid,
                             "Image size WxH for --pgm");
  importance_cmd->add_flag("--normalized", importance.normalized_pgm,
                           "Draw the normalized importance in the PGM");

  FeatureCurveFlags curve;
  auto* curve_cmd = app.add_subcommand(
      "feature-curve", "Test accuracy when training on the top-k features");
  curve_cmd->add_option("-d,--data", curve.experiment.labeled, "Labeled data")
      ->required();
  curve_cmd->add_option("--k", curve.k_values, "Feature counts, e.g. 5,10,20")
      ->delimiter(',')
      ->required();
  curve_cmd->add_option("--model", curve.ranking_model,
                        "Rank features by this model's importance instead of "
                        "training a ranking forest");
  AddExperimentFlags(curve_cmd, curve.experiment);

  ReproduceFlags reproduce;
  reproduce.experiment.labeled = "data/mushrooms.libsvm";
  auto* reproduce_cmd = app.add_subcommand(
      "reproduce",
      "Run the PU benchmark protocol (all tree methods, replicated)");
  reproduce_cmd
      ->add_option("-d,--data", reproduce.experiment.labeled, "Labeled data")
      ->capture_default_str();
  reproduce_cmd->add_option("--only", reproduce.only,
                            "Restrict to these settings (comma separated)")
      ->delimiter(',');
  AddExperimentFlags(reproduce_cmd, reproduce.experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) RunTrain(train, err);
    if (*predict_cmd) RunPredict(predict, out);
    if (*evaluate_cmd) RunEvaluate(evaluate, out);
    if (*importance_cmd) RunImportance(importance, out);
    if (*curve_cmd) RunFeatureCurve(curve, out, err);
    if (*reproduce_cmd) RunReproduce(reproduce, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace puet::cli
