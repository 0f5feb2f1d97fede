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

#include "puet/experiment.h"

#include <chrono>
#include <cmath>
#include <string>

#include "puet/errors.h"
#include "puet/importance.h"

namespace puet {

namespace {

constexpr std::uint64_t kScenarioStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

PUDataset MakeScenarioForSeed(const LabeledDataset& data,
                              std::size_t n_positive, std::uint64_t seed) {
  Rng rng(seed ^ kScenarioStream);
  return MakePuScenario(data, n_positive, rng);
}

ReplicationResult RunReplication(const LabeledDataset& train,
                                 const LabeledDataset& test,
                                 std::size_t n_positive, ForestConfig config,
                                 std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const PUDataset pu = MakeScenarioForSeed(train, n_positive, seed);
  if (config.prior == 0.0) config.prior = pu.prior;
  config.seed = seed;

  const ForestModel model =
      config.method == ForestMethod::kSupervisedPnEt
          ? TrainForest(RowsWithLabel(train, +1), RowsWithLabel(train, -1),
                        config)
          : TrainForest(pu.positives, pu.unlabeled, config);

  ReplicationResult result;
  result.seed = seed;
  result.prior = config.prior;
  const auto predictions = model.Predict(test.x);
  result.test = Evaluate(predictions, test.y);
  result.test_pn_risk = EmpiricalPnZeroOneRisk(predictions, test.y);
  const EstimatorKind risk_estimator =
      config.estimator == EstimatorKind::kPn ? EstimatorKind::kNnpu
                                             : config.estimator;
  result.train_pu_risk = EmpiricalPuZeroOneRisk(
      model.Predict(pu.positives), model.Predict(pu.unlabeled), risk_estimator,
      config.prior);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  result.seconds = elapsed.count();
  return result;
}

std::vector<ReplicationResult> RunReplications(const LabeledDataset& train,
                                               const LabeledDataset& test,
                                               std::size_t n_positive,
                                               const ForestConfig& config,
                                               std::uint64_t base_seed,
                                               int replications) {
  if (replications < 1) throw ConfigError("replications must be >= 1");
  std::vector<ReplicationResult> out;
  for (int r = 0; r < replications; ++r) {
    out.push_back(RunReplication(train, test, n_positive, config,
                                 base_seed + static_cast<std::uint64_t>(r)));
  }
  return out;
}

MeanSd Summarize(std::span<const double> values) {
  MeanSd s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (const double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::vector<CurvePoint> FeatureCurve(const LabeledDataset& train,
                                     const LabeledDataset& test,
                                     std::size_t n_positive,
                                     const ForestConfig& config,
                                     std::span<const double> ranking,
                                     std::span<const std::size_t> k_values,
                                     std::uint64_t base_seed,
                                     int replications) {
  if (k_values.empty()) throw ConfigError("feature curve needs at least one k");
  for (const std::size_t k : k_values) {
    if (k < 1 || k > ranking.size()) {
      throw ConfigError("k = " + std::to_string(k) + " outside [1, " +
                        std::to_string(ranking.size()) + "]");
    }
  }
  std::vector<CurvePoint> curve;
  for (const std::size_t k : k_values) {
    const auto features = TopFeatures(ranking, k);
    const auto sub_train = SelectFeatures(train, features);
    const auto sub_test = SelectFeatures(test, features);
    const auto runs = RunReplications(sub_train, sub_test, n_positive, config,
                                      base_seed, replications);
    std::vector<double> accuracy;
    for (const auto& run : runs) accuracy.push_back(run.test.accuracy);
    const MeanSd s = Summarize(accuracy);
    curve.push_back({k, s.mean, s.sd});
  }
  return curve;
}

}  // namespace puet
