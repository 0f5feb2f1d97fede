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

#ifndef PUET_EXPERIMENT_H_
#define PUET_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "puet/data_io.h"
#include "puet/forest.h"
#include "puet/metrics.h"

namespace puet {

struct ReplicationResult {
  std::uint64_t seed = 0;
  EvalSummary test;
  double prior = 0.0;
  double train_pu_risk = 0.0;  // zero-one, over the training P and U
  double test_pn_risk = 0.0;   // zero-one, over the labeled test set
  double seconds = 0.0;
};

// PU scenario of a replication, drawn from a stream derived from `seed` that
// does not overlap the per-tree streams of a forest trained with `seed`.
PUDataset MakeScenarioForSeed(const LabeledDataset& data,
                              std::size_t n_positive, std::uint64_t seed);

// One run of the PU protocol: samples `n_positive` labeled positives from
// `train`, uses all of `train` as U, fits a forest and scores it on `test`.
// A zero config.prior is replaced by the positive rate of `train`. The
// training risk uses config.estimator, or nnpu for labeled-tree methods.
// supervised-pn-et trains on the true labels of `train` instead.
ReplicationResult RunReplication(const LabeledDataset& train,
                                 const LabeledDataset& test,
                                 std::size_t n_positive, ForestConfig config,
                                 std::uint64_t seed);

// Runs `replications` replications with seeds base_seed, base_seed + 1, ...
std::vector<ReplicationResult> RunReplications(const LabeledDataset& train,
                                               const LabeledDataset& test,
                                               std::size_t n_positive,
                                               const ForestConfig& config,
                                               std::uint64_t base_seed,
                                               int replications);

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation; 0 for a single value
};
MeanSd Summarize(std::span<const double> values);

struct CurvePoint {
  std::size_t k = 0;
  double mean_accuracy = 0.0;
  double sd_accuracy = 0.0;
};

// For each k, keeps the k features ranked highest by `ranking` and reruns
// the replications on that subset. Throws ConfigError on an empty k list or
// a k outside [1, d].
std::vector<CurvePoint> FeatureCurve(const LabeledDataset& train,
                                     const LabeledDataset& test,
                                     std::size_t n_positive,
                                     const ForestConfig& config,
                                     std::span<const double> ranking,
                                     std::span<const std::size_t> k_values,
                                     std::uint64_t base_seed,
                                     int replications);

}  // namespace puet

#endif  // PUET_EXPERIMENT_H_
