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

#ifndef PUET_FOREST_H_
#define PUET_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "puet/losses.h"
#include "puet/matrix.h"
#include "puet/risk.h"
#include "puet/tree.h"

namespace puet {

enum class ForestMethod {
  kPuEt,            // full P and U per tree, random splits
  kPuRfBootstrap,   // bootstrap of P and of U per tree, exact splits
  kPuBaggingEt,     // P against a bootstrap of U taken as negatives
  kNaivePuEt,       // P against all of U taken as negatives
  kSupervisedPnEt,  // true positives against true negatives
};

// Accepts pu-et, pu-rf-bootstrap, pu-bagging-et, naive-pu-et and
// supervised-pn-et; underscores may replace the dashes.
ForestMethod ParseForestMethod(std::string_view name);
std::string_view ForestMethodName(ForestMethod method);

// True for the methods that train labeled-mode trees whatever the
// configured estimator says.
bool UsesLabeledTrees(ForestMethod method);

struct ForestConfig {
  ForestMethod method = ForestMethod::kPuEt;
  int n_trees = 100;
  EstimatorKind estimator = EstimatorKind::kNnpu;
  LossKind loss = LossKind::kQuadratic;
  TreeConfig tree;
  double prior = 0.0;
  std::uint64_t seed = 0;
  int jobs = 1;  // not part of the model; results do not depend on it

  // Estimator the trees are actually grown with.
  EstimatorKind EffectiveEstimator() const;
  // Throws ConfigError on any invalid or inconsistent setting.
  void Validate() const;
};

// Defaults for a method: 100 trees, ceil(sqrt(d)) features, one threshold,
// unlimited depth, node size 1. Exact splits for pu-rf-bootstrap, random
// splits otherwise.
ForestConfig DefaultForestConfig(ForestMethod method);

struct TreeTrainingRecord {
  int index = 0;
  double seconds = 0.0;
  int depth = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
};

class ForestModel {
 public:
  static constexpr int kFormatVersion = 1;

  ForestModel() = default;
  ForestModel(ForestConfig config, std::size_t dim, ExampleWeights weights,
              std::vector<Tree> trees);

  const ForestConfig& config() const { return config_; }
  std::size_t dim() const { return dim_; }
  const ExampleWeights& weights() const { return weights_; }
  const std::vector<Tree>& trees() const { return trees_; }

  // Majority vote; a tied vote predicts -1. Throws DataError on a dimension
  // mismatch.
  int Predict(std::span<const double> x) const;
  std::vector<int> Predict(const Matrix& x) const;

  void Serialize(std::ostream& out) const;
  std::string SerializeToString() const;
  // Throws DataError on a malformed stream or unknown format version.
  static ForestModel Deserialize(std::istream& in);

  void Save(const std::string& path) const;
  static ForestModel Load(const std::string& path);

 private:
  ForestConfig config_;
  std::size_t dim_ = 0;
  ExampleWeights weights_;
  std::vector<Tree> trees_;
};

// Trains a forest. `first` holds the labeled positives (or the positives of
// a labeled set for supervised-pn-et) and `second` the unlabeled examples
// (or the negatives). When `log` is given it receives one record per tree,
// in tree order.
ForestModel TrainForest(const Matrix& first, const Matrix& second,
                        const ForestConfig& config,
                        std::vector<TreeTrainingRecord>* log = nullptr);

}  // namespace puet

#endif  // PUET_FOREST_H_
