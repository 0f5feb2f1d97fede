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

#ifndef PUET_RISK_H_
#define PUET_RISK_H_

#include <cstdint>
#include <limits>
#include <string_view>

#include "puet/losses.h"

namespace puet {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class EstimatorKind { kUpu, kNnpu, kPn };

// Accepts exactly "upu", "nnpu" or "pn".
EstimatorKind ParseEstimator(std::string_view name);
std::string_view EstimatorName(EstimatorKind estimator);

// Throws ConfigError for combinations without a closed-form partial risk:
// savage under upu/nnpu, sigmoid under nnpu.
void ValidateRiskCombination(EstimatorKind estimator, LossKind loss);

// Per-example weights, fixed once per training run from the full P and U
// sets. In fully labeled mode the "P" side holds the positives, the "U" side
// the negatives, and both weights are 1/|D|.
struct ExampleWeights {
  double w_p = 0.0;
  double w_u = 0.0;
  double prior = 0.0;
  std::int64_t n_p = 0;
  std::int64_t n_u = 0;

  // w_p = prior / n_p, w_u = 1 / n_u. Throws ConfigError unless
  // 0 < prior < 1 and both counts are positive.
  static ExampleWeights ForPu(std::int64_t n_p, std::int64_t n_u, double prior);
  static ExampleWeights ForPn(std::int64_t n_pos, std::int64_t n_neg);
};

// Aggregated weights at a node holding P' (count_p) and U' (count_u).
struct NodeStats {
  std::int64_t count_p = 0;
  std::int64_t count_u = 0;
  // W_p = |P'| w_p.
  double positive_weight = 0.0;
  // W_n = |U'| w_u - |P'| w_p; may be negative.
  double negative_weight = 0.0;
  // W_p + W_n = |U'| w_u, computed directly from the count.
  double total_weight = 0.0;
  // W_p / (W_p + W_n); +infinity when the node has positives and no
  // unlabeled examples.
  double v_star = 0.0;
};

// PU statistics. Throws InvariantError when both counts are zero.
NodeStats ComputeNodeStats(std::int64_t count_p, std::int64_t count_u,
                           const ExampleWeights& weights);

// Fully labeled statistics: W_p = n_pos w, W_n = n_neg w, v* = q+.
NodeStats ComputePnNodeStats(std::int64_t n_pos, std::int64_t n_neg,
                             double weight);

// Minimum over constant scores of the node's partial risk under the given
// estimator. Values of -infinity are possible under upu (unbounded below).
// `stats` must come from ComputeNodeStats for upu/nnpu and from
// ComputePnNodeStats for pn. Throws ConfigError for unsupported
// combinations.
double OptimalPartialRisk(EstimatorKind estimator, LossKind loss,
                          const NodeStats& stats);

// Best prediction among {-1, +1}: +1 iff v* > 0.5. Same for every supported
// estimator and loss; the tie v* = 0.5 predicts -1.
int OptimalConstantPrediction(const NodeStats& stats);

// parent - (left + right) over optimal partial risks, extended to infinities:
// a -infinity parent gives -infinity, otherwise a -infinity child gives
// +infinity.
double CombineReduction(double parent_risk, double left_risk,
                        double right_risk);

// Estimator, loss and example weights of one training run. This is the
// single entry point the splitter and tree builder use, so PU and fully
// labeled training share one code path.
class RiskModel {
 public:
  RiskModel(EstimatorKind estimator, LossKind loss, ExampleWeights weights);

  EstimatorKind estimator() const { return estimator_; }
  LossKind loss() const { return loss_; }
  const ExampleWeights& weights() const { return weights_; }

  NodeStats Stats(std::int64_t count_p, std::int64_t count_u) const;
  double PartialRisk(const NodeStats& stats) const {
    return OptimalPartialRisk(estimator_, loss_, stats);
  }
  double PartialRisk(std::int64_t count_p, std::int64_t count_u) const {
    return PartialRisk(Stats(count_p, count_u));
  }

  // Risk reduction of splitting `parent` into `left` and `right`. Throws
  // InvariantError when the child counts do not add up to the parent or a
  // child is empty.
  double Reduction(const NodeStats& parent, const NodeStats& left,
                   const NodeStats& right) const;

  // Same, with the parent's risk precomputed; used by the split sweep.
  double Reduction(double parent_risk, std::int64_t left_p,
                   std::int64_t left_u, std::int64_t right_p,
                   std::int64_t right_u) const;

  // Terminal branch of the closed form: -infinity under upu, 0 otherwise.
  bool IsPure(const NodeStats& stats) const;

  // |P'| w_p + |U'| w_u, the divisor of the normalized importance.
  double NodeWeight(std::int64_t count_p, std::int64_t count_u) const;

 private:
  EstimatorKind estimator_;
  LossKind loss_;
  ExampleWeights weights_;
};

}  // namespace puet

#endif  // PUET_RISK_H_
