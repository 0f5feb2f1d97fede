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

#include "puet/risk.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "closed_forms.h"
#include "puet/errors.h"

namespace puet {

EstimatorKind ParseEstimator(std::string_view name) {
  if (name == "upu") return EstimatorKind::kUpu;
  if (name == "nnpu") return EstimatorKind::kNnpu;
  if (name == "pn") return EstimatorKind::kPn;
  throw ConfigError("unknown risk estimator '" + std::string(name) +
                    "' (expected upu|nnpu|pn)");
}

std::string_view EstimatorName(EstimatorKind estimator) {
  switch (estimator) {
    case EstimatorKind::kUpu: return "upu";
    case EstimatorKind::kNnpu: return "nnpu";
    case EstimatorKind::kPn: return "pn";
  }
  return "?";
}

void ValidateRiskCombination(EstimatorKind estimator, LossKind loss) {
  const bool ok = [&] {
    switch (estimator) {
      case EstimatorKind::kPn: return true;
      case EstimatorKind::kUpu: return loss != LossKind::kSavage;
      case EstimatorKind::kNnpu:
        return loss == LossKind::kQuadratic || loss == LossKind::kLogistic;
    }
    return false;
  }();
  if (!ok) {
    throw ConfigError("unsupported combination: " +
                      std::string(EstimatorName(estimator)) + " risk with " +
                      std::string(LossName(loss)) + " loss");
  }
}

ExampleWeights ExampleWeights::ForPu(std::int64_t n_p, std::int64_t n_u,
                                     double prior) {
  if (n_p < 1 || n_u < 1) {
    throw ConfigError("PU weights need at least one positive and one "
                      "unlabeled example");
  }
  if (!(prior > 0.0 && prior < 1.0)) {
    throw ConfigError("class prior must lie in (0, 1), got " +
                      std::to_string(prior));
  }
  ExampleWeights w;
  w.prior = prior;
  w.n_p = n_p;
  w.n_u = n_u;
  w.w_p = prior / static_cast<double>(n_p);
  w.w_u = 1.0 / static_cast<double>(n_u);
  return w;
}

ExampleWeights ExampleWeights::ForPn(std::int64_t n_pos, std::int64_t n_neg) {
  if (n_pos < 0 || n_neg < 0 || n_pos + n_neg < 1) {
    throw ConfigError("labeled weights need a nonempty training set");
  }
  ExampleWeights w;
  w.n_p = n_pos;
  w.n_u = n_neg;
  w.prior = static_cast<double>(n_pos) / static_cast<double>(n_pos + n_neg);
  w.w_p = 1.0 / static_cast<double>(n_pos + n_neg);
  w.w_u = w.w_p;
  return w;
}

NodeStats ComputeNodeStats(std::int64_t count_p, std::int64_t count_u,
                           const ExampleWeights& weights) {
  if (count_p < 0 || count_u < 0 || count_p + count_u == 0) {
    throw InvariantError("node statistics requested for an empty node");
  }
  NodeStats s;
  s.count_p = count_p;
  s.count_u = count_u;
  s.positive_weight = static_cast<double>(count_p) * weights.w_p;
  s.total_weight = static_cast<double>(count_u) * weights.w_u;
  // Adding 0.0 turns a -0.0 difference into +0.0.
  s.negative_weight = (s.total_weight - s.positive_weight) + 0.0;
  s.v_star = s.total_weight > 0.0 ? s.positive_weight / s.total_weight
                                  : kInfinity;
  return s;
}

NodeStats ComputePnNodeStats(std::int64_t n_pos, std::int64_t n_neg,
                             double weight) {
  if (n_pos < 0 || n_neg < 0 || n_pos + n_neg == 0) {
    throw InvariantError("node statistics requested for an empty node");
  }
  NodeStats s;
  s.count_p = n_pos;
  s.count_u = n_neg;
  s.positive_weight = static_cast<double>(n_pos) * weight;
  s.negative_weight = static_cast<double>(n_neg) * weight;
  s.total_weight = static_cast<double>(n_pos + n_neg) * weight;
  s.v_star = s.positive_weight / s.total_weight;
  return s;
}

namespace {

// The boundary tests below compare W_p against W_p + W_n directly instead of
// comparing the rounded quotient v* against 1.
bool AboveOne(const NodeStats& s) {
  return s.positive_weight > s.total_weight;
}
bool AtOne(const NodeStats& s) { return s.positive_weight == s.total_weight; }

double QuadraticForm(const NodeStats& s) {
  return internal::QuadraticForm(s.positive_weight, s.negative_weight,
                                 s.total_weight);
}
double EntropyForm(const NodeStats& s) {
  return internal::EntropyForm(s.positive_weight, s.negative_weight,
                               s.total_weight);
}
double SigmoidForm(const NodeStats& s) {
  return internal::SigmoidForm(s.positive_weight, s.negative_weight);
}

double UpuRisk(LossKind loss, const NodeStats& s) {
  switch (loss) {
    case LossKind::kQuadratic:
      if (s.total_weight == 0.0) return -kInfinity;
      return QuadraticForm(s);
    case LossKind::kLogistic:
      if (s.total_weight == 0.0 || AboveOne(s)) return -kInfinity;
      if (s.positive_weight == 0.0 || AtOne(s)) return 0.0;
      return EntropyForm(s);
    case LossKind::kSigmoid:
      return SigmoidForm(s);
    case LossKind::kSavage:
      break;
  }
  ValidateRiskCombination(EstimatorKind::kUpu, loss);
  return 0.0;
}

double NnpuRisk(LossKind loss, const NodeStats& s) {
  switch (loss) {
    case LossKind::kQuadratic:
      if (s.total_weight == 0.0 || AboveOne(s)) return 0.0;
      return QuadraticForm(s);
    case LossKind::kLogistic:
      if (s.total_weight == 0.0 || AboveOne(s) || AtOne(s) ||
          s.positive_weight == 0.0) {
        return 0.0;
      }
      return EntropyForm(s);
    case LossKind::kSigmoid:
    case LossKind::kSavage:
      break;
  }
  ValidateRiskCombination(EstimatorKind::kNnpu, loss);
  return 0.0;
}

double PnRisk(LossKind loss, const NodeStats& s) {
  switch (loss) {
    case LossKind::kQuadratic:
    case LossKind::kSavage:
      return QuadraticForm(s);
    case LossKind::kLogistic:
      if (s.positive_weight == 0.0 || s.negative_weight == 0.0) return 0.0;
      return EntropyForm(s);
    case LossKind::kSigmoid:
      return SigmoidForm(s);
  }
  return 0.0;
}

}  // namespace

double OptimalPartialRisk(EstimatorKind estimator, LossKind loss,
                          const NodeStats& stats) {
  switch (estimator) {
    case EstimatorKind::kUpu: return UpuRisk(loss, stats);
    case EstimatorKind::kNnpu: return NnpuRisk(loss, stats);
    case EstimatorKind::kPn: return PnRisk(loss, stats);
  }
  return 0.0;
}

int OptimalConstantPrediction(const NodeStats& stats) {
  // v* > 0.5 <=> 2 W_p > W_p + W_n; also covers v* = +infinity.
  return 2.0 * stats.positive_weight > stats.total_weight ? +1 : -1;
}

double CombineReduction(double parent_risk, double left_risk,
                        double right_risk) {
  if (parent_risk == -kInfinity) return -kInfinity;
  if (left_risk == -kInfinity || right_risk == -kInfinity) return kInfinity;
  // Summing the children first keeps the result symmetric in left/right.
  return parent_risk - (left_risk + right_risk);
}

RiskModel::RiskModel(EstimatorKind estimator, LossKind loss,
                     ExampleWeights weights)
    : estimator_(estimator), loss_(loss), weights_(weights) {
  ValidateRiskCombination(estimator, loss);
}

NodeStats RiskModel::Stats(std::int64_t count_p, std::int64_t count_u) const {
  if (estimator_ == EstimatorKind::kPn) {
    return ComputePnNodeStats(count_p, count_u, weights_.w_p);
  }
  return ComputeNodeStats(count_p, count_u, weights_);
}

double RiskModel::Reduction(const NodeStats& parent, const NodeStats& left,
                            const NodeStats& right) const {
  if (left.count_p + right.count_p != parent.count_p ||
      left.count_u + right.count_u != parent.count_u) {
    throw InvariantError("child counts do not partition the parent node");
  }
  if (left.count_p + left.count_u == 0 || right.count_p + right.count_u == 0) {
    throw InvariantError("split leaves a child empty");
  }
  return CombineReduction(PartialRisk(parent), PartialRisk(left),
                          PartialRisk(right));
}

double RiskModel::Reduction(double parent_risk, std::int64_t left_p,
                            std::int64_t left_u, std::int64_t right_p,
                            std::int64_t right_u) const {
  return CombineReduction(parent_risk, PartialRisk(left_p, left_u),
                          PartialRisk(right_p, right_u));
}

bool RiskModel::IsPure(const NodeStats& stats) const {
  const double risk = PartialRisk(stats);
  return estimator_ == EstimatorKind::kUpu ? risk == -kInfinity : risk == 0.0;
}

double RiskModel::NodeWeight(std::int64_t count_p, std::int64_t count_u) const {
  return static_cast<double>(count_p) * weights_.w_p +
         static_cast<double>(count_u) * weights_.w_u;
}

}  // namespace puet
