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

#include "puet/metrics.h"

#include <algorithm>
#include <string>

#include "puet/errors.h"

namespace puet {

namespace {

double ZeroOne(int v, int y) { return v * y >= 0 ? 0.0 : 1.0; }

double MeanLoss(std::span<const int> predictions, int y) {
  double sum = 0.0;
  for (const int v : predictions) sum += ZeroOne(v, y);
  return sum / static_cast<double>(predictions.size());
}

}  // namespace

EvalSummary Evaluate(std::span<const int> predictions,
                     std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    throw DataError("got " + std::to_string(predictions.size()) +
                    " predictions for " + std::to_string(truth.size()) +
                    " labels");
  }
  if (truth.empty()) throw DataError("cannot evaluate zero predictions");
  EvalSummary s;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pred = predictions[i] > 0;
    const bool actual = truth[i] > 0;
    if (pred && actual) ++s.tp;
    if (pred && !actual) ++s.fp;
    if (!pred && !actual) ++s.tn;
    if (!pred && actual) ++s.fn;
  }
  s.accuracy = static_cast<double>(s.tp + s.tn) / static_cast<double>(truth.size());
  const std::int64_t denom = 2 * s.tp + s.fp + s.fn;
  s.f_score = denom == 0 ? 0.0
                         : 2.0 * static_cast<double>(s.tp) /
                               static_cast<double>(denom);
  return s;
}

double EmpiricalPuZeroOneRisk(std::span<const int> predictions_p,
                              std::span<const int> predictions_u,
                              EstimatorKind estimator, double prior) {
  if (estimator == EstimatorKind::kPn) {
    throw ConfigError("PU zero-one risk needs the upu or nnpu estimator");
  }
  if (predictions_p.empty() || predictions_u.empty()) {
    throw DataError("PU zero-one risk needs nonempty P and U predictions");
  }
  const double positive_part = prior * MeanLoss(predictions_p, +1);
  const double negative_part =
      MeanLoss(predictions_u, -1) - prior * MeanLoss(predictions_p, -1);
  if (estimator == EstimatorKind::kNnpu) {
    return positive_part + std::max(0.0, negative_part);
  }
  return positive_part + negative_part;
}

double EmpiricalPnZeroOneRisk(std::span<const int> predictions,
                              std::span<const int> truth) {
  const EvalSummary s = Evaluate(predictions, truth);
  return static_cast<double>(s.fp + s.fn) / static_cast<double>(truth.size());
}

}  // namespace puet
