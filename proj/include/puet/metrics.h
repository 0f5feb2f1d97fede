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

#ifndef PUET_METRICS_H_
#define PUET_METRICS_H_

#include <cstdint>
#include <span>

#include "puet/risk.h"

namespace puet {

struct EvalSummary {
  double accuracy = 0.0;
  double f_score = 0.0;  // positive class; 0 when 2tp + fp + fn = 0
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t tn = 0;
  std::int64_t fn = 0;
};

// Throws DataError on a length mismatch or empty input.
EvalSummary Evaluate(std::span<const int> predictions,
                     std::span<const int> truth);

// Zero-one loss (1 - sign(v y)) / 2 with sign(0) = +1, plugged into the
// upu or nnpu estimator over predictions on the training P and U:
//   upu   pi * mean_P l(v, +1) - pi * mean_P l(v, -1) + mean_U l(v, -1)
//   nnpu  pi * mean_P l(v, +1) + max(0, mean_U l(v, -1) - pi * mean_P l(v, -1))
// Throws ConfigError for the pn estimator, DataError on empty P or U.
double EmpiricalPuZeroOneRisk(std::span<const int> predictions_p,
                              std::span<const int> predictions_u,
                              EstimatorKind estimator, double prior);

// Misclassification rate, 1 - accuracy.
double EmpiricalPnZeroOneRisk(std::span<const int> predictions,
                              std::span<const int> truth);

}  // namespace puet

#endif  // PUET_METRICS_H_
