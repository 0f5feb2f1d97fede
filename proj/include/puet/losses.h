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

#ifndef PUET_LOSSES_H_
#define PUET_LOSSES_H_

#include <cstdint>
#include <string_view>

namespace puet {

enum class LossKind { kQuadratic, kLogistic, kSigmoid, kSavage };

// Accepts exactly "quadratic", "logistic", "sigmoid" or "savage".
// Throws ConfigError otherwise.
LossKind ParseLoss(std::string_view name);
std::string_view LossName(LossKind loss);

// l(v, y) for a real score v and a label y in {-1, +1}:
//   quadratic  (1 - vy)^2
//   logistic   ln(1 + exp(-vy))
//   sigmoid    1 / (1 + exp(vy))
//   savage     4 / (1 + exp(vy))^2
double LossValue(LossKind loss, double v, int y);

// Node content of a fully labeled training set. `weight` is the per-example
// weight, 1/|D| for the whole training set.
struct PnNodeCounts {
  std::int64_t n_pos = 0;
  std::int64_t n_neg = 0;
  double weight = 0.0;
};

// Minimum over constant scores v of sum_i w * l(v, y_i) on the node.
//   quadratic, savage  4 w n_pos n_neg / (n_pos + n_neg)   (= 2|S|w Gini)
//   logistic           |S| w H(S), with 0 ln 0 = 0
//   sigmoid            w min(n_pos, n_neg)
double PnOptimalPartialRisk(LossKind loss, const PnNodeCounts& counts);

}  // namespace puet

#endif  // PUET_LOSSES_H_
