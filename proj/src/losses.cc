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

#include "puet/losses.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "closed_forms.h"
#include "puet/errors.h"

namespace puet {

LossKind ParseLoss(std::string_view name) {
  if (name == "quadratic") return LossKind::kQuadratic;
  if (name == "logistic") return LossKind::kLogistic;
  if (name == "sigmoid") return LossKind::kSigmoid;
  if (name == "savage") return LossKind::kSavage;
  throw ConfigError("unknown loss '" + std::string(name) +
                    "' (expected quadratic|logistic|sigmoid|savage)");
}

std::string_view LossName(LossKind loss) {
  switch (loss) {
    case LossKind::kQuadratic: return "quadratic";
    case LossKind::kLogistic: return "logistic";
    case LossKind::kSigmoid: return "sigmoid";
    case LossKind::kSavage: return "savage";
  }
  return "?";
}

namespace {

// 1 / (1 + exp(z)) without overflow for large |z|.
double Logistic(double z) {
  if (z >= 0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

}  // namespace

double LossValue(LossKind loss, double v, int y) {
  const double margin = v * static_cast<double>(y);
  switch (loss) {
    case LossKind::kQuadratic: {
      const double r = 1.0 - margin;
      return r * r;
    }
    case LossKind::kLogistic:
      // ln(1 + e^{-m}) = max(-m, 0) + ln(1 + e^{-|m|})
      return std::max(-margin, 0.0) + std::log1p(std::exp(-std::abs(margin)));
    case LossKind::kSigmoid:
      return Logistic(margin);
    case LossKind::kSavage: {
      const double s = Logistic(margin);
      return 4.0 * s * s;
    }
  }
  return 0.0;
}

double PnOptimalPartialRisk(LossKind loss, const PnNodeCounts& counts) {
  const double wp = static_cast<double>(counts.n_pos) * counts.weight;
  const double wn = static_cast<double>(counts.n_neg) * counts.weight;
  const double wt =
      static_cast<double>(counts.n_pos + counts.n_neg) * counts.weight;
  switch (loss) {
    case LossKind::kQuadratic:
    case LossKind::kSavage:
      return internal::QuadraticForm(wp, wn, wt);
    case LossKind::kLogistic:
      if (counts.n_pos == 0 || counts.n_neg == 0) return 0.0;
      return internal::EntropyForm(wp, wn, wt);
    case LossKind::kSigmoid:
      return internal::SigmoidForm(wp, wn);
  }
  return 0.0;
}

}  // namespace puet
