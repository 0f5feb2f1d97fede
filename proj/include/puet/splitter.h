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

#ifndef PUET_SPLITTER_H_
#define PUET_SPLITTER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "puet/risk.h"
#include "puet/rng.h"
#include "puet/training_set.h"

namespace puet {

enum class SplitMode { kExactSweep, kRandom };

// Accepts "exact" or "random".
SplitMode ParseSplitMode(std::string_view name);
std::string_view SplitModeName(SplitMode mode);

struct SplitterConfig {
  SplitMode mode = SplitMode::kRandom;
  // Features examined per node; 0 means ceil(sqrt(d)).
  int n_features = 0;
  // Random thresholds drawn per sampled feature (random mode only).
  int n_thresholds = 1;

  // Effective feature count for dimension d, clamped to [1, d].
  int ResolveFeatures(std::size_t d) const;
  // Throws ConfigError on negative F or T < 1.
  void Validate() const;
};

// Left child holds f <= threshold, right child f > threshold.
struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double reduction = 0.0;
};

// Relative gap below which two reductions count as tied.
inline constexpr double kReductionTieTolerance = 1e-12;

// True when a == b (including equal infinities) or both are finite and
// |a - b| <= kReductionTieTolerance * max(|a|, |b|, |scale|). Passing the
// parent risk as `scale` makes rounding noise around zero count as a tie.
bool ReductionsTie(double a, double b, double scale = 0.0);

// Order used for the argmax: larger reduction unless the two tie, then
// lower feature index, then lower threshold.
bool IsBetterSplit(const SplitCandidate& a, const SplitCandidate& b,
                   double scale = 0.0);

// Midpoints between consecutive distinct values of an ascending list.
std::vector<double> EnumerateThresholds(std::span<const double> sorted);

// Midpoint of a < b that stays strictly below b.
double Midpoint(double a, double b);

// Per-thread scratch buffers reused across nodes.
struct SplitWorkspace {
  std::vector<std::pair<double, bool>> sorted;  // (value, is_first)
  std::vector<int> feature_order;
};

// Best midpoint threshold of one feature by a single sorted sweep over the
// node. Returns nothing for a constant feature or when every midpoint has
// reduction -infinity.
std::optional<SplitCandidate> BestThresholdExact(
    const TrainingSet& data, std::span<const RowIndex> rows, int feature,
    const RiskModel& model, double parent_risk, SplitWorkspace& workspace);

// Same sweep on explicit value lists; `first_values` are the labeled
// positives (or positives in labeled mode), `second_values` the rest.
std::optional<SplitCandidate> BestThresholdExact(
    std::span<const double> first_values, std::span<const double> second_values,
    const RiskModel& model);

// Unscored random candidates: up to F distinct features drawn uniformly
// from those that are not constant on the node, and for each, T thresholds
// drawn uniformly from the open interval (min, max) of the feature.
std::vector<SplitCandidate> SampleSplitCandidates(
    const TrainingSet& data, std::span<const RowIndex> rows,
    const SplitterConfig& config, Rng& rng, SplitWorkspace& workspace);

// Reduction of splitting the node at (feature, threshold).
double ScoreSplit(const TrainingSet& data, std::span<const RowIndex> rows,
                  int feature, double threshold, const RiskModel& model,
                  double parent_risk);

// Best split of the node under `config`, or nothing when the node should
// become a leaf (no non-constant feature, or every candidate is -infinity).
std::optional<SplitCandidate> FindSplit(const TrainingSet& data,
                                        std::span<const RowIndex> rows,
                                        const SplitterConfig& config,
                                        const RiskModel& model, Rng& rng,
                                        SplitWorkspace& workspace);

}  // namespace puet

#endif  // PUET_SPLITTER_H_
