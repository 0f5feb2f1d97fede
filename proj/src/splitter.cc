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

#include "puet/splitter.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "puet/errors.h"

namespace puet {

namespace {

// Redraws of a random threshold that landed on an endpoint before falling
// back to the midpoint.
constexpr int kMaxThresholdDraws = 64;

struct FeatureRange {
  int feature;
  double lo;
  double hi;
};

// Lazy Fisher-Yates over the feature indices; stops after `wanted`
// non-constant features.
std::vector<FeatureRange> SampleFeatures(const TrainingSet& data,
                                         std::span<const RowIndex> rows,
                                         int wanted, Rng& rng,
                                         SplitWorkspace& workspace) {
  const int d = static_cast<int>(data.cols());
  auto& order = workspace.feature_order;
  order.resize(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);

  std::vector<FeatureRange> picked;
  for (int i = 0; i < d && static_cast<int>(picked.size()) < wanted; ++i) {
    std::uniform_int_distribution<int> pick(i, d - 1);
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(pick(rng))]);
    const int f = order[static_cast<std::size_t>(i)];
    const double* col = data.column(static_cast<std::size_t>(f)).data();
    double lo = col[rows.front()];
    double hi = lo;
    for (const RowIndex r : rows) {
      lo = std::min(lo, col[r]);
      hi = std::max(hi, col[r]);
    }
    if (lo < hi) picked.push_back({f, lo, hi});
  }
  return picked;
}

double DrawThreshold(double lo, double hi, Rng& rng) {
  if (std::nextafter(lo, hi) == hi) return lo;
  std::uniform_real_distribution<double> uniform(lo, hi);
  for (int i = 0; i < kMaxThresholdDraws; ++i) {
    const double t = uniform(rng);
    if (t > lo && t < hi) return t;
  }
  return Midpoint(lo, hi);
}

}  // namespace

SplitMode ParseSplitMode(std::string_view name) {
  if (name == "exact") return SplitMode::kExactSweep;
  if (name == "random") return SplitMode::kRandom;
  throw ConfigError("unknown split mode '" + std::string(name) +
                    "' (expected exact|random)");
}

std::string_view SplitModeName(SplitMode mode) {
  return mode == SplitMode::kExactSweep ? "exact" : "random";
}

int SplitterConfig::ResolveFeatures(std::size_t d) const {
  if (d == 0) return 0;
  const int dim = static_cast<int>(d);
  if (n_features > 0) return std::min(n_features, dim);
  const int root = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  return std::clamp(root, 1, dim);
}

void SplitterConfig::Validate() const {
  if (n_features < 0) throw ConfigError("feature count must be positive");
  if (n_thresholds < 1) throw ConfigError("threshold count must be >= 1");
}

bool ReductionsTie(double a, double b, double scale) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  double magnitude = std::max(std::abs(a), std::abs(b));
  if (std::isfinite(scale)) magnitude = std::max(magnitude, std::abs(scale));
  return std::abs(a - b) <= kReductionTieTolerance * magnitude;
}

bool IsBetterSplit(const SplitCandidate& a, const SplitCandidate& b,
                   double scale) {
  if (!ReductionsTie(a.reduction, b.reduction, scale)) {
    return a.reduction > b.reduction;
  }
  if (a.feature != b.feature) return a.feature < b.feature;
  return a.threshold < b.threshold;
}

double Midpoint(double a, double b) {
  double mid = (a + b) / 2.0;
  if (!std::isfinite(mid)) mid = a + (b - a) / 2.0;
  if (!std::isfinite(mid)) mid = a / 2.0 + b / 2.0;
  return mid < b ? mid : a;
}

std::vector<double> EnumerateThresholds(std::span<const double> sorted) {
  std::vector<double> out;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i - 1] < sorted[i]) out.push_back(Midpoint(sorted[i - 1], sorted[i]));
  }
  return out;
}

namespace {

// Sweep over (value, is_first) pairs sorted by value.
std::optional<SplitCandidate> Sweep(
    int feature, const std::vector<std::pair<double, bool>>& sorted,
    const RiskModel& model, double parent_risk) {
  std::int64_t total_first = 0;
  for (const auto& entry : sorted) total_first += entry.second ? 1 : 0;
  const auto total_second =
      static_cast<std::int64_t>(sorted.size()) - total_first;

  std::optional<SplitCandidate> best;
  std::int64_t left_first = 0;
  std::int64_t left_second = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i].second) {
      ++left_first;
    } else {
      ++left_second;
    }
    if (!(sorted[i].first < sorted[i + 1].first)) continue;
    const double reduction =
        model.Reduction(parent_risk, left_first, left_second,
                        total_first - left_first, total_second - left_second);
    if (reduction == -kInfinity) continue;
    // Only a clear improvement moves on; ties keep the lowest threshold.
    if (!best || (reduction > best->reduction &&
                  !ReductionsTie(reduction, best->reduction, parent_risk))) {
      best = SplitCandidate{feature,
                            Midpoint(sorted[i].first, sorted[i + 1].first),
                            reduction};
    }
  }
  return best;
}

void SortByValue(std::vector<std::pair<double, bool>>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

}  // namespace

std::optional<SplitCandidate> BestThresholdExact(
    const TrainingSet& data, std::span<const RowIndex> rows, int feature,
    const RiskModel& model, double parent_risk, SplitWorkspace& workspace) {
  auto& sorted = workspace.sorted;
  sorted.clear();
  const double* col = data.column(static_cast<std::size_t>(feature)).data();
  for (const RowIndex r : rows) sorted.emplace_back(col[r], data.is_first(r));
  SortByValue(sorted);
  return Sweep(feature, sorted, model, parent_risk);
}

std::optional<SplitCandidate> BestThresholdExact(
    std::span<const double> first_values, std::span<const double> second_values,
    const RiskModel& model) {
  std::vector<std::pair<double, bool>> sorted;
  for (const double v : first_values) sorted.emplace_back(v, true);
  for (const double v : second_values) sorted.emplace_back(v, false);
  if (sorted.empty()) throw InvariantError("split requested for an empty node");
  SortByValue(sorted);
  const double parent_risk = model.PartialRisk(
      static_cast<std::int64_t>(first_values.size()),
      static_cast<std::int64_t>(second_values.size()));
  return Sweep(0, sorted, model, parent_risk);
}

std::vector<SplitCandidate> SampleSplitCandidates(
    const TrainingSet& data, std::span<const RowIndex> rows,
    const SplitterConfig& config, Rng& rng, SplitWorkspace& workspace) {
  std::vector<SplitCandidate> out;
  if (rows.empty()) return out;
  const auto ranges = SampleFeatures(
      data, rows, config.ResolveFeatures(data.cols()), rng, workspace);
  for (const auto& range : ranges) {
    for (int k = 0; k < config.n_thresholds; ++k) {
      out.push_back({range.feature, DrawThreshold(range.lo, range.hi, rng), 0.0});
    }
  }
  return out;
}

double ScoreSplit(const TrainingSet& data, std::span<const RowIndex> rows,
                  int feature, double threshold, const RiskModel& model,
                  double parent_risk) {
  const double* col = data.column(static_cast<std::size_t>(feature)).data();
  std::int64_t left_first = 0;
  std::int64_t left_total = 0;
  std::int64_t total_first = 0;
  for (const RowIndex r : rows) {
    const bool first = data.is_first(r);
    total_first += first ? 1 : 0;
    if (col[r] <= threshold) {
      ++left_total;
      left_first += first ? 1 : 0;
    }
  }
  const auto total = static_cast<std::int64_t>(rows.size());
  const std::int64_t left_second = left_total - left_first;
  const std::int64_t right_first = total_first - left_first;
  const std::int64_t right_second = (total - total_first) - left_second;
  if (left_total == 0 || left_total == total) {
    throw InvariantError("split threshold leaves a child empty");
  }
  return model.Reduction(parent_risk, left_first, left_second, right_first,
                         right_second);
}

std::optional<SplitCandidate> FindSplit(const TrainingSet& data,
                                        std::span<const RowIndex> rows,
                                        const SplitterConfig& config,
                                        const RiskModel& model, Rng& rng,
                                        SplitWorkspace& workspace) {
  if (rows.empty()) throw InvariantError("split requested for an empty node");
  const NodeCounts counts = CountRows(data, rows);
  const double parent_risk = model.PartialRisk(counts.first, counts.second);

  std::optional<SplitCandidate> best;
  auto offer = [&](const SplitCandidate& c) {
    if (c.reduction == -kInfinity) return;
    if (!best || IsBetterSplit(c, *best, parent_risk)) best = c;
  };

  if (config.mode == SplitMode::kExactSweep) {
    const auto ranges = SampleFeatures(
        data, rows, config.ResolveFeatures(data.cols()), rng, workspace);
    for (const auto& range : ranges) {
      if (auto c = BestThresholdExact(data, rows, range.feature, model,
                                      parent_risk, workspace)) {
        offer(*c);
      }
    }
    return best;
  }

  for (auto c : SampleSplitCandidates(data, rows, config, rng, workspace)) {
    c.reduction =
        ScoreSplit(data, rows, c.feature, c.threshold, model, parent_risk);
    offer(c);
  }
  return best;
}

}  // namespace puet
