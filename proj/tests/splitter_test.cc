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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "oracles.h"
#include "puet/errors.h"

namespace puet {
namespace {

Matrix Column(const std::vector<double>& values) {
  Matrix m;
  for (const double v : values) m.AppendRow(std::span<const double>(&v, 1));
  return m;
}

// P' at {2, 3}, U' at {2, 3, 8, 9}, w_p = w_u = 0.25.
RiskModel ToyModel() {
  ExampleWeights w;
  w.w_p = 0.25;
  w.w_u = 0.25;
  w.prior = 0.5;
  w.n_p = 2;
  w.n_u = 4;
  return RiskModel(EstimatorKind::kNnpu, LossKind::kQuadratic, w);
}

TEST(ThresholdsTest, Examples) {
  EXPECT_EQ(EnumerateThresholds(std::vector<double>{1, 2, 4}),
            (std::vector<double>{1.5, 3.0}));
  EXPECT_TRUE(EnumerateThresholds(std::vector<double>{5, 5, 5}).empty());
  EXPECT_EQ(EnumerateThresholds(std::vector<double>{0, 1}),
            (std::vector<double>{0.5}));
}

TEST(ThresholdsTest, MidpointStaysBetweenValues) {
  const double a = 1.0;
  const double b = std::nextafter(1.0, 2.0);
  EXPECT_EQ(Midpoint(a, b), a);
  EXPECT_EQ(Midpoint(1e308, 1.7e308), 1e308 / 2 + 1.7e308 / 2);
  EXPECT_LT(Midpoint(-1e308, -1e307), -1e307);
}

TEST(BestThresholdExactTest, OneDimensionalToy) {
  const auto split = BestThresholdExact(std::vector<double>{2, 3},
                                        std::vector<double>{2, 3, 8, 9},
                                        ToyModel());
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(split->threshold, 5.5);
  // Parent W_p = 0.5, W_n = 0.5 gives risk 1; the children are pure.
  EXPECT_NEAR(split->reduction, 1.0, 1e-12);
}

TEST(BestThresholdExactTest, ToyAgainstEveryMidpoint) {
  const RiskModel model = ToyModel();
  const NodeStats parent = model.Stats(2, 4);
  const double r25 = model.Reduction(parent, model.Stats(1, 1), model.Stats(1, 3));
  const double r55 = model.Reduction(parent, model.Stats(2, 2), model.Stats(0, 2));
  const double r85 = model.Reduction(parent, model.Stats(2, 3), model.Stats(0, 1));
  EXPECT_GT(r55, r25);
  EXPECT_GT(r55, r85);
}

TEST(BestThresholdExactTest, ConstantAndTwoPointFeatures) {
  const RiskModel model = ToyModel();
  EXPECT_FALSE(BestThresholdExact(std::vector<double>{4, 4},
                                  std::vector<double>{4}, model)
                   .has_value());
  const auto two = BestThresholdExact(std::vector<double>{1},
                                      std::vector<double>{3}, model);
  ASSERT_TRUE(two.has_value());
  EXPECT_EQ(two->threshold, 2.0);
}

TEST(BestThresholdExactTest, MatchesBruteForceWithDuplicates) {
  Rng rng(31);
  std::uniform_int_distribution<int> count(1, 32);
  std::uniform_int_distribution<int> level(0, 6);
  std::uniform_real_distribution<double> prior(0.1, 0.9);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> p(static_cast<std::size_t>(count(rng)));
    std::vector<double> u(static_cast<std::size_t>(count(rng)));
    for (auto& v : p) v = level(rng);
    for (auto& v : u) v = level(rng) * 0.5;
    const EstimatorKind e = i % 2 == 0 ? EstimatorKind::kUpu : EstimatorKind::kNnpu;
    const RiskModel model(
        e, LossKind::kQuadratic,
        ExampleWeights::ForPu(static_cast<std::int64_t>(p.size()),
                              static_cast<std::int64_t>(u.size()), prior(rng)));
    const NodeStats parent = model.Stats(static_cast<std::int64_t>(p.size()),
                                         static_cast<std::int64_t>(u.size()));
    const double parent_risk = model.PartialRisk(parent);
    const auto brute = oracle::BruteForceBestSplit(
        p, u,
        [&](std::int64_t lp, std::int64_t lu, std::int64_t rp, std::int64_t ru) {
          return model.Reduction(parent, model.Stats(lp, lu), model.Stats(rp, ru));
        },
        [&](double a, double b) {
          return a > b && !ReductionsTie(a, b, parent_risk);
        });
    const auto sweep = BestThresholdExact(p, u, model);
    ASSERT_EQ(brute.has_value(), sweep.has_value());
    if (!brute) continue;
    EXPECT_EQ(brute->threshold, sweep->threshold);
    if (std::isinf(brute->reduction)) {
      EXPECT_EQ(brute->reduction, sweep->reduction);
    } else {
      EXPECT_NEAR(brute->reduction, sweep->reduction, 1e-10);
    }
  }
}

TEST(TieTest, ToleranceAndOrder) {
  EXPECT_TRUE(ReductionsTie(1.0, 1.0 + 1e-14));
  EXPECT_FALSE(ReductionsTie(1.0, 1.0 + 1e-9));
  EXPECT_TRUE(ReductionsTie(kInfinity, kInfinity));
  EXPECT_FALSE(ReductionsTie(kInfinity, 1e300));
  // Rounding noise around zero ties when measured against the parent risk.
  EXPECT_TRUE(ReductionsTie(1e-17, -2e-17, 0.5));
  EXPECT_FALSE(ReductionsTie(1e-17, -2e-17, 0.0));

  const SplitCandidate high{3, 1.0, 0.3};
  const SplitCandidate low{0, 1.0, 0.1};
  EXPECT_TRUE(IsBetterSplit(high, low));
  EXPECT_FALSE(IsBetterSplit(low, high));
  const SplitCandidate same_low_feature{1, 5.0, 0.3};
  EXPECT_TRUE(IsBetterSplit(same_low_feature, high));
  const SplitCandidate lower_threshold{1, 2.0, 0.3};
  EXPECT_TRUE(IsBetterSplit(lower_threshold, same_low_feature));
}

class SplitterDataTest : public ::testing::Test {
 protected:
  // Three non-constant features and one constant feature.
  SplitterDataTest() {
    Rng rng(41);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> row = {normal(rng), 7.0, normal(rng), normal(rng)};
      (i < 8 ? p_ : u_).AppendRow(row);
    }
  }
  Matrix p_;
  Matrix u_;
};

TEST_F(SplitterDataTest, SamplesDistinctNonConstantFeatures) {
  const TrainingSet data(p_, u_);
  const auto rows = data.AllRows();
  SplitterConfig config;
  config.n_features = 2;
  config.n_thresholds = 1;
  SplitWorkspace ws;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto candidates = SampleSplitCandidates(data, rows, config, rng, ws);
    ASSERT_EQ(candidates.size(), 2u);
    EXPECT_NE(candidates[0].feature, candidates[1].feature);
    for (const auto& c : candidates) {
      EXPECT_NE(c.feature, 1);
      double lo = 1e300;
      double hi = -1e300;
      for (const auto r : rows) {
        lo = std::min(lo, data.at(r, static_cast<std::size_t>(c.feature)));
        hi = std::max(hi, data.at(r, static_cast<std::size_t>(c.feature)));
        EXPECT_NE(c.threshold, data.at(r, static_cast<std::size_t>(c.feature)));
      }
      EXPECT_GT(c.threshold, lo);
      EXPECT_LT(c.threshold, hi);
    }
  }
}

TEST_F(SplitterDataTest, SamplingIsDeterministic) {
  const TrainingSet data(p_, u_);
  const auto rows = data.AllRows();
  SplitterConfig config;
  config.n_features = 3;
  config.n_thresholds = 4;
  SplitWorkspace ws;
  Rng a(5);
  Rng b(5);
  const auto first = SampleSplitCandidates(data, rows, config, a, ws);
  const auto second = SampleSplitCandidates(data, rows, config, b, ws);
  ASSERT_EQ(first.size(), 12u);
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].feature, second[i].feature);
    EXPECT_EQ(first[i].threshold, second[i].threshold);
  }
}

TEST(SplitterTest, AllConstantNodeHasNoCandidates) {
  const Matrix p = Column({1, 1});
  const Matrix u = Column({1, 1, 1});
  const TrainingSet data(p, u);
  SplitterConfig config;
  SplitWorkspace ws;
  Rng rng(1);
  EXPECT_TRUE(SampleSplitCandidates(data, data.AllRows(), config, rng, ws).empty());
  EXPECT_FALSE(FindSplit(data, data.AllRows(), config, ToyModel(), rng, ws)
                   .has_value());
}

TEST(SplitterTest, AdjacentDoublesUseTheLowerValue) {
  const double lo = 1.0;
  const double hi = std::nextafter(1.0, 2.0);
  const Matrix p = Column({lo});
  const Matrix u = Column({hi});
  const TrainingSet data(p, u);
  SplitterConfig config;
  SplitWorkspace ws;
  Rng rng(1);
  const auto candidates =
      SampleSplitCandidates(data, data.AllRows(), config, rng, ws);
  ASSERT_EQ(candidates.size(), 1u);
  EXPECT_EQ(candidates[0].threshold, lo);
}

TEST(FindSplitTest, ExactModeOnToy) {
  const Matrix p = Column({2, 3});
  const Matrix u = Column({2, 3, 8, 9});
  const TrainingSet data(p, u);
  SplitterConfig config;
  config.mode = SplitMode::kExactSweep;
  config.n_features = 1;
  SplitWorkspace ws;
  Rng rng(3);
  const auto split = FindSplit(data, data.AllRows(), config, ToyModel(), rng, ws);
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(split->feature, 0);
  EXPECT_EQ(split->threshold, 5.5);
}

TEST(FindSplitTest, SingleCandidateAndBestOfTwo) {
  // One feature: the only candidate is returned as scored by ScoreSplit.
  const Matrix p = Column({2, 3});
  const Matrix u = Column({2, 3, 8, 9});
  const TrainingSet data(p, u);
  const auto rows = data.AllRows();
  const RiskModel model = ToyModel();
  SplitterConfig config;
  config.n_features = 1;
  config.n_thresholds = 1;
  SplitWorkspace ws;
  Rng rng(8);
  Rng replay(8);
  const auto drawn = SampleSplitCandidates(data, rows, config, replay, ws);
  ASSERT_EQ(drawn.size(), 1u);
  const auto split = FindSplit(data, rows, config, model, rng, ws);
  ASSERT_TRUE(split.has_value());
  EXPECT_EQ(split->threshold, drawn[0].threshold);
  const double parent = model.PartialRisk(2, 4);
  EXPECT_EQ(split->reduction,
            ScoreSplit(data, rows, 0, drawn[0].threshold, model, parent));

  // Many thresholds on the toy: the best one falls inside (3, 8) where the
  // reduction is the largest.
  config.n_thresholds = 64;
  const auto best = FindSplit(data, rows, config, model, rng, ws);
  ASSERT_TRUE(best.has_value());
  EXPECT_GT(best->threshold, 3.0);
  EXPECT_LT(best->threshold, 8.0);
  EXPECT_NEAR(best->reduction, 1.0, 1e-12);
}

TEST(ScoreSplitTest, RejectsEmptyChild) {
  const Matrix p = Column({2, 3});
  const Matrix u = Column({2, 3, 8, 9});
  const TrainingSet data(p, u);
  const RiskModel model = ToyModel();
  EXPECT_THROW(ScoreSplit(data, data.AllRows(), 0, 9.0, model, 1.0),
               InvariantError);
}

TEST(SplitModeTest, Names) {
  EXPECT_EQ(ParseSplitMode("exact"), SplitMode::kExactSweep);
  EXPECT_EQ(ParseSplitMode("random"), SplitMode::kRandom);
  EXPECT_THROW(ParseSplitMode("best"), ConfigError);
  SplitterConfig config;
  EXPECT_EQ(config.ResolveFeatures(784), 28);
  EXPECT_EQ(config.ResolveFeatures(117), 11);
  config.n_features = 50;
  EXPECT_EQ(config.ResolveFeatures(10), 10);
  config.n_thresholds = 0;
  EXPECT_THROW(config.Validate(), ConfigError);
}

}  // namespace
}  // namespace puet
