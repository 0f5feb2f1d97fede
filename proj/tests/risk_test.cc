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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.h"
#include "puet/errors.h"
#include "puet/rng.h"

namespace puet {
namespace {

NodeStats FromWeights(double wp, double wn) {
  NodeStats s;
  s.positive_weight = wp;
  s.negative_weight = wn;
  s.total_weight = wp + wn;
  s.v_star = s.total_weight > 0.0 ? wp / s.total_weight : kInfinity;
  return s;
}

ExampleWeights Weights(double w_p, double w_u) {
  ExampleWeights w;
  w.w_p = w_p;
  w.w_u = w_u;
  return w;
}

TEST(EstimatorTest, NamesAndCombinations) {
  for (const auto e :
       {EstimatorKind::kUpu, EstimatorKind::kNnpu, EstimatorKind::kPn}) {
    EXPECT_EQ(ParseEstimator(EstimatorName(e)), e);
  }
  EXPECT_THROW(ParseEstimator("nnPU"), ConfigError);
  EXPECT_THROW(ValidateRiskCombination(EstimatorKind::kUpu, LossKind::kSavage),
               ConfigError);
  EXPECT_THROW(ValidateRiskCombination(EstimatorKind::kNnpu, LossKind::kSavage),
               ConfigError);
  EXPECT_THROW(
      ValidateRiskCombination(EstimatorKind::kNnpu, LossKind::kSigmoid),
      ConfigError);
  EXPECT_NO_THROW(
      ValidateRiskCombination(EstimatorKind::kUpu, LossKind::kSigmoid));
  EXPECT_NO_THROW(
      ValidateRiskCombination(EstimatorKind::kPn, LossKind::kSavage));
  EXPECT_THROW(RiskModel(EstimatorKind::kNnpu, LossKind::kSavage,
                         Weights(0.1, 0.1)),
               ConfigError);
}

TEST(ExampleWeightsTest, PuAndPnWeights) {
  const auto pu = ExampleWeights::ForPu(4, 10, 0.4);
  EXPECT_DOUBLE_EQ(pu.w_p, 0.1);
  EXPECT_DOUBLE_EQ(pu.w_u, 0.1);
  const auto pn = ExampleWeights::ForPn(3, 5);
  EXPECT_DOUBLE_EQ(pn.w_p, 0.125);
  EXPECT_DOUBLE_EQ(pn.w_u, 0.125);
  EXPECT_THROW(ExampleWeights::ForPu(0, 10, 0.4), ConfigError);
  EXPECT_THROW(ExampleWeights::ForPu(4, 10, 1.0), ConfigError);
  EXPECT_THROW(ExampleWeights::ForPu(4, 10, 0.0), ConfigError);
}

TEST(NodeStatsTest, Examples) {
  const auto a = ComputeNodeStats(2, 3, Weights(0.25, 0.25));
  EXPECT_DOUBLE_EQ(a.positive_weight, 0.5);
  EXPECT_DOUBLE_EQ(a.negative_weight, 0.25);
  EXPECT_DOUBLE_EQ(a.v_star, 2.0 / 3.0);

  const auto b = ComputeNodeStats(0, 5, Weights(0.25, 0.2));
  EXPECT_DOUBLE_EQ(b.positive_weight, 0.0);
  EXPECT_DOUBLE_EQ(b.negative_weight, 1.0);
  EXPECT_DOUBLE_EQ(b.v_star, 0.0);

  const auto c = ComputeNodeStats(2, 0, Weights(0.25, 0.2));
  EXPECT_DOUBLE_EQ(c.positive_weight, 0.5);
  EXPECT_DOUBLE_EQ(c.negative_weight, -0.5);
  EXPECT_EQ(c.v_star, kInfinity);

  EXPECT_THROW(ComputeNodeStats(0, 0, Weights(0.25, 0.2)), InvariantError);
}

TEST(OptimalPartialRiskTest, Examples) {
  EXPECT_NEAR(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kQuadratic,
                                 FromWeights(0.3, 0.3)),
              0.6, 1e-12);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kQuadratic,
                               FromWeights(0.5, -0.5)),
            -kInfinity);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kNnpu, LossKind::kQuadratic,
                               FromWeights(0.5, -0.2)),
            0.0);
  EXPECT_NEAR(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kLogistic,
                                 FromWeights(0.3, 0.3)),
              0.6 * std::log(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kSigmoid,
                                      FromWeights(0.2, 0.5)),
                   0.2);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kNnpu, LossKind::kLogistic,
                               FromWeights(0.4, 0.0)),
            0.0);
}

TEST(OptimalPartialRiskTest, UpuLogisticBranches) {
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kLogistic,
                               FromWeights(0.4, -0.1)),
            -kInfinity);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kLogistic,
                               FromWeights(0.0, 0.3)),
            0.0);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kLogistic,
                               FromWeights(0.3, 0.0)),
            0.0);
  EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kUpu, LossKind::kSigmoid,
                               FromWeights(0.3, -0.1)),
            -0.1);
}

TEST(OptimalPartialRiskTest, MirroredNodesAreBitIdentical) {
  Rng rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = unit(rng);
    const double b = unit(rng);
    for (const LossKind loss :
         {LossKind::kQuadratic, LossKind::kLogistic, LossKind::kSigmoid}) {
      EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kPn, loss, FromWeights(a, b)),
                OptimalPartialRisk(EstimatorKind::kPn, loss, FromWeights(b, a)));
    }
  }
}

TEST(OptimalPartialRiskTest, NnpuIsNonnegativeAndNotBelowUpu) {
  Rng rng(10);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double wp = unit(rng);
    const double wn = -wp + unit(rng) * (1.0 + wp);
    if (wp + wn <= 0.0) continue;
    const NodeStats s = FromWeights(wp, wn);
    for (const LossKind loss : {LossKind::kQuadratic, LossKind::kLogistic}) {
      const double nn = OptimalPartialRisk(EstimatorKind::kNnpu, loss, s);
      const double u = OptimalPartialRisk(EstimatorKind::kUpu, loss, s);
      EXPECT_GE(nn, 0.0);
      EXPECT_GE(nn, u - 1e-15);
      if (wn >= 0.0) {
        EXPECT_EQ(nn, u);
      }
    }
  }
}

TEST(OptimalPartialRiskTest, PnCountsThroughPuFormulas) {
  Rng rng(11);
  std::uniform_int_distribution<int> count(0, 300);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t pos = count(rng);
    const std::int64_t neg = count(rng) + 1;
    const double w = 1.0 / 301.0;
    const NodeStats pn = ComputePnNodeStats(pos, neg, w);
    const NodeStats pu = FromWeights(pos * w, neg * w);
    for (const LossKind loss : {LossKind::kQuadratic, LossKind::kLogistic}) {
      const double expected = PnOptimalPartialRisk(loss, {pos, neg, w});
      EXPECT_EQ(OptimalPartialRisk(EstimatorKind::kPn, loss, pn), expected);
      // W_n is rebuilt as total - W_p, which costs a few ulps.
      const double tol = 1e-12 * std::max(1.0, std::abs(expected));
      EXPECT_NEAR(OptimalPartialRisk(EstimatorKind::kUpu, loss, pu), expected, tol);
      EXPECT_NEAR(OptimalPartialRisk(EstimatorKind::kNnpu, loss, pu), expected,
                  tol);
    }
  }
}

TEST(OptimalPartialRiskTest, MatchesOracleOnSampledWeights) {
  // A smaller version of the acceptance oracle suite, kept here so unit
  // runs catch regressions early.
  Rng rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double wp = 0.01 + unit(rng);
    const double wn = -wp + unit(rng) * (1.0 + wp);
    for (const auto [e, l] :
         {std::pair{EstimatorKind::kUpu, LossKind::kQuadratic},
          std::pair{EstimatorKind::kUpu, LossKind::kLogistic},
          std::pair{EstimatorKind::kUpu, LossKind::kSigmoid},
          std::pair{EstimatorKind::kNnpu, LossKind::kQuadratic},
          std::pair{EstimatorKind::kNnpu, LossKind::kLogistic}}) {
      const double closed = OptimalPartialRisk(e, l, FromWeights(wp, wn));
      const auto m = oracle::Minimize(e, l, wp, wn);
      if (closed == -kInfinity) {
        EXPECT_TRUE(m.unbounded);
      } else {
        ASSERT_FALSE(m.unbounded);
        EXPECT_NEAR(closed, static_cast<double>(m.value), 1e-6);
      }
    }
  }
}

TEST(ConstantPredictionTest, Examples) {
  EXPECT_EQ(OptimalConstantPrediction(FromWeights(0.7, 0.3)), +1);
  EXPECT_EQ(OptimalConstantPrediction(FromWeights(0.5, 0.5)), -1);
  EXPECT_EQ(OptimalConstantPrediction(FromWeights(0.5, -0.5)), +1);
  EXPECT_EQ(OptimalConstantPrediction(FromWeights(0.0, 0.5)), -1);
}

TEST(ConstantPredictionTest, MatchesBruteForce) {
  Rng rng(13);
  std::uniform_int_distribution<int> count(0, 40);
  std::uniform_real_distribution<double> prior(0.05, 0.95);
  for (int i = 0; i < 1000; ++i) {
    const auto w = ExampleWeights::ForPu(1 + count(rng), 1 + count(rng),
                                         prior(rng));
    const std::int64_t cp = count(rng);
    const std::int64_t cu = count(rng) + (cp == 0 ? 1 : 0);
    const NodeStats s = ComputeNodeStats(cp, cu, w);
    for (const auto e : {EstimatorKind::kUpu, EstimatorKind::kNnpu}) {
      for (const auto l : {LossKind::kQuadratic, LossKind::kLogistic,
                           LossKind::kSigmoid, LossKind::kSavage}) {
        EXPECT_EQ(OptimalConstantPrediction(s),
                  oracle::BruteForcePrediction(e, l, s.positive_weight,
                                               s.negative_weight));
      }
    }
  }
}

TEST(ReductionTest, Arithmetic) {
  EXPECT_NEAR(CombineReduction(0.6, 0.2, 0.1), 0.3, 1e-15);
  EXPECT_EQ(CombineReduction(-kInfinity, 0.2, -kInfinity), -kInfinity);
  EXPECT_EQ(CombineReduction(0.5, -kInfinity, 0.1), kInfinity);
}

TEST(ReductionTest, RejectsInconsistentChildren) {
  const RiskModel model(EstimatorKind::kNnpu, LossKind::kQuadratic,
                        ExampleWeights::ForPu(10, 20, 0.3));
  const auto parent = model.Stats(4, 6);
  EXPECT_THROW(model.Reduction(parent, model.Stats(4, 6), model.Stats(0, 0)),
               InvariantError);
  EXPECT_THROW(model.Reduction(parent, model.Stats(1, 2), model.Stats(3, 3)),
               InvariantError);
}

TEST(ReductionTest, UpuReductionIsNonnegative) {
  // Exhaustive small-case enumeration of every split of every small node.
  const auto w = ExampleWeights::ForPu(7, 9, 0.45);
  for (const LossKind loss :
       {LossKind::kQuadratic, LossKind::kLogistic, LossKind::kSigmoid}) {
    const RiskModel model(EstimatorKind::kUpu, loss, w);
    for (int cp = 0; cp <= 7; ++cp) {
      for (int cu = 0; cu <= 9; ++cu) {
        if (cp + cu < 2) continue;
        const NodeStats parent = model.Stats(cp, cu);
        const bool unbounded = model.PartialRisk(parent) == -kInfinity;
        for (int lp = 0; lp <= cp; ++lp) {
          for (int lu = 0; lu <= cu; ++lu) {
            if (lp + lu == 0 || lp + lu == cp + cu) continue;
            const double r = model.Reduction(parent, model.Stats(lp, lu),
                                             model.Stats(cp - lp, cu - lu));
            if (unbounded) {
              EXPECT_EQ(r, -kInfinity);
              continue;
            }
            EXPECT_GE(r, -1e-12) << LossName(loss) << " " << cp << "/" << cu
                                 << " -> " << lp << "/" << lu;
          }
        }
      }
    }
  }
}

TEST(RiskModelTest, PurityAndNodeWeight) {
  const RiskModel upu(EstimatorKind::kUpu, LossKind::kQuadratic,
                      ExampleWeights::ForPu(2, 4, 0.5));
  EXPECT_TRUE(upu.IsPure(upu.Stats(2, 0)));
  EXPECT_FALSE(upu.IsPure(upu.Stats(1, 2)));
  const RiskModel nnpu(EstimatorKind::kNnpu, LossKind::kQuadratic,
                       ExampleWeights::ForPu(2, 4, 0.5));
  // w_p = 0.25, w_u = 0.25: one positive and one unlabeled gives v* = 1.
  EXPECT_TRUE(nnpu.IsPure(nnpu.Stats(1, 1)));
  EXPECT_TRUE(nnpu.IsPure(nnpu.Stats(0, 3)));
  EXPECT_FALSE(nnpu.IsPure(nnpu.Stats(1, 3)));
  EXPECT_DOUBLE_EQ(nnpu.NodeWeight(2, 4), 1.5);
}

}  // namespace
}  // namespace puet
