// Copyright 2026 The ssdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ssdlab/metrics/metrics.h"

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"
#include "support/oracles.h"

namespace ssdlab::metrics {
namespace {

using ::ssdlab::testing::BruteGini;
using ::ssdlab::testing::BrutePearson;

TEST(GiniTest, PerfectEquality) {
  std::vector<double> r = {10, 10, 10, 10, 10};
  EXPECT_EQ(Gini(r), 0.0);
  EXPECT_EQ(Equity(r), 1.0);
}

TEST(GiniTest, OneAgentTakesAll) {
  std::vector<double> r = {0, 0, 0, 0, 100};
  EXPECT_EQ(Gini(r), 0.8);
  EXPECT_DOUBLE_EQ(Equity(r), 0.2);
}

TEST(GiniTest, NegativeShiftRule) {
  std::vector<double> r = {-5, 5};
  // Shifted to {0.0001, 10.0001}; ordered pairs contribute 2 * 10.
  EXPECT_NEAR(Gini(r), 20.0 / (2 * 2 * 10.0002), 1e-15);
  EXPECT_NEAR(Gini(r), 0.49999, 1e-5);
}

TEST(GiniTest, AllZeroIsZeroAndTooFewAgentsIsContractViolation) {
  EXPECT_EQ(Gini(std::vector<double>{0, 0, 0}), 0.0);
  EXPECT_THROW(Gini(std::vector<double>{1.0}), ContractViolation);
}

TEST(GiniTest, MatchesBruteForceOnRandomVectors) {
  CounterRng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + rng.UniformInt(9);
    std::vector<double> r(k);
    const bool negatives = trial % 2 == 0;
    for (double& v : r) v = negatives ? rng.Uniform(-50, 50) : rng.Uniform(0, 100);
    EXPECT_NEAR(Gini(r), BruteGini(r), 1e-12);
    EXPECT_EQ(Equity(r) + Gini(r), 1.0);
  }
}

TEST(GiniTest, ScaleInvarianceAndBounds) {
  CounterRng rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 2 + rng.UniformInt(6);
    std::vector<double> r(k), scaled(k);
    for (int i = 0; i < k; ++i) {
      r[i] = rng.Uniform(0, 10);
      scaled[i] = 3.7 * r[i];
    }
    EXPECT_NEAR(Gini(r), Gini(scaled), 1e-12);
    EXPECT_GE(Gini(r), 0.0);
    EXPECT_LE(Gini(r), (k - 1.0) / k + 1e-12);
  }
}

TEST(RolesTest, SignStructure) {
  auto labels = RoleQuadrants(std::vector<double>{10, 0}, std::vector<double>{0, 10});
  EXPECT_EQ(labels[0], RoleLabel::kEatMoreCleanLess);
  EXPECT_EQ(labels[1], RoleLabel::kEatLessCleanMore);
}

TEST(RolesTest, IdenticalAgentsFallOnLessSide) {
  auto labels = RoleQuadrants(std::vector<double>{3, 3, 3}, std::vector<double>{1, 1, 1});
  for (auto l : labels) EXPECT_EQ(l, RoleLabel::kEatLessCleanLess);
}

TEST(RolesTest, MatchesIndependentZScores) {
  const std::vector<double> apples = {12, 3, 7, 7, 20};
  const std::vector<double> waste = {0, 9, 4, 11, 2};
  auto z = [](const std::vector<double>& v, size_t i) {
    double m = 0;
    for (double x : v) m += x;
    m /= v.size();
    double var = 0;
    for (double x : v) var += (x - m) * (x - m);
    return (v[i] - m) / std::sqrt(var / v.size());
  };
  auto labels = RoleQuadrants(apples, waste);
  std::set<int> seen;
  for (size_t i = 0; i < apples.size(); ++i) {
    const bool more_a = z(apples, i) > 0, more_w = z(waste, i) > 0;
    RoleLabel want = more_a ? (more_w ? RoleLabel::kEatMoreCleanMore : RoleLabel::kEatMoreCleanLess)
                            : (more_w ? RoleLabel::kEatLessCleanMore : RoleLabel::kEatLessCleanLess);
    EXPECT_EQ(labels[i], want) << i;
    EXPECT_NEAR(ZScores(apples)[i], z(apples, i), 1e-12);
  }
  EXPECT_EQ(labels.size(), apples.size());
}

TEST(PearsonTest, AffineAndDegenerateCases) {
  std::vector<double> x = {1, 2, 3, 5, 8};
  std::vector<double> y, neg;
  for (double v : x) {
    y.push_back(2 * v + 1);
    neg.push_back(-v);
  }
  EXPECT_NEAR(*Pearson(x, y), 1.0, 1e-15);
  EXPECT_NEAR(*Pearson(x, neg), -1.0, 1e-15);
  EXPECT_FALSE(Pearson(x, std::vector<double>(5, 2.0)).has_value());
  EXPECT_FALSE(Pearson(std::vector<double>{1.0}, std::vector<double>{2.0}).has_value());
}

TEST(PearsonTest, MatchesDirectFormulaAndIsSymmetric) {
  CounterRng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(20), y(20);
    for (int i = 0; i < 20; ++i) {
      x[i] = rng.Uniform(-3, 3);
      y[i] = 0.5 * x[i] + rng.Uniform(-2, 2);
    }
    EXPECT_NEAR(*Pearson(x, y), BrutePearson(x, y), 1e-12);
    EXPECT_NEAR(*Pearson(x, y), *Pearson(y, x), 1e-15);
    std::vector<double> ax;
    for (double v : x) ax.push_back(4 * v - 7);
    EXPECT_NEAR(*Pearson(ax, y), *Pearson(x, y), 1e-12);
  }
}

EpisodeStats Episode(std::vector<double> returns, std::vector<int64_t> apples,
                     std::vector<int64_t> waste) {
  EpisodeStats ep;
  for (size_t i = 0; i < returns.size(); ++i) {
    AgentEpisodeStats a;
    a.extrinsic_return = returns[i];
    a.apples_eaten = apples[i];
    a.waste_cleaned = waste[i];
    ep.agents.push_back(a);
  }
  return ep;
}

TEST(PopulationReportTest, SingleEpisodeFlagsSingleSample) {
  std::vector<EpisodeStats> eps = {Episode({1, 2}, {1, 2}, {0, 3})};
  auto r = MakePopulationReport(eps);
  EXPECT_TRUE(r.single_sample);
  EXPECT_EQ(r.population_return.se, 0.0);
  EXPECT_EQ(r.equity.se, 0.0);
  EXPECT_FALSE(r.waste_return_r.has_value());
}

TEST(PopulationReportTest, IdenticalEpisodesHaveZeroError) {
  std::vector<EpisodeStats> eps(5, Episode({4, 1, 0}, {4, 1, 0}, {0, 2, 5}));
  auto r = MakePopulationReport(eps);
  EXPECT_FALSE(r.single_sample);
  EXPECT_EQ(r.population_return.mean, 5.0);
  EXPECT_EQ(r.population_return.se, 0.0);
  EXPECT_EQ(r.equity.se, 0.0);
}

TEST(PopulationReportTest, KnownReturnsMatchHandArithmetic) {
  // Population returns 2, 4, 6, 8, 10: mean 6, sample std sqrt(10).
  std::vector<EpisodeStats> eps;
  for (int e = 1; e <= 5; ++e) eps.push_back(Episode({1.0 * e, 1.0 * e}, {e, 0}, {0, e}));
  auto r = MakePopulationReport(eps);
  EXPECT_DOUBLE_EQ(r.population_return.mean, 6.0);
  EXPECT_NEAR(r.population_return.se, std::sqrt(10.0) / std::sqrt(5.0), 1e-12);
  EXPECT_DOUBLE_EQ(r.equity.mean, 1.0);
  EXPECT_NEAR(*r.waste_return_r, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.agents[0].mean_apples, 3.0);
  EXPECT_EQ(r.agents[0].role, RoleLabel::kEatMoreCleanLess);
  EXPECT_EQ(r.agents[1].role, RoleLabel::kEatLessCleanMore);
}

}  // namespace
}  // namespace ssdlab::metrics
