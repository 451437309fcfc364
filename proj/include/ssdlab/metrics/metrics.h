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

#ifndef SSDLAB_METRICS_METRICS_H_
#define SSDLAB_METRICS_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssdlab::metrics {

// Shift added on top of -min(returns) when any return is negative.
inline constexpr double kGiniShift = 1e-4;

struct AgentEpisodeStats {
  double extrinsic_return = 0;
  double intrinsic_return = 0;
  int64_t apples_eaten = 0;
  int64_t waste_cleaned = 0;
  int64_t tags_fired = 0;
  int64_t times_tagged = 0;
};

struct EpisodeStats {
  std::vector<AgentEpisodeStats> agents;
  int length = 0;
  uint64_t seed = 0;

  std::vector<double> Returns() const;
  double PopulationReturn() const;
  int64_t TotalWasteCleaned() const;
};

// Pairwise-difference Gini over K >= 2 returns, with the negative-shift rule.
// An all-zero (post-shift) vector has Gini 0.
double Gini(std::span<const double> returns);
inline double Equity(std::span<const double> returns) { return 1.0 - Gini(returns); }

enum class RoleLabel { kEatMoreCleanMore, kEatLessCleanMore, kEatLessCleanLess, kEatMoreCleanLess };
inline constexpr int kNumRoles = 4;
std::string RoleName(RoleLabel label);

// Population z-scores (divide by the population standard deviation). A
// constant input yields all zeros.
std::vector<double> ZScores(std::span<const double> values);

// Quadrant by the signs of z(apples) and z(waste); z == 0 counts as "Less".
std::vector<RoleLabel> RoleQuadrants(std::span<const double> apples,
                                     std::span<const double> waste);

// Product-moment correlation; empty when either input has zero variance.
std::optional<double> Pearson(std::span<const double> x, std::span<const double> y);

struct MeanSe {
  double mean = 0;
  double se = 0;  // sample std / sqrt(n); 0 for a single sample
};

MeanSe MeanAndStandardError(std::span<const double> values);

struct AgentSummary {
  int agent = 0;
  double mean_return = 0;
  double mean_apples = 0;
  double mean_waste = 0;
  double z_apples = 0;
  double z_waste = 0;
  RoleLabel role = RoleLabel::kEatLessCleanLess;
};

struct PopulationReport {
  int episodes = 0;
  bool single_sample = false;
  MeanSe population_return;
  MeanSe equity;
  std::vector<double> episode_returns;
  std::vector<double> episode_equity;
  std::vector<AgentSummary> agents;
  // Correlation across episodes of total waste cleaned vs population return.
  std::optional<double> waste_return_r;
};

// Aggregates episodes of one population; agent counters are averaged over
// episodes before z-scoring.
PopulationReport MakePopulationReport(std::span<const EpisodeStats> episodes);

}  // namespace ssdlab::metrics

#endif  // SSDLAB_METRICS_METRICS_H_
