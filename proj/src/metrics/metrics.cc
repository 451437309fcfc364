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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssdlab/common/error.h"

namespace ssdlab::metrics {

std::vector<double> EpisodeStats::Returns() const {
  std::vector<double> r;
  r.reserve(agents.size());
  for (const auto& a : agents) r.push_back(a.extrinsic_return);
  return r;
}

double EpisodeStats::PopulationReturn() const {
  double s = 0;
  for (const auto& a : agents) s += a.extrinsic_return;
  return s;
}

int64_t EpisodeStats::TotalWasteCleaned() const {
  int64_t s = 0;
  for (const auto& a : agents) s += a.waste_cleaned;
  return s;
}

double Gini(std::span<const double> returns) {
  SSD_CHECK(returns.size() >= 2, "Gini needs at least two agents");
  std::vector<double> r(returns.begin(), returns.end());
  const double lo = *std::min_element(r.begin(), r.end());
  if (lo < 0) {
    for (double& v : r) v += -lo + kGiniShift;
  }
  // Sum over ordered pairs via the sorted form: sum_i (2i - n + 1) r_(i).
  std::sort(r.begin(), r.end());
  const double n = static_cast<double>(r.size());
  double total = 0, weighted = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    total += r[i];
    weighted += (2.0 * static_cast<double>(i) - n + 1.0) * r[i];
  }
  if (total == 0) return 0.0;
  return 2.0 * weighted / (2.0 * n * total);
}

std::string RoleName(RoleLabel label) {
  switch (label) {
    case RoleLabel::kEatMoreCleanMore: return "EatMoreCleanMore";
    case RoleLabel::kEatLessCleanMore: return "EatLessCleanMore";
    case RoleLabel::kEatLessCleanLess: return "EatLessCleanLess";
    case RoleLabel::kEatMoreCleanLess: return "EatMoreCleanLess";
  }
  return "?";
}

std::vector<double> ZScores(std::span<const double> values) {
  std::vector<double> z(values.size(), 0.0);
  if (values.empty()) return z;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (sd == 0) return z;
  for (size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - mean) / sd;
  return z;
}

std::vector<RoleLabel> RoleQuadrants(std::span<const double> apples,
                                     std::span<const double> waste) {
  SSD_CHECK(apples.size() == waste.size(), "role inputs differ in length");
  SSD_CHECK(apples.size() >= 2, "roles need at least two agents");
  const auto za = ZScores(apples);
  const auto zw = ZScores(waste);
  std::vector<RoleLabel> labels(apples.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const bool eat_more = za[i] > 0, clean_more = zw[i] > 0;
    labels[i] = eat_more ? (clean_more ? RoleLabel::kEatMoreCleanMore : RoleLabel::kEatMoreCleanLess)
                         : (clean_more ? RoleLabel::kEatLessCleanMore : RoleLabel::kEatLessCleanLess);
  }
  return labels;
}

std::optional<double> Pearson(std::span<const double> x, std::span<const double> y) {
  SSD_CHECK(x.size() == y.size(), "pearson inputs differ in length");
  if (x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MeanSe MeanAndStandardError(std::span<const double> values) {
  MeanSe out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.se = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  return out;
}

PopulationReport MakePopulationReport(std::span<const EpisodeStats> episodes) {
  SSD_CHECK(!episodes.empty(), "population report needs at least one episode");
  const size_t k = episodes[0].agents.size();
  SSD_CHECK(k >= 2, "population report needs at least two agents");
  PopulationReport report;
  report.episodes = static_cast<int>(episodes.size());
  report.single_sample = episodes.size() == 1;
  std::vector<double> waste_totals;
  report.agents.resize(k);
  for (const EpisodeStats& ep : episodes) {
    SSD_CHECK(ep.agents.size() == k, "episodes disagree on population size");
    report.episode_returns.push_back(ep.PopulationReturn());
    report.episode_equity.push_back(Equity(ep.Returns()));
    waste_totals.push_back(static_cast<double>(ep.TotalWasteCleaned()));
    for (size_t i = 0; i < k; ++i) {
      report.agents[i].mean_return += ep.agents[i].extrinsic_return;
      report.agents[i].mean_apples += static_cast<double>(ep.agents[i].apples_eaten);
      report.agents[i].mean_waste += static_cast<double>(ep.agents[i].waste_cleaned);
    }
  }
  const double n = static_cast<double>(episodes.size());
  std::vector<double> apples, waste;
  for (size_t i = 0; i < k; ++i) {
    AgentSummary& a = report.agents[i];
    a.agent = static_cast<int>(i);
    a.mean_return /= n;
    a.mean_apples /= n;
    a.mean_waste /= n;
    apples.push_back(a.mean_apples);
    waste.push_back(a.mean_waste);
  }
  const auto za = ZScores(apples), zw = ZScores(waste);
  const auto roles = RoleQuadrants(apples, waste);
  for (size_t i = 0; i < k; ++i) {
    report.agents[i].z_apples = za[i];
    report.agents[i].z_waste = zw[i];
    report.agents[i].role = roles[i];
  }
  report.population_return = MeanAndStandardError(report.episode_returns);
  report.equity = MeanAndStandardError(report.episode_equity);
  report.waste_return_r = Pearson(waste_totals, report.episode_returns);
  return report;
}

}  // namespace ssdlab::metrics
