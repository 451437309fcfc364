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

#ifndef SSDLAB_HARNESS_ANALYZE_H_
#define SSDLAB_HARNESS_ANALYZE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ssdlab/harness/episode_log.h"
#include "ssdlab/metrics/metrics.h"

namespace ssdlab::harness {

struct AnalyzeOptions {
  // Analyze logs from different environments or population sizes together.
  bool force = false;
  // z-score roles across every population at once instead of within each.
  bool joint_roles = false;
};

// All episodes that share one config digest.
struct PopulationAnalysis {
  std::string config_digest;
  std::string variant;
  std::string map_id;
  int num_agents = 0;
  metrics::PopulationReport report;
  std::vector<metrics::AgentSummary> roles;  // report.agents, or joint z-scores
};

struct AnalysisResult {
  std::vector<PopulationAnalysis> populations;
  // Agent-level correlation of mean waste cleaned with mean return across all
  // agents of all populations.
  std::optional<double> agent_waste_return_r;
  std::vector<std::filesystem::path> files;
};

// Groups logs by config digest and writes:
//   population_table.csv  one row per population
//   role_table.csv        one row per agent and population
//   correlation.csv       waste-return correlations
//   summary.txt           plain-text report
// Throws ConfigError for an empty input or mixed environments / population
// sizes without `force`.
AnalysisResult Analyze(const std::vector<EpisodeLog>& logs, const std::filesystem::path& out_dir,
                       const AnalyzeOptions& options = {});

// Expands a shell glob (sorted); a plain path matches itself.
std::vector<std::filesystem::path> ExpandGlob(const std::string& pattern);

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_ANALYZE_H_
