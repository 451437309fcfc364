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

#include "ssdlab/harness/analyze.h"

#include <glob.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ssdlab/common/error.h"

namespace ssdlab::harness {

namespace fs = std::filesystem;

namespace {

std::string Num(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

std::string Opt(const std::optional<double>& v) { return v ? Num(*v) : "NA"; }

void Write(const fs::path& path, const std::string& text, std::vector<fs::path>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
  files.push_back(path);
}

}  // namespace

std::vector<fs::path> ExpandGlob(const std::string& pattern) {
  glob_t g{};
  std::vector<fs::path> out;
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  if (rc == 0) {
    for (size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  std::sort(out.begin(), out.end());
  return out;
}

AnalysisResult Analyze(const std::vector<EpisodeLog>& logs, const fs::path& out_dir,
                       const AnalyzeOptions& options) {
  if (logs.empty()) throw ConfigError("no episode logs to analyze");
  for (const auto& log : logs) {
    const auto& h = log.header;
    const auto& f = logs[0].header;
    if (!options.force && (h.map_id != f.map_id || h.num_agents != f.num_agents ||
                           h.env != f.env)) {
      throw ConfigError("logs mix environments or population sizes (" + f.map_id + "/K=" +
                        std::to_string(f.num_agents) + " vs " + h.map_id +
                        "/K=" + std::to_string(h.num_agents) + "); pass --force to analyze anyway");
    }
  }

  // Populations in order of first appearance.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const EpisodeLog*>> groups;
  for (const auto& log : logs) {
    auto& g = groups[log.header.config_digest];
    if (g.empty()) order.push_back(log.header.config_digest);
    g.push_back(&log);
  }

  AnalysisResult result;
  for (const auto& digest : order) {
    const auto& members = groups[digest];
    PopulationAnalysis pa;
    pa.config_digest = digest;
    pa.variant = members[0]->header.variant;
    pa.map_id = members[0]->header.map_id;
    pa.num_agents = members[0]->header.num_agents;
    std::vector<metrics::EpisodeStats> stats;
    for (const auto* log : members) {
      if (log->header.num_agents != pa.num_agents) {
        throw ConfigError("logs with digest " + digest + " disagree on the population size");
      }
      stats.push_back(log->stats);
    }
    pa.report = metrics::MakePopulationReport(stats);
    pa.roles = pa.report.agents;
    result.populations.push_back(std::move(pa));
  }

  std::vector<double> all_apples, all_waste, all_returns;
  for (const auto& pa : result.populations) {
    for (const auto& a : pa.report.agents) {
      all_apples.push_back(a.mean_apples);
      all_waste.push_back(a.mean_waste);
      all_returns.push_back(a.mean_return);
    }
  }
  if (options.joint_roles && all_apples.size() >= 2) {
    const auto za = metrics::ZScores(all_apples);
    const auto zw = metrics::ZScores(all_waste);
    const auto labels = metrics::RoleQuadrants(all_apples, all_waste);
    size_t idx = 0;
    for (auto& pa : result.populations) {
      for (auto& r : pa.roles) {
        r.z_apples = za[idx];
        r.z_waste = zw[idx];
        r.role = labels[idx];
        ++idx;
      }
    }
  }
  result.agent_waste_return_r = metrics::Pearson(all_waste, all_returns);

  fs::create_directories(out_dir);
  std::ostringstream pop_csv, role_csv, corr_csv, summary;
  pop_csv << "population,config_digest,variant,map,num_agents,episodes,single_sample,"
             "mean_return,return_se,mean_equity,equity_se,waste_return_r\n";
  role_csv << "population,config_digest,agent,mean_return,mean_apples,mean_waste,z_apples,"
              "z_waste,role\n";
  corr_csv << "scope,population,pairs,r\n";
  summary << "Populations analyzed: " << result.populations.size() << "\n";
  for (size_t p = 0; p < result.populations.size(); ++p) {
    const auto& pa = result.populations[p];
    const auto& r = pa.report;
    pop_csv << p << ',' << pa.config_digest << ',' << pa.variant << ',' << pa.map_id << ','
            << pa.num_agents << ',' << r.episodes << ',' << (r.single_sample ? 1 : 0) << ','
            << Num(r.population_return.mean) << ',' << Num(r.population_return.se) << ','
            << Num(r.equity.mean) << ',' << Num(r.equity.se) << ',' << Opt(r.waste_return_r)
            << '\n';
    for (const auto& a : pa.roles) {
      role_csv << p << ',' << pa.config_digest << ',' << a.agent << ',' << Num(a.mean_return)
               << ',' << Num(a.mean_apples) << ',' << Num(a.mean_waste) << ','
               << Num(a.z_apples) << ',' << Num(a.z_waste) << ',' << metrics::RoleName(a.role)
               << '\n';
    }
    corr_csv << "episodes," << p << ',' << r.episodes << ',' << Opt(r.waste_return_r) << '\n';

    summary << "\n[" << p << "] " << pa.variant << " on " << pa.map_id << ", K=" << pa.num_agents
            << ", " << r.episodes << " episode(s), config " << pa.config_digest << "\n";
    summary << "  population return " << Num(r.population_return.mean) << " +- "
            << Num(r.population_return.se) << " (SE)\n";
    summary << "  equity (1 - Gini)  " << Num(r.equity.mean) << " +- " << Num(r.equity.se)
            << " (SE)\n";
    if (r.single_sample) summary << "  single episode: standard errors are reported as 0\n";
    summary << "  waste-return r across episodes: " << Opt(r.waste_return_r) << "\n";
    int counts[metrics::kNumRoles] = {0, 0, 0, 0};
    for (const auto& a : pa.roles) ++counts[static_cast<int>(a.role)];
    summary << "  roles:";
    for (int q = 0; q < metrics::kNumRoles; ++q) {
      summary << ' ' << metrics::RoleName(static_cast<metrics::RoleLabel>(q)) << '=' << counts[q];
    }
    summary << "\n";
  }
  corr_csv << "agents,all," << all_waste.size() << ',' << Opt(result.agent_waste_return_r)
           << '\n';
  summary << "\nAgent-level waste-return r (all populations): "
          << Opt(result.agent_waste_return_r) << "\n";

  Write(out_dir / "population_table.csv", pop_csv.str(), result.files);
  Write(out_dir / "role_table.csv", role_csv.str(), result.files);
  Write(out_dir / "correlation.csv", corr_csv.str(), result.files);
  Write(out_dir / "summary.txt", summary.str(), result.files);
  return result;
}

}  // namespace ssdlab::harness
