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

#ifndef SSDLAB_HARNESS_EPISODE_LOG_H_
#define SSDLAB_HARNESS_EPISODE_LOG_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssdlab/envs/environment.h"
#include "ssdlab/grid/engine.h"
#include "ssdlab/grid/grid_state.h"
#include "ssdlab/metrics/metrics.h"

namespace ssdlab::harness {

// Line-delimited JSON. Line 1 is the header, then one record per step, then
// one stats record:
//   {"type":"header","format":"ssdlab-episode-log","version":1,
//    "config_digest":..,"variant":..,"seed":..,"num_agents":..,
//    "episode_len":..,"map_id":..,"map_rows":[..],"env":{..},
//    "action_selection":"sample"|"argmax"}
//   {"type":"step","t":..,"actions":[..],"extrinsic":[..],"intrinsic":[..],
//    "events":[[apples_eaten,waste_cleaned,tags_fired,times_tagged],..]}
//   {"type":"stats","stats":{..},"final_apples":..,"final_waste":..}
// Counters are integers; rewards are decimal floats with round-trip precision.
struct EpisodeHeader {
  std::string config_digest;
  std::string variant;
  uint64_t seed = 0;
  int num_agents = 0;
  int episode_len = 0;
  std::string map_id;
  std::vector<std::string> map_rows;
  nlohmann::json env;  // EnvConfigToJson form
  std::string action_selection = "sample";
};

struct StepRecord {
  int t = 0;
  std::vector<int> actions;
  std::vector<double> extrinsic;
  std::vector<double> intrinsic;
  std::vector<grid::AgentEvents> events;
};

struct EpisodeLog {
  EpisodeHeader header;
  std::vector<StepRecord> steps;
  metrics::EpisodeStats stats;
  int final_apples = 0;  // apples on the map after the last step
  int final_waste = 0;

  // Recomputes the per-agent stats from the step records.
  metrics::EpisodeStats StatsFromSteps() const;
};

std::string EpisodeLogToString(const EpisodeLog& log);
void WriteEpisodeLog(const EpisodeLog& log, const std::filesystem::path& path);
// Throws ConfigError on malformed input or when the stored stats disagree
// with the step records.
EpisodeLog ParseEpisodeLog(const std::string& text, const std::string& source = "log");
EpisodeLog ReadEpisodeLog(const std::filesystem::path& path);

class ReplayDivergence : public std::runtime_error {
 public:
  ReplayDivergence(int step, const std::string& what);
  int step() const { return step_; }

 private:
  int step_;
};

// Rebuilds the environment recorded in the header (map from the stored rows).
envs::Environment EnvironmentForLog(const EpisodeHeader& header);

// Replays the joint actions on the engine and checks every reward and event
// counter. `on_state` sees the initial state and the state after each step.
// Throws ReplayDivergence with the first mismatching step index.
grid::GridState Replay(const EpisodeLog& log,
                       const std::function<void(const grid::GridState&)>& on_state = {});

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_EPISODE_LOG_H_
