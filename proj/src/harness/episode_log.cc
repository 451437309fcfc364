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

#include "ssdlab/harness/episode_log.h"

#include <fstream>
#include <memory>
#include <sstream>

#include "ssdlab/common/error.h"
#include "ssdlab/harness/run_config.h"
#include "ssdlab/harness/state_json.h"

namespace ssdlab::harness {

namespace {

constexpr char kFormat[] = "ssdlab-episode-log";
constexpr int kVersion = 1;

Json HeaderToJson(const EpisodeHeader& h) {
  return {{"type", "header"},
          {"format", kFormat},
          {"version", kVersion},
          {"config_digest", h.config_digest},
          {"variant", h.variant},
          {"seed", h.seed},
          {"num_agents", h.num_agents},
          {"episode_len", h.episode_len},
          {"map_id", h.map_id},
          {"map_rows", h.map_rows},
          {"env", h.env},
          {"action_selection", h.action_selection}};
}

EpisodeHeader HeaderFromJson(const Json& j) {
  if (j.value("type", "") != "header" || j.value("format", "") != kFormat) {
    throw ConfigError("not an episode log (missing header line)");
  }
  if (j.at("version").get<int>() != kVersion) throw ConfigError("unsupported episode log version");
  EpisodeHeader h;
  h.config_digest = j.at("config_digest").get<std::string>();
  h.variant = j.at("variant").get<std::string>();
  h.seed = j.at("seed").get<uint64_t>();
  h.num_agents = j.at("num_agents").get<int>();
  h.episode_len = j.at("episode_len").get<int>();
  h.map_id = j.at("map_id").get<std::string>();
  h.map_rows = j.at("map_rows").get<std::vector<std::string>>();
  h.env = j.at("env");
  h.action_selection = j.at("action_selection").get<std::string>();
  return h;
}

Json StepToJson(const StepRecord& s) {
  Json events = Json::array();
  for (const auto& e : s.events) {
    events.push_back({e.apples_eaten, e.waste_cleaned, e.tags_fired, e.times_tagged});
  }
  return {{"type", "step"},
          {"t", s.t},
          {"actions", s.actions},
          {"extrinsic", s.extrinsic},
          {"intrinsic", s.intrinsic},
          {"events", events}};
}

StepRecord StepFromJson(const Json& j, int k) {
  StepRecord s;
  s.t = j.at("t").get<int>();
  s.actions = j.at("actions").get<std::vector<int>>();
  s.extrinsic = j.at("extrinsic").get<std::vector<double>>();
  s.intrinsic = j.at("intrinsic").get<std::vector<double>>();
  for (const auto& e : j.at("events")) {
    s.events.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(),
                        e.at(3).get<int>()});
  }
  const size_t n = static_cast<size_t>(k);
  if (s.actions.size() != n || s.extrinsic.size() != n || s.intrinsic.size() != n ||
      s.events.size() != n) {
    throw ConfigError("step " + std::to_string(s.t) + " does not list every agent");
  }
  for (int a : s.actions) {
    if (a < 0 || a >= grid::kNumActions) throw ConfigError("invalid action in step record");
  }
  return s;
}

bool SameStats(const metrics::EpisodeStats& a, const metrics::EpisodeStats& b) {
  if (a.length != b.length || a.agents.size() != b.agents.size()) return false;
  for (size_t i = 0; i < a.agents.size(); ++i) {
    const auto& x = a.agents[i];
    const auto& y = b.agents[i];
    if (x.extrinsic_return != y.extrinsic_return || x.intrinsic_return != y.intrinsic_return ||
        x.apples_eaten != y.apples_eaten || x.waste_cleaned != y.waste_cleaned ||
        x.tags_fired != y.tags_fired || x.times_tagged != y.times_tagged) {
      return false;
    }
  }
  return true;
}

}  // namespace

metrics::EpisodeStats EpisodeLog::StatsFromSteps() const {
  metrics::EpisodeStats s;
  s.agents.assign(header.num_agents, {});
  s.seed = header.seed;
  s.length = static_cast<int>(steps.size());
  for (const auto& step : steps) {
    for (int i = 0; i < header.num_agents; ++i) {
      auto& a = s.agents[i];
      a.extrinsic_return += step.extrinsic[i];
      a.intrinsic_return += step.intrinsic[i];
      a.apples_eaten += step.events[i].apples_eaten;
      a.waste_cleaned += step.events[i].waste_cleaned;
      a.tags_fired += step.events[i].tags_fired;
      a.times_tagged += step.events[i].times_tagged;
    }
  }
  return s;
}

std::string EpisodeLogToString(const EpisodeLog& log) {
  std::string out = HeaderToJson(log.header).dump();
  out += '\n';
  for (const auto& s : log.steps) {
    out += StepToJson(s).dump();
    out += '\n';
  }
  Json stats = {{"type", "stats"},
                {"stats", EpisodeStatsToJson(log.stats)},
                {"final_apples", log.final_apples},
                {"final_waste", log.final_waste}};
  out += stats.dump();
  out += '\n';
  return out;
}

void WriteEpisodeLog(const EpisodeLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << EpisodeLogToString(log);
  if (!out) throw ConfigError("failed writing " + path.string());
}

EpisodeLog ParseEpisodeLog(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  EpisodeLog log;
  bool have_header = false, have_stats = false;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      if (have_stats) throw ConfigError("records after the stats line");
      const Json j = Json::parse(line);
      if (!have_header) {
        log.header = HeaderFromJson(j);
        have_header = true;
        continue;
      }
      const std::string type = j.at("type").get<std::string>();
      if (type == "step") {
        StepRecord s = StepFromJson(j, log.header.num_agents);
        if (s.t != static_cast<int>(log.steps.size())) throw ConfigError("steps out of order");
        log.steps.push_back(std::move(s));
      } else if (type == "stats") {
        log.stats = EpisodeStatsFromJson(j.at("stats"));
        log.final_apples = j.at("final_apples").get<int>();
        log.final_waste = j.at("final_waste").get<int>();
        have_stats = true;
      } else {
        throw ConfigError("unknown record type '" + type + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
  } catch (const ConfigError& e) {
    throw ConfigError(source + ":" + std::to_string(line_no) + ": " + e.what());
  }
  if (!have_header) throw ConfigError(source + ": empty episode log");
  if (!have_stats) throw ConfigError(source + ": truncated episode log (no stats line)");
  if (static_cast<int>(log.steps.size()) != log.header.episode_len) {
    throw ConfigError(source + ": step count differs from the episode length");
  }
  if (!SameStats(log.StatsFromSteps(), log.stats)) {
    throw ConfigError(source + ": stored stats differ from the step records");
  }
  return log;
}

EpisodeLog ReadEpisodeLog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseEpisodeLog(text.str(), path.string());
}

ReplayDivergence::ReplayDivergence(int step, const std::string& what)
    : std::runtime_error("replay diverged at step " + std::to_string(step) + ": " + what),
      step_(step) {}

envs::Environment EnvironmentForLog(const EpisodeHeader& header) {
  std::string text;
  for (const auto& row : header.map_rows) {
    text += row;
    text += '\n';
  }
  auto map = std::make_shared<grid::GridMap>(grid::GridMap::Parse(text, header.map_id));
  return envs::Environment(EnvConfigFromJson(header.env), std::move(map));
}

grid::GridState Replay(const EpisodeLog& log,
                       const std::function<void(const grid::GridState&)>& on_state) {
  const envs::Environment env = EnvironmentForLog(log.header);
  grid::GridState state = env.Reset(log.header.seed, log.header.num_agents);
  if (state.episode_len != log.header.episode_len) {
    throw ReplayDivergence(0, "episode length differs from the environment");
  }
  if (on_state) on_state(state);
  std::vector<grid::Action> joint(log.header.num_agents);
  for (const auto& step : log.steps) {
    if (state.done()) throw ReplayDivergence(step.t, "episode already finished");
    for (int i = 0; i < log.header.num_agents; ++i) {
      joint[i] = static_cast<grid::Action>(step.actions[i]);
    }
    const grid::StepOutcome out = env.Step(state, joint);
    if (out.rewards != step.extrinsic) throw ReplayDivergence(step.t, "extrinsic rewards differ");
    if (out.events != step.events) throw ReplayDivergence(step.t, "event counters differ");
    if (on_state) on_state(state);
  }
  if (state.apple_count != log.final_apples || state.waste_count != log.final_waste) {
    throw ReplayDivergence(static_cast<int>(log.steps.size()), "final apple/waste counts differ");
  }
  return state;
}

}  // namespace ssdlab::harness
