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

#include "ssdlab/harness/state_json.h"

#include "ssdlab/common/error.h"

namespace ssdlab::harness {

using Json = nlohmann::json;

namespace {

// Flag vectors are stored as strings of '0'/'1' to keep checkpoints compact.
std::string Flags(const std::vector<uint8_t>& v) {
  std::string s(v.size(), '0');
  for (size_t i = 0; i < v.size(); ++i) s[i] = v[i] ? '1' : '0';
  return s;
}

std::vector<uint8_t> Unflags(const std::string& s, size_t expected) {
  if (s.size() != expected) throw ConfigError("stored state does not match the map size");
  std::vector<uint8_t> v(s.size());
  for (size_t i = 0; i < s.size(); ++i) v[i] = s[i] == '1';
  return v;
}

}  // namespace

Json GridStateToJson(const grid::GridState& s) {
  Json avatars = Json::array();
  for (const auto& a : s.avatars) {
    avatars.push_back({a.agent_id, a.pos.x, a.pos.y, static_cast<int>(a.orientation),
                       a.frozen_until});
  }
  return {{"map_id", s.map ? s.map->id() : ""},
          {"avatars", avatars},
          {"waste", Flags(s.waste)},
          {"apples", Flags(s.apples)},
          {"beams", Flags(s.beams)},
          {"waste_count", s.waste_count},
          {"apple_count", s.apple_count},
          {"t", s.t},
          {"episode_len", s.episode_len},
          {"seed", s.seed}};
}

grid::GridState GridStateFromJson(const Json& j, std::shared_ptr<const grid::GridMap> map) {
  try {
    if (j.at("map_id").get<std::string>() != map->id()) {
      throw ConfigError("stored state belongs to map '" + j.at("map_id").get<std::string>() +
                        "', not '" + map->id() + "'");
    }
    grid::GridState s;
    s.map = map;
    const size_t cells = static_cast<size_t>(map->num_cells());
    for (const auto& a : j.at("avatars")) {
      grid::Avatar av;
      av.agent_id = a.at(0).get<int>();
      av.pos = {a.at(1).get<int>(), a.at(2).get<int>()};
      av.orientation = static_cast<grid::Orientation>(a.at(3).get<int>());
      av.frozen_until = a.at(4).get<int>();
      s.avatars.push_back(av);
    }
    s.waste = Unflags(j.at("waste").get<std::string>(), cells);
    s.apples = Unflags(j.at("apples").get<std::string>(), cells);
    s.beams = Unflags(j.at("beams").get<std::string>(), cells);
    s.waste_count = j.at("waste_count").get<int>();
    s.apple_count = j.at("apple_count").get<int>();
    s.t = j.at("t").get<int>();
    s.episode_len = j.at("episode_len").get<int>();
    s.seed = j.at("seed").get<uint64_t>();
    return s;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed stored state: ") + e.what());
  }
}

Json EpisodeStatsToJson(const metrics::EpisodeStats& stats) {
  Json agents = Json::array();
  for (const auto& a : stats.agents) {
    agents.push_back({{"extrinsic_return", a.extrinsic_return},
                      {"intrinsic_return", a.intrinsic_return},
                      {"apples_eaten", a.apples_eaten},
                      {"waste_cleaned", a.waste_cleaned},
                      {"tags_fired", a.tags_fired},
                      {"times_tagged", a.times_tagged}});
  }
  return {{"length", stats.length}, {"seed", stats.seed}, {"agents", agents}};
}

metrics::EpisodeStats EpisodeStatsFromJson(const Json& j) {
  try {
    metrics::EpisodeStats s;
    s.length = j.at("length").get<int>();
    s.seed = j.at("seed").get<uint64_t>();
    for (const auto& a : j.at("agents")) {
      metrics::AgentEpisodeStats x;
      x.extrinsic_return = a.at("extrinsic_return").get<double>();
      x.intrinsic_return = a.at("intrinsic_return").get<double>();
      x.apples_eaten = a.at("apples_eaten").get<int64_t>();
      x.waste_cleaned = a.at("waste_cleaned").get<int64_t>();
      x.tags_fired = a.at("tags_fired").get<int64_t>();
      x.times_tagged = a.at("times_tagged").get<int64_t>();
      s.agents.push_back(x);
    }
    return s;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed episode stats: ") + e.what());
  }
}

Json CollectorSnapshotToJson(const ppo::CollectorSnapshot& snap) {
  const auto& r = snap.runner;
  Json j = {{"episodes_started", snap.episodes_started}, {"active", r.active}};
  if (!r.active) return j;
  j["state"] = GridStateToJson(r.state);
  j["action_key"] = r.action_key;
  j["h_policy"] = r.h_policy;
  j["h_wm"] = r.h_wm;
  j["h_moa"] = r.h_moa;
  j["prev_actions"] = r.prev_actions;
  j["cumulative_returns"] = r.cumulative_returns;
  j["stats"] = EpisodeStatsToJson(r.stats);
  return j;
}

ppo::CollectorSnapshot CollectorSnapshotFromJson(const Json& j,
                                                 std::shared_ptr<const grid::GridMap> map) {
  try {
    ppo::CollectorSnapshot snap;
    snap.episodes_started = j.at("episodes_started").get<int64_t>();
    auto& r = snap.runner;
    r.active = j.at("active").get<bool>();
    if (!r.active) return snap;
    r.state = GridStateFromJson(j.at("state"), map);
    r.action_key = j.at("action_key").get<uint64_t>();
    r.h_policy = j.at("h_policy").get<std::vector<std::vector<double>>>();
    r.h_wm = j.at("h_wm").get<std::vector<std::vector<double>>>();
    r.h_moa = j.at("h_moa").get<std::vector<std::vector<double>>>();
    r.prev_actions = j.at("prev_actions").get<std::vector<int>>();
    r.cumulative_returns = j.at("cumulative_returns").get<std::vector<double>>();
    r.stats = EpisodeStatsFromJson(j.at("stats"));
    return snap;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed collector state: ") + e.what());
  }
}

}  // namespace ssdlab::harness
