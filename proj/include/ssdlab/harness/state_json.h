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

#ifndef SSDLAB_HARNESS_STATE_JSON_H_
#define SSDLAB_HARNESS_STATE_JSON_H_

#include <memory>

#include <nlohmann/json.hpp>

#include "ssdlab/grid/grid_state.h"
#include "ssdlab/metrics/metrics.h"
#include "ssdlab/ppo/rollout.h"

// Lossless JSON forms of the mutable run state. Doubles are written with
// round-trip precision, so restored states are bit-identical.
namespace ssdlab::harness {

nlohmann::json GridStateToJson(const grid::GridState& state);
// `map` must be the map the state was recorded on (checked by id).
grid::GridState GridStateFromJson(const nlohmann::json& j,
                                  std::shared_ptr<const grid::GridMap> map);

nlohmann::json EpisodeStatsToJson(const metrics::EpisodeStats& stats);
metrics::EpisodeStats EpisodeStatsFromJson(const nlohmann::json& j);

nlohmann::json CollectorSnapshotToJson(const ppo::CollectorSnapshot& snapshot);
ppo::CollectorSnapshot CollectorSnapshotFromJson(const nlohmann::json& j,
                                                 std::shared_ptr<const grid::GridMap> map);

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_STATE_JSON_H_
