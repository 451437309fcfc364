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

#include "ssdlab/envs/cleanup.h"

#include <cmath>
#include <vector>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::envs {

using grid::Cell;
using grid::GridState;

namespace {

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

void CleanupParams::Validate() const {
  if (!IsProbability(waste_spawn_prob) || !IsProbability(apple_spawn_prob_max) ||
      !IsProbability(starting_waste_fraction)) {
    throw ConfigError("cleanup params: probabilities must lie in [0, 1]");
  }
  if (!(threshold_restoration >= 0.0 && threshold_restoration < threshold_depletion &&
        threshold_depletion <= 1.0)) {
    throw ConfigError(
        "cleanup params: need 0 <= threshold_restoration < threshold_depletion <= 1");
  }
  if (episode_len <= 0) throw ConfigError("cleanup params: episode_len must be > 0");
}

WasteDensity WasteDensity::Of(const GridState& state) {
  const auto river = state.map->river_cells().size();
  if (river == 0) return {0.0};
  return {static_cast<double>(state.waste_count) / static_cast<double>(river)};
}

double CleanupAppleSpawnProb(WasteDensity density, const CleanupParams& params) {
  if (density.value >= params.threshold_depletion) return 0.0;
  if (density.value <= params.threshold_restoration) return params.apple_spawn_prob_max;
  const double span = params.threshold_depletion - params.threshold_restoration;
  return params.apple_spawn_prob_max * (params.threshold_depletion - density.value) / span;
}

int CleanBeamResolve(GridState& state, int agent_id, const grid::EngineParams& params) {
  SSD_CHECK(agent_id >= 0 && agent_id < state.num_agents());
  const grid::Avatar& a = state.avatars[agent_id];
  int cleaned = 0;
  for (Cell c : grid::BeamFootprint(*state.map, a.pos, a.orientation, params.beam_length,
                                    params.beam_width)) {
    const int index = state.map->Index(c);
    if (state.waste[index]) {
      state.SetWaste(index, false);
      ++cleaned;
    }
  }
  return cleaned;
}

void CleanupStepDynamics(GridState& state, const CleanupParams& params) {
  const grid::GridMap& map = *state.map;
  std::vector<uint8_t> occupied(map.num_cells(), 0);
  for (const grid::Avatar& a : state.avatars) occupied[map.Index(a.pos)] = 1;
  const auto t = static_cast<uint64_t>(state.t);

  const double apple_p = CleanupAppleSpawnProb(WasteDensity::Of(state), params);
  if (apple_p > 0.0) {
    for (int index : map.orchard_cells()) {
      if (state.apples[index] || occupied[index]) continue;
      if (KeyedUniform(state.seed, RngPurpose::kAppleSpawn, t, index) < apple_p) {
        state.SetApple(index, true);
      }
    }
  }

  if (params.waste_spawn_prob <= 0.0) return;
  switch (params.waste_spawn_mode) {
    case WasteSpawnMode::kPerCell:
      for (int index : map.river_cells()) {
        if (state.waste[index]) continue;
        if (KeyedUniform(state.seed, RngPurpose::kWasteSpawn, t, index) <
            params.waste_spawn_prob) {
          state.SetWaste(index, true);
        }
      }
      break;
    case WasteSpawnMode::kPointSource: {
      if (KeyedUniform(state.seed, RngPurpose::kWasteSpawn, t, UINT64_MAX) >=
          params.waste_spawn_prob) {
        return;
      }
      std::vector<int> clean;
      for (int index : map.river_cells()) {
        if (!state.waste[index]) clean.push_back(index);
      }
      if (clean.empty()) return;
      CounterRng pick(HashKey(state.seed, RngPurpose::kWasteSpawn, {t, 1}));
      state.SetWaste(clean[pick.UniformInt(clean.size())], true);
      break;
    }
  }
}

CleanupDynamics::CleanupDynamics(CleanupParams params) : params_(params) {
  params_.Validate();
}

void CleanupDynamics::InitializeState(GridState& state) const {
  const auto& river = state.map->river_cells();
  const int target = static_cast<int>(
      std::lround(params_.starting_waste_fraction * static_cast<double>(river.size())));
  CounterRng rng(HashKey(state.seed, RngPurpose::kInitialWaste));
  const std::vector<int> order = RandomPermutation(static_cast<int>(river.size()), rng);
  for (int i = 0; i < target; ++i) state.SetWaste(river[order[i]], true);
}

void CleanupDynamics::ApplyDynamics(GridState& state) const {
  CleanupStepDynamics(state, params_);
}

int CleanupDynamics::ResolveCleanBeam(GridState& state, int agent_id,
                                      const grid::EngineParams& params) const {
  return CleanBeamResolve(state, agent_id, params);
}

}  // namespace ssdlab::envs
