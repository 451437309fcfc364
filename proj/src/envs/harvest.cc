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

#include "ssdlab/envs/harvest.h"

#include <algorithm>
#include <vector>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::envs {

using grid::Cell;
using grid::GridState;

void HarvestParams::Validate() const {
  for (double p : respawn_prob_by_neighbors) {
    if (p < 0.0 || p > 1.0) throw ConfigError("harvest params: probabilities in [0, 1]");
  }
  if (respawn_prob_by_neighbors[0] != 0.0) {
    throw ConfigError("harvest params: respawn_prob_by_neighbors[0] must be 0");
  }
  if (!std::is_sorted(respawn_prob_by_neighbors.begin(), respawn_prob_by_neighbors.end())) {
    throw ConfigError("harvest params: respawn probabilities must be nondecreasing");
  }
  if (episode_len <= 0) throw ConfigError("harvest params: episode_len must be > 0");
}

namespace {

int CountNeighbors(const grid::GridMap& map, const std::vector<uint8_t>& apples, Cell c) {
  constexpr int r = kHarvestNeighborRadius;
  int n = 0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if ((dx == 0 && dy == 0) || dx * dx + dy * dy > r * r) continue;
      const Cell q{c.x + dx, c.y + dy};
      if (map.InBounds(q) && apples[map.Index(q)]) ++n;
    }
  }
  return n;
}

}  // namespace

int AppleNeighborCount(const GridState& state, Cell cell) {
  return CountNeighbors(*state.map, state.apples, cell);
}

void HarvestStepDynamics(GridState& state, const HarvestParams& params,
                         std::span<const int> cell_order) {
  const grid::GridMap& map = *state.map;
  const std::vector<uint8_t> before = state.apples;
  std::vector<uint8_t> occupied(map.num_cells(), 0);
  for (const grid::Avatar& a : state.avatars) occupied[map.Index(a.pos)] = 1;
  const auto t = static_cast<uint64_t>(state.t);
  for (int index : cell_order) {
    SSD_CHECK(map.At(map.CellAt(index)) == grid::Terrain::kOrchardSoil);
    if (before[index] || occupied[index]) continue;
    const int n = std::min(3, CountNeighbors(map, before, map.CellAt(index)));
    const double p = params.respawn_prob_by_neighbors[n];
    if (p > 0.0 && KeyedUniform(state.seed, RngPurpose::kAppleSpawn, t, index) < p) {
      state.SetApple(index, true);
    }
  }
}

void HarvestStepDynamics(GridState& state, const HarvestParams& params) {
  HarvestStepDynamics(state, params, state.map->orchard_cells());
}

HarvestDynamics::HarvestDynamics(HarvestParams params) : params_(params) {
  params_.Validate();
}

void HarvestDynamics::InitializeState(GridState& state) const {
  std::vector<uint8_t> occupied(state.map->num_cells(), 0);
  for (const grid::Avatar& a : state.avatars) occupied[state.map->Index(a.pos)] = 1;
  for (int index : state.map->orchard_cells()) {
    if (!occupied[index]) state.SetApple(index, true);
  }
}

void HarvestDynamics::ApplyDynamics(GridState& state) const {
  HarvestStepDynamics(state, params_);
}

}  // namespace ssdlab::envs
