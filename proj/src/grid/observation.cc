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

#include "ssdlab/grid/observation.h"

#include <cstdlib>

#include "ssdlab/common/error.h"

namespace ssdlab::grid {

int GridState::AvatarAt(Cell c) const {
  for (const Avatar& a : avatars) {
    if (a.pos == c) return a.agent_id;
  }
  return -1;
}

void GridState::SetWaste(int index, bool on) {
  if ((waste[index] != 0) == on) return;
  waste[index] = on ? 1 : 0;
  waste_count += on ? 1 : -1;
}

void GridState::SetApple(int index, bool on) {
  if ((apples[index] != 0) == on) return;
  apples[index] = on ? 1 : 0;
  apple_count += on ? 1 : -1;
}

bool operator==(const GridState& a, const GridState& b) {
  const bool same_map = a.map == b.map || (a.map && b.map && a.map->id() == b.map->id());
  return same_map && a.avatars == b.avatars && a.waste == b.waste &&
         a.apples == b.apples && a.beams == b.beams &&
         a.waste_count == b.waste_count && a.apple_count == b.apple_count &&
         a.t == b.t && a.episode_len == b.episode_len && a.seed == b.seed;
}

namespace {

void FillCell(const GridState& state, Cell world, int self_id, Observation& obs,
              int row, int col) {
  const GridMap& map = *state.map;
  if (!map.InBounds(world)) {
    obs.at(row, col, kChannelOutOfBounds) = 1;
    return;
  }
  const int index = map.Index(world);
  switch (map.At(world)) {
    case Terrain::kWall: obs.at(row, col, kChannelWall) = 1; break;
    case Terrain::kRiver: obs.at(row, col, kChannelRiver) = 1; break;
    default: break;
  }
  if (state.waste[index]) obs.at(row, col, kChannelWaste) = 1;
  if (state.apples[index]) obs.at(row, col, kChannelApple) = 1;
  if (state.beams[index]) obs.at(row, col, kChannelBeam) = 1;
  const int occupant = state.AvatarAt(world);
  if (occupant >= 0) {
    obs.at(row, col, occupant == self_id ? kChannelSelf : kChannelOtherAgent) = 1;
  }
}

}  // namespace

Observation Observe(const GridState& state, int agent_id) {
  SSD_CHECK(agent_id >= 0 && agent_id < state.num_agents(), "agent_id=", agent_id);
  const Avatar& self = state.avatars[agent_id];
  const Cell forward = Forward(self.orientation);
  const Cell right = Right(self.orientation);
  Observation obs(kViewSize, kViewSize);
  for (int r = 0; r < kViewSize; ++r) {
    for (int c = 0; c < kViewSize; ++c) {
      const Cell world = self.pos + (kViewRadius - r) * forward + (c - kViewRadius) * right;
      FillCell(state, world, agent_id, obs, r, c);
    }
  }
  return obs;
}

Observation ObserveGlobal(const GridState& state, int self_id) {
  const GridMap& map = *state.map;
  Observation obs(map.height(), map.width());
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) FillCell(state, {x, y}, self_id, obs, y, x);
  }
  return obs;
}

std::vector<int> VisibleAgents(const GridState& state, int agent_id) {
  SSD_CHECK(agent_id >= 0 && agent_id < state.num_agents(), "agent_id=", agent_id);
  const Cell me = state.avatars[agent_id].pos;
  std::vector<int> visible;
  for (const Avatar& other : state.avatars) {
    if (other.agent_id == agent_id) continue;
    if (std::abs(other.pos.x - me.x) <= kViewRadius &&
        std::abs(other.pos.y - me.y) <= kViewRadius) {
      visible.push_back(other.agent_id);
    }
  }
  return visible;
}

}  // namespace ssdlab::grid
