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

#ifndef SSDLAB_GRID_GRID_STATE_H_
#define SSDLAB_GRID_GRID_STATE_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "ssdlab/grid/grid_map.h"
#include "ssdlab/grid/types.h"

namespace ssdlab::grid {

struct Avatar {
  int agent_id = 0;
  Cell pos;
  Orientation orientation = Orientation::kNorth;
  // The avatar is frozen while t < frozen_until; 0 means never tagged.
  int frozen_until = 0;

  friend bool operator==(const Avatar&, const Avatar&) = default;
};

// Full world state. Waste, apples, and the beam overlay are per-cell flags
// indexed by GridMap::Index. All randomness is keyed on `seed` and `t`, so
// the state carries no hidden generator position.
struct GridState {
  std::shared_ptr<const GridMap> map;
  std::vector<Avatar> avatars;
  std::vector<uint8_t> waste;
  std::vector<uint8_t> apples;
  std::vector<uint8_t> beams;  // cells swept by any beam during the last step
  int waste_count = 0;
  int apple_count = 0;
  int t = 0;
  int episode_len = 0;
  uint64_t seed = 0;

  int num_agents() const { return static_cast<int>(avatars.size()); }
  bool done() const { return t >= episode_len; }

  bool HasWaste(Cell c) const { return waste[map->Index(c)] != 0; }
  bool HasApple(Cell c) const { return apples[map->Index(c)] != 0; }
  // Agent id at `c`, or -1.
  int AvatarAt(Cell c) const;

  void SetWaste(int index, bool on);
  void SetApple(int index, bool on);

  // Bitwise comparison of everything but the map pointer (maps compared by id).
  friend bool operator==(const GridState& a, const GridState& b);
};

}  // namespace ssdlab::grid

#endif  // SSDLAB_GRID_GRID_STATE_H_
