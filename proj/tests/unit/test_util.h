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

#ifndef SSDLAB_TESTS_UNIT_TEST_UTIL_H_
#define SSDLAB_TESTS_UNIT_TEST_UTIL_H_

#include <memory>
#include <string>
#include <vector>

#include "ssdlab/grid/engine.h"
#include "ssdlab/grid/grid_map.h"
#include "ssdlab/grid/grid_state.h"

namespace ssdlab::testing {

inline std::shared_ptr<const grid::GridMap> MakeMap(const std::string& text,
                                                    const std::string& id = "test") {
  return std::make_shared<grid::GridMap>(grid::GridMap::Parse(text, id));
}

// Open w x h field with no walls and a single spawn point.
inline std::shared_ptr<const grid::GridMap> OpenField(int w, int h) {
  std::string text;
  for (int y = 0; y < h; ++y) {
    text += std::string(w, '.');
    text += '\n';
  }
  text[0] = 'S';
  return MakeMap(text, "open");
}

struct Placement {
  grid::Cell pos;
  grid::Orientation orientation = grid::Orientation::kNorth;
};

// A state with avatars at explicit cells and no items.
inline grid::GridState MakeState(std::shared_ptr<const grid::GridMap> map,
                                 const std::vector<Placement>& avatars,
                                 int episode_len = 100, uint64_t seed = 1) {
  grid::GridState s;
  s.map = map;
  s.seed = seed;
  s.episode_len = episode_len;
  s.waste.assign(map->num_cells(), 0);
  s.apples.assign(map->num_cells(), 0);
  s.beams.assign(map->num_cells(), 0);
  for (int i = 0; i < static_cast<int>(avatars.size()); ++i) {
    s.avatars.push_back({i, avatars[i].pos, avatars[i].orientation, 0});
  }
  return s;
}

}  // namespace ssdlab::testing

#endif  // SSDLAB_TESTS_UNIT_TEST_UTIL_H_
