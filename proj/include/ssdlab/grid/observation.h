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

#ifndef SSDLAB_GRID_OBSERVATION_H_
#define SSDLAB_GRID_OBSERVATION_H_

#include <cstdint>
#include <vector>

#include "ssdlab/grid/grid_state.h"

namespace ssdlab::grid {

inline constexpr int kViewRadius = 7;
inline constexpr int kViewSize = 2 * kViewRadius + 1;  // 15

// Channel order of every observation tensor. River is set on all river
// cells; waste is set in addition on polluted ones.
enum Channel : int {
  kChannelWall = 0,
  kChannelRiver = 1,
  kChannelWaste = 2,
  kChannelApple = 3,
  kChannelSelf = 4,
  kChannelOtherAgent = 5,
  kChannelBeam = 6,
  kChannelOutOfBounds = 7,
};
inline constexpr int kNumChannels = 8;

// Binary planes stored row-major as [height][width][channel].
struct Observation {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> cells;

  Observation() = default;
  Observation(int h, int w) : height(h), width(w), cells(h * w * kNumChannels, 0) {}

  uint8_t at(int row, int col, int channel) const {
    return cells[(row * width + col) * kNumChannels + channel];
  }
  uint8_t& at(int row, int col, int channel) {
    return cells[(row * width + col) * kNumChannels + channel];
  }
  int size() const { return static_cast<int>(cells.size()); }

  friend bool operator==(const Observation&, const Observation&) = default;
};

// 15x15 egocentric window around `agent_id`, rotated so the agent faces the
// top row. Window cell (r, c) shows world cell
//   pos + (kViewRadius - r) * Forward(o) + (c - kViewRadius) * Right(o).
Observation Observe(const GridState& state, int agent_id);

// Whole map, axis aligned, with `self_id`'s avatar on the self channel
// (pass -1 for none). Used as the centralized value input.
Observation ObserveGlobal(const GridState& state, int self_id);

// Agents (other than agent_id) whose avatars fall inside agent_id's window.
std::vector<int> VisibleAgents(const GridState& state, int agent_id);

}  // namespace ssdlab::grid

#endif  // SSDLAB_GRID_OBSERVATION_H_
