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

#ifndef SSDLAB_GRID_TYPES_H_
#define SSDLAB_GRID_TYPES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ssdlab::grid {

// x is the column (grows east), y is the row (grows south).
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Cell a, Cell b) = default;
  friend constexpr Cell operator+(Cell a, Cell b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Cell operator-(Cell a, Cell b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Cell operator*(int k, Cell a) { return {k * a.x, k * a.y}; }
};

enum class Terrain : uint8_t { kEmpty = 0, kWall = 1, kRiver = 2, kOrchardSoil = 3 };

enum class Orientation : uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

// Fixed action encoding. Moves are relative to the avatar's orientation.
enum class Action : uint8_t {
  kStepForward = 0,
  kStepBackward = 1,
  kStepLeft = 2,
  kStepRight = 3,
  kRotateLeft = 4,
  kRotateRight = 5,
  kStay = 6,
  kTagBeam = 7,
  kCleanBeam = 8,
};
inline constexpr int kNumActions = 9;

constexpr Cell Forward(Orientation o) {
  constexpr std::array<Cell, 4> kForward = {{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};
  return kForward[static_cast<int>(o)];
}

// Unit vector to the avatar's right (forward turned clockwise).
constexpr Cell Right(Orientation o) {
  return Forward(static_cast<Orientation>((static_cast<int>(o) + 1) % 4));
}

constexpr Orientation RotatedLeft(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 3) % 4);
}
constexpr Orientation RotatedRight(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 1) % 4);
}

constexpr bool IsMove(Action a) {
  return a == Action::kStepForward || a == Action::kStepBackward ||
         a == Action::kStepLeft || a == Action::kStepRight;
}

// Displacement of a move action; zero for non-moves.
constexpr Cell MoveDelta(Action a, Orientation o) {
  switch (a) {
    case Action::kStepForward: return Forward(o);
    case Action::kStepBackward: return -1 * Forward(o);
    case Action::kStepLeft: return -1 * Right(o);
    case Action::kStepRight: return Right(o);
    default: return {0, 0};
  }
}

std::string_view ActionName(Action a);
std::optional<Action> ParseAction(std::string_view name);

}  // namespace ssdlab::grid

#endif  // SSDLAB_GRID_TYPES_H_
