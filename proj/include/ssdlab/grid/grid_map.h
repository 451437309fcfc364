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

#ifndef SSDLAB_GRID_GRID_MAP_H_
#define SSDLAB_GRID_GRID_MAP_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/grid/types.h"

namespace ssdlab::grid {

// Immutable terrain layout.
//
// Text format: one character per cell, one line per row, all rows equal
// length. Legend:
//   '#' wall   'R' river   'O' orchard soil   '.' empty   'S' spawn point
// A spawn point is an empty cell that is also listed in spawn_points().
// Lines starting with ';' are comments and blank trailing lines are ignored.
class GridMap {
 public:
  GridMap(std::string id, int width, int height, std::vector<Terrain> terrain,
          std::vector<Cell> spawn_points);

  // Throws ConfigError on malformed text. When expected_width/height are
  // positive the parsed dimensions must match them.
  static GridMap Parse(std::string_view text, std::string id,
                       int expected_width = 0, int expected_height = 0);
  // The map id defaults to the file stem.
  static GridMap Load(const std::filesystem::path& path, int expected_width = 0,
                      int expected_height = 0, std::string id = "");

  const std::string& id() const { return id_; }
  int width() const { return width_; }
  int height() const { return height_; }
  int num_cells() const { return width_ * height_; }

  bool InBounds(Cell c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  int Index(Cell c) const { return c.y * width_ + c.x; }
  Cell CellAt(int index) const { return {index % width_, index / width_}; }
  Terrain At(Cell c) const { return terrain_[Index(c)]; }
  // Walls and out-of-bounds cells block movement and beams.
  bool Blocked(Cell c) const { return !InBounds(c) || At(c) == Terrain::kWall; }

  const std::vector<Cell>& spawn_points() const { return spawn_points_; }
  // Cell indices in row-major order.
  const std::vector<int>& river_cells() const { return river_cells_; }
  const std::vector<int>& orchard_cells() const { return orchard_cells_; }

  // Inverse of Parse (comments dropped).
  std::string ToText() const;

 private:
  std::string id_;
  int width_;
  int height_;
  std::vector<Terrain> terrain_;
  std::vector<Cell> spawn_points_;
  std::vector<int> river_cells_;
  std::vector<int> orchard_cells_;
};

}  // namespace ssdlab::grid

#endif  // SSDLAB_GRID_GRID_MAP_H_
