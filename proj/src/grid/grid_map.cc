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

#include "ssdlab/grid/grid_map.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "ssdlab/common/error.h"

namespace ssdlab::grid {


std::string_view ActionName(Action a) {
  switch (a) {
    case Action::kStepForward: return "forward";
    case Action::kStepBackward: return "backward";
    case Action::kStepLeft: return "left";
    case Action::kStepRight: return "right";
    case Action::kRotateLeft: return "rotate_left";
    case Action::kRotateRight: return "rotate_right";
    case Action::kStay: return "stay";
    case Action::kTagBeam: return "tag";
    case Action::kCleanBeam: return "clean";
  }
  return "?";
}

std::optional<Action> ParseAction(std::string_view name) {
  for (int i = 0; i < kNumActions; ++i) {
    const auto a = static_cast<Action>(i);
    if (ActionName(a) == name) return a;
  }
  return std::nullopt;
}

GridMap::GridMap(std::string id, int width, int height,
                 std::vector<Terrain> terrain, std::vector<Cell> spawn_points)
    : id_(std::move(id)),
      width_(width),
      height_(height),
      terrain_(std::move(terrain)),
      spawn_points_(std::move(spawn_points)) {
  if (width_ <= 0 || height_ <= 0) {
    throw ConfigError(internal::StrCat("map '", id_, "': empty map"));
  }
  if (static_cast<int>(terrain_.size()) != width_ * height_) {
    throw ConfigError(internal::StrCat("map '", id_, "': terrain size mismatch"));
  }
  for (Cell s : spawn_points_) {
    if (!InBounds(s) || At(s) == Terrain::kWall) {
      throw ConfigError(internal::StrCat("map '", id_, "': spawn point (", s.x,
                                         ",", s.y, ") is not on open ground"));
    }
  }
  for (int i = 0; i < num_cells(); ++i) {
    if (terrain_[i] == Terrain::kRiver) river_cells_.push_back(i);
    if (terrain_[i] == Terrain::kOrchardSoil) orchard_cells_.push_back(i);
  }
}

GridMap GridMap::Parse(std::string_view text, std::string id, int expected_width,
                       int expected_height) {
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == ';') continue;
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw ConfigError(internal::StrCat("map '", id, "': no rows"));

  const int width = static_cast<int>(rows.front().size());
  const int height = static_cast<int>(rows.size());
  std::vector<Terrain> terrain;
  terrain.reserve(width * height);
  std::vector<Cell> spawns;
  for (int y = 0; y < height; ++y) {
    if (static_cast<int>(rows[y].size()) != width) {
      throw ConfigError(internal::StrCat("map '", id, "': row ", y, " has width ",
                                         rows[y].size(), ", expected ", width));
    }
    for (int x = 0; x < width; ++x) {
      switch (rows[y][x]) {
        case '#': terrain.push_back(Terrain::kWall); break;
        case 'R': terrain.push_back(Terrain::kRiver); break;
        case 'O': terrain.push_back(Terrain::kOrchardSoil); break;
        case '.': terrain.push_back(Terrain::kEmpty); break;
        case 'S':
          terrain.push_back(Terrain::kEmpty);
          spawns.push_back({x, y});
          break;
        default:
          throw ConfigError(internal::StrCat("map '", id, "': unknown cell '",
                                             rows[y][x], "' at (", x, ",", y, ")"));
      }
    }
  }
  if ((expected_width > 0 && width != expected_width) ||
      (expected_height > 0 && height != expected_height)) {
    throw ConfigError(internal::StrCat("map '", id, "': size ", width, "x", height,
                                       ", expected ", expected_width, "x",
                                       expected_height));
  }
  return GridMap(std::move(id), width, height, std::move(terrain), std::move(spawns));
}

GridMap GridMap::Load(const std::filesystem::path& path, int expected_width,
                      int expected_height, std::string id) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (id.empty()) id = path.stem().string();
  return Parse(text.str(), std::move(id), expected_width, expected_height);
}

std::string GridMap::ToText() const {
  std::string out;
  out.reserve((width_ + 1) * height_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      char ch = '.';
      switch (At({x, y})) {
        case Terrain::kWall: ch = '#'; break;
        case Terrain::kRiver: ch = 'R'; break;
        case Terrain::kOrchardSoil: ch = 'O'; break;
        case Terrain::kEmpty: ch = '.'; break;
      }
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  for (Cell s : spawn_points_) out[s.y * (width_ + 1) + s.x] = 'S';
  return out;
}

}  // namespace ssdlab::grid
