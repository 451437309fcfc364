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

#include "ssdlab/harness/render.h"

#include <array>
#include <cstdio>
#include <fstream>

#include "ssdlab/common/error.h"

namespace ssdlab::harness {

namespace fs = std::filesystem;

namespace {

using Rgb = std::array<uint8_t, 3>;

constexpr Rgb kEmpty = {20, 20, 20};
constexpr Rgb kWall = {110, 110, 110};
constexpr Rgb kRiver = {40, 90, 200};
constexpr Rgb kSoil = {90, 60, 30};
constexpr Rgb kApple = {40, 200, 60};
constexpr Rgb kWaste = {140, 140, 40};
constexpr Rgb kBeam = {250, 240, 120};
constexpr Rgb kAgents[] = {{230, 60, 60},  {250, 150, 40}, {200, 80, 220}, {60, 220, 220},
                           {250, 250, 250}, {240, 120, 170}, {150, 200, 90}, {120, 120, 250},
                           {200, 170, 120}, {100, 240, 160}};

char AgentChar(int id) {
  if (id < 10) return static_cast<char>('0' + id);
  return static_cast<char>('a' + (id - 10) % 26);
}

char TerrainChar(grid::Terrain t) {
  switch (t) {
    case grid::Terrain::kWall:
      return '#';
    case grid::Terrain::kRiver:
      return 'R';
    case grid::Terrain::kOrchardSoil:
      return 'O';
    case grid::Terrain::kEmpty:
      break;
  }
  return '.';
}

Rgb TerrainColor(grid::Terrain t) {
  switch (t) {
    case grid::Terrain::kWall:
      return kWall;
    case grid::Terrain::kRiver:
      return kRiver;
    case grid::Terrain::kOrchardSoil:
      return kSoil;
    case grid::Terrain::kEmpty:
      break;
  }
  return kEmpty;
}

void WriteFile(const fs::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << data;
  if (!out) throw ConfigError("failed writing " + path.string());
}

}  // namespace

RenderMode ParseRenderMode(const std::string& name) {
  if (name == "ascii") return RenderMode::kAscii;
  if (name == "ppm") return RenderMode::kPpm;
  throw ConfigError("render mode must be ascii or ppm, got '" + name + "'");
}

std::vector<std::string> AsciiFrame(const grid::GridState& state) {
  const auto& map = *state.map;
  std::vector<std::string> rows(map.height(), std::string(map.width(), '.'));
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      const grid::Cell c{x, y};
      const int idx = map.Index(c);
      char ch = TerrainChar(map.At(c));
      if (state.beams[idx]) ch = '*';
      if (state.waste[idx]) ch = '~';
      if (state.apples[idx]) ch = '@';
      rows[y][x] = ch;
    }
  }
  for (const auto& a : state.avatars) rows[a.pos.y][a.pos.x] = AgentChar(a.agent_id);
  return rows;
}

std::string PpmFrame(const grid::GridState& state, int scale) {
  SSD_CHECK(scale >= 1, "scale must be positive");
  const auto& map = *state.map;
  const int w = map.width(), h = map.height();
  std::vector<Rgb> cells(static_cast<size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const grid::Cell c{x, y};
      const int idx = map.Index(c);
      Rgb color = TerrainColor(map.At(c));
      if (state.beams[idx]) color = kBeam;
      if (state.waste[idx]) color = kWaste;
      if (state.apples[idx]) color = kApple;
      cells[idx] = color;
    }
  }
  constexpr int kPalette = sizeof(kAgents) / sizeof(kAgents[0]);
  for (const auto& a : state.avatars) cells[map.Index(a.pos)] = kAgents[a.agent_id % kPalette];
  std::string out = "P6\n" + std::to_string(w * scale) + " " + std::to_string(h * scale) + "\n255\n";
  out.reserve(out.size() + static_cast<size_t>(w) * h * scale * scale * 3);
  for (int y = 0; y < h * scale; ++y) {
    for (int x = 0; x < w * scale; ++x) {
      const Rgb& c = cells[(y / scale) * w + x / scale];
      out.append(reinterpret_cast<const char*>(c.data()), 3);
    }
  }
  return out;
}

RenderResult RenderLog(const EpisodeLog& log, RenderMode mode, int stride,
                       const fs::path& out_dir) {
  if (stride < 1) throw ConfigError("stride must be >= 1");
  fs::create_directories(out_dir);
  RenderResult result;
  const int last = static_cast<int>(log.steps.size());
  auto emit = [&](const grid::GridState& s) {
    if (s.t % stride != 0 && s.t != last) return;
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.%s", s.t,
                  mode == RenderMode::kAscii ? "txt" : "ppm");
    const fs::path path = out_dir / name;
    if (mode == RenderMode::kAscii) {
      std::string text;
      for (const auto& row : AsciiFrame(s)) text += row + "\n";
      WriteFile(path, text);
    } else {
      WriteFile(path, PpmFrame(s));
    }
    result.frame_steps.push_back(s.t);
    result.files.push_back(path);
  };
  result.final_state = Replay(log, emit);
  return result;
}

}  // namespace ssdlab::harness
