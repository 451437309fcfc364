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

#ifndef SSDLAB_HARNESS_RENDER_H_
#define SSDLAB_HARNESS_RENDER_H_

#include <filesystem>
#include <string>
#include <vector>

#include "ssdlab/grid/grid_state.h"
#include "ssdlab/harness/episode_log.h"

namespace ssdlab::harness {

enum class RenderMode { kAscii, kPpm };

RenderMode ParseRenderMode(const std::string& name);  // throws ConfigError

// One line per map row, one character per cell. Terrain uses the map legend
// ('#' wall, 'R' river, 'O' orchard soil, '.' empty); overlays take
// precedence in the order agent ('0'-'9', then 'a'-'z'), apple '@', waste
// '~', beam '*'.
std::vector<std::string> AsciiFrame(const grid::GridState& state);

// Binary P6 pixmap, `scale` pixels per cell, fixed palette.
std::string PpmFrame(const grid::GridState& state, int scale = 8);

struct RenderResult {
  std::vector<int> frame_steps;  // t of each frame
  std::vector<std::filesystem::path> files;
  grid::GridState final_state;
};

// Replays `log` and writes a frame for t = 0, stride, 2 * stride, ... and
// the final state, as frame_<t>.txt or frame_<t>.ppm. Replay divergence
// propagates as ReplayDivergence.
RenderResult RenderLog(const EpisodeLog& log, RenderMode mode, int stride,
                       const std::filesystem::path& out_dir);

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_RENDER_H_
