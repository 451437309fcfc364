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

#ifndef SSDLAB_ENVS_ENVIRONMENT_H_
#define SSDLAB_ENVS_ENVIRONMENT_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "ssdlab/envs/cleanup.h"
#include "ssdlab/envs/harvest.h"
#include "ssdlab/grid/engine.h"
#include "ssdlab/grid/grid_map.h"

namespace ssdlab::envs {

enum class EnvKind { kCleanup, kHarvest };

struct EnvConfig {
  // One of cleanup, harvest, cleanup_small, harvest_small.
  std::string name = "cleanup";
  EnvKind kind = EnvKind::kCleanup;
  // Empty means the bundled map for `name`.
  std::string map_file;
  CleanupParams cleanup;
  HarvestParams harvest;
  grid::EngineParams engine;

  int episode_len() const {
    return kind == EnvKind::kCleanup ? cleanup.episode_len : harvest.episode_len;
  }
  void Validate() const;
};

// Defaults for a bundled environment name; throws ConfigError on unknown names.
EnvConfig DefaultEnvConfig(std::string_view name);

// $SSDLAB_MAP_DIR if set, else the maps/ directory of the source tree.
std::filesystem::path DefaultMapDir();

// Bundled map file and its required dimensions.
struct BundledMap {
  std::string file;
  int width;
  int height;
};
BundledMap BundledMapFor(std::string_view name);

// A map plus the game laws for it. Immutable and shareable across threads.
class Environment {
 public:
  explicit Environment(EnvConfig config);
  Environment(EnvConfig config, std::shared_ptr<const grid::GridMap> map);

  grid::GridState Reset(uint64_t seed, int num_agents) const;
  grid::StepOutcome Step(grid::GridState& state,
                         std::span<const grid::Action> joint_action) const;

  const EnvConfig& config() const { return config_; }
  const grid::GridMap& map() const { return *map_; }
  std::shared_ptr<const grid::GridMap> map_ptr() const { return map_; }
  const grid::Dynamics& dynamics() const { return *dynamics_; }
  int episode_len() const { return dynamics_->episode_len(); }

 private:
  EnvConfig config_;
  std::shared_ptr<const grid::GridMap> map_;
  std::unique_ptr<grid::Dynamics> dynamics_;
};

}  // namespace ssdlab::envs

#endif  // SSDLAB_ENVS_ENVIRONMENT_H_
