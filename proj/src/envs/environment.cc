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

#include "ssdlab/envs/environment.h"

#include <cstdlib>
#include <utility>

#include "ssdlab/common/error.h"

#ifndef SSDLAB_DEFAULT_MAP_DIR
#define SSDLAB_DEFAULT_MAP_DIR "maps"
#endif

namespace ssdlab::envs {

void EnvConfig::Validate() const {
  cleanup.Validate();
  harvest.Validate();
  engine.Validate();
}

BundledMap BundledMapFor(std::string_view name) {
  if (name == "cleanup") return {"cleanup_25x18.map", 25, 18};
  if (name == "harvest") return {"harvest_38x16.map", 38, 16};
  if (name == "cleanup_small") return {"cleanup_small.map", 12, 9};
  if (name == "harvest_small") return {"harvest_small.map", 10, 8};
  throw ConfigError(internal::StrCat("unknown environment '", name, "'"));
}

EnvConfig DefaultEnvConfig(std::string_view name) {
  (void)BundledMapFor(name);
  EnvConfig config;
  config.name = std::string(name);
  const bool small = name.ends_with("_small");
  config.kind = name.starts_with("cleanup") ? EnvKind::kCleanup : EnvKind::kHarvest;
  config.cleanup.episode_len = small ? 200 : 2000;
  config.harvest.episode_len = small ? 200 : 1000;
  return config;
}

std::filesystem::path DefaultMapDir() {
  if (const char* dir = std::getenv("SSDLAB_MAP_DIR"); dir != nullptr && *dir != '\0') {
    return dir;
  }
  return SSDLAB_DEFAULT_MAP_DIR;
}

namespace {

std::shared_ptr<const grid::GridMap> LoadMapFor(const EnvConfig& config) {
  if (!config.map_file.empty()) {
    return std::make_shared<grid::GridMap>(grid::GridMap::Load(config.map_file));
  }
  const BundledMap bundled = BundledMapFor(config.name);
  return std::make_shared<grid::GridMap>(grid::GridMap::Load(
      DefaultMapDir() / bundled.file, bundled.width, bundled.height, config.name));
}

std::unique_ptr<grid::Dynamics> MakeDynamics(const EnvConfig& config) {
  if (config.kind == EnvKind::kCleanup) {
    return std::make_unique<CleanupDynamics>(config.cleanup);
  }
  return std::make_unique<HarvestDynamics>(config.harvest);
}

}  // namespace

Environment::Environment(EnvConfig config)
    : Environment(config, LoadMapFor(config)) {}

Environment::Environment(EnvConfig config, std::shared_ptr<const grid::GridMap> map)
    : config_(std::move(config)), map_(std::move(map)) {
  config_.Validate();
  dynamics_ = MakeDynamics(config_);
}

grid::GridState Environment::Reset(uint64_t seed, int num_agents) const {
  return grid::Reset(map_, seed, num_agents, *dynamics_);
}

grid::StepOutcome Environment::Step(grid::GridState& state,
                                    std::span<const grid::Action> joint_action) const {
  return grid::StepInPlace(state, joint_action, *dynamics_, config_.engine);
}

}  // namespace ssdlab::envs
