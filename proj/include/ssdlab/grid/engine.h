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

#ifndef SSDLAB_GRID_ENGINE_H_
#define SSDLAB_GRID_ENGINE_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ssdlab/grid/grid_state.h"
#include "ssdlab/grid/observation.h"
#include "ssdlab/grid/types.h"

namespace ssdlab::grid {

struct EngineParams {
  int beam_length = 5;
  int beam_width = 3;
  int tag_freeze_steps = 25;

  void Validate() const;
};

struct AgentEvents {
  int apples_eaten = 0;
  int waste_cleaned = 0;
  int tags_fired = 0;
  int times_tagged = 0;

  friend bool operator==(const AgentEvents&, const AgentEvents&) = default;
};

// Environment-specific laws plugged into the engine.
class Dynamics {
 public:
  virtual ~Dynamics() = default;

  virtual int episode_len() const = 0;
  // Initial waste/apples after avatars are placed.
  virtual void InitializeState(GridState& state) const {}
  // Per-step spawning. Must not place items under avatars.
  virtual void ApplyDynamics(GridState& state) const {}
  virtual bool supports_clean_beam() const { return false; }
  // Returns the number of waste cells removed.
  virtual int ResolveCleanBeam(GridState& state, int agent_id,
                               const EngineParams& params) const {
    return 0;
  }
};

// No spawning, no initial items; useful for pure engine tests.
class StaticDynamics : public Dynamics {
 public:
  explicit StaticDynamics(int episode_len) : episode_len_(episode_len) {}
  int episode_len() const override { return episode_len_; }

 private:
  int episode_len_;
};

// Places `num_agents` avatars on the first num_agents entries of a
// seed-shuffled spawn point list, with seeded orientations, then lets the
// dynamics initialize items. Throws ConfigError if there are too few spawn
// points.
GridState Reset(std::shared_ptr<const GridMap> map, uint64_t seed,
                int num_agents, const Dynamics& dynamics);

// Priority order used to settle movement conflicts at the state's current
// step: result[0] wins against everyone.
std::vector<int> MovePriority(const GridState& state);

// Cells swept by a beam fired from `origin`: `width` parallel lanes centred on
// the avatar, each extending up to `length` cells ahead and stopping at the
// first wall or map edge.
std::vector<Cell> BeamFootprint(const GridMap& map, Cell origin,
                                Orientation orientation, int length, int width);

struct StepOutcome {
  std::vector<double> rewards;
  std::vector<AgentEvents> events;
  bool done = false;
};

// Advances `state` by one joint action:
//   1. frozen avatars act Stay
//   2. rotations, then simultaneous moves (conflicts by MovePriority)
//   3. beams (tag freezes others; clean delegates to the dynamics)
//   4. dynamics
//   5. apple consumption (+1)
//   6. t += 1
StepOutcome StepInPlace(GridState& state, std::span<const Action> joint_action,
                        const Dynamics& dynamics, const EngineParams& params);

struct StepResult {
  GridState next_state;
  std::vector<Observation> observations;
  std::vector<double> extrinsic_rewards;
  std::vector<AgentEvents> events;
  bool done = false;
};

StepResult Step(const GridState& state, std::span<const Action> joint_action,
                const Dynamics& dynamics, const EngineParams& params);

}  // namespace ssdlab::grid

#endif  // SSDLAB_GRID_ENGINE_H_
