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

#include "ssdlab/grid/engine.h"

#include <algorithm>
#include <utility>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::grid {

void EngineParams::Validate() const {
  if (beam_length < 0 || beam_width < 1 || beam_width % 2 == 0 || tag_freeze_steps < 0) {
    throw ConfigError("engine params: beam_length >= 0, odd beam_width >= 1 and "
                      "tag_freeze_steps >= 0 required");
  }
}

GridState Reset(std::shared_ptr<const GridMap> map, uint64_t seed, int num_agents,
                const Dynamics& dynamics) {
  SSD_CHECK(map != nullptr);
  if (num_agents < 0 || num_agents > static_cast<int>(map->spawn_points().size())) {
    throw ConfigError(internal::StrCat("map '", map->id(), "' has ",
                                       map->spawn_points().size(),
                                       " spawn points, cannot place ", num_agents,
                                       " agents"));
  }
  GridState state;
  state.map = map;
  state.seed = seed;
  state.t = 0;
  state.episode_len = dynamics.episode_len();
  state.waste.assign(map->num_cells(), 0);
  state.apples.assign(map->num_cells(), 0);
  state.beams.assign(map->num_cells(), 0);

  CounterRng placement(HashKey(seed, RngPurpose::kPlacement));
  const std::vector<int> order =
      RandomPermutation(static_cast<int>(map->spawn_points().size()), placement);
  CounterRng orientation(HashKey(seed, RngPurpose::kOrientation));
  for (int i = 0; i < num_agents; ++i) {
    Avatar a;
    a.agent_id = i;
    a.pos = map->spawn_points()[order[i]];
    a.orientation = static_cast<Orientation>(orientation.UniformInt(4));
    state.avatars.push_back(a);
  }
  dynamics.InitializeState(state);
  return state;
}

std::vector<int> MovePriority(const GridState& state) {
  CounterRng rng(HashKey(state.seed, RngPurpose::kMovePriority,
                         {static_cast<uint64_t>(state.t)}));
  return RandomPermutation(state.num_agents(), rng);
}

std::vector<Cell> BeamFootprint(const GridMap& map, Cell origin,
                                Orientation orientation, int length, int width) {
  const Cell forward = Forward(orientation);
  const Cell right = Right(orientation);
  const int half = width / 2;
  std::vector<Cell> cells;
  for (int lane = -half; lane <= half; ++lane) {
    const Cell start = origin + lane * right;
    for (int d = 1; d <= length; ++d) {
      const Cell c = start + d * forward;
      if (map.Blocked(c)) break;
      cells.push_back(c);
    }
  }
  return cells;
}

namespace {

// Settles simultaneous moves. `target[i]` is the intended cell of agent i or
// its own cell when it does not move. Returns each agent's final cell.
std::vector<Cell> ResolveMoves(const GridState& state, const std::vector<Cell>& target,
                               const std::vector<int>& priority) {
  const int k = state.num_agents();
  std::vector<bool> moving(k, false);
  for (int i = 0; i < k; ++i) moving[i] = !(target[i] == state.avatars[i].pos);

  // Contested cells go to the highest-priority claimant.
  for (int rank = 0; rank < k; ++rank) {
    const int i = priority[rank];
    if (!moving[i]) continue;
    for (int later = rank + 1; later < k; ++later) {
      const int j = priority[later];
      if (moving[j] && target[j] == target[i]) moving[j] = false;
    }
  }

  // A mover is blocked by an avatar that stays put, and two movers may not
  // swap cells. Iterate to a fixed point since blocking propagates.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < k; ++i) {
      if (!moving[i]) continue;
      const int occupant = state.AvatarAt(target[i]);
      if (occupant < 0) continue;
      if (!moving[occupant]) {
        moving[i] = false;
        changed = true;
      } else if (target[occupant] == state.avatars[i].pos) {
        moving[i] = false;
        moving[occupant] = false;
        changed = true;
      }
    }
  }

  std::vector<Cell> final_pos(k);
  for (int i = 0; i < k; ++i) final_pos[i] = moving[i] ? target[i] : state.avatars[i].pos;
  return final_pos;
}

}  // namespace

StepOutcome StepInPlace(GridState& state, std::span<const Action> joint_action,
                        const Dynamics& dynamics, const EngineParams& params) {
  const int k = state.num_agents();
  SSD_CHECK(static_cast<int>(joint_action.size()) == k,
            "joint action has ", joint_action.size(), " entries for ", k, " agents");
  SSD_CHECK(!state.done(), "step on a finished episode (t=", state.t, ")");

  StepOutcome out;
  out.rewards.assign(k, 0.0);
  out.events.assign(k, AgentEvents{});

  std::vector<Action> actions(joint_action.begin(), joint_action.end());
  for (int i = 0; i < k; ++i) {
    if (state.t < state.avatars[i].frozen_until) actions[i] = Action::kStay;
  }

  const std::vector<int> priority = MovePriority(state);
  const GridMap& map = *state.map;

  // Rotations, then moves.
  std::vector<Cell> target(k);
  for (int i = 0; i < k; ++i) {
    Avatar& a = state.avatars[i];
    if (actions[i] == Action::kRotateLeft) a.orientation = RotatedLeft(a.orientation);
    if (actions[i] == Action::kRotateRight) a.orientation = RotatedRight(a.orientation);
    target[i] = a.pos;
    if (IsMove(actions[i])) {
      const Cell next = a.pos + MoveDelta(actions[i], a.orientation);
      if (!map.Blocked(next)) target[i] = next;
    }
  }
  const std::vector<Cell> final_pos = ResolveMoves(state, target, priority);
  for (int i = 0; i < k; ++i) state.avatars[i].pos = final_pos[i];

  // Beams.
  std::fill(state.beams.begin(), state.beams.end(), 0);
  std::vector<bool> hit(k, false);
  for (int i = 0; i < k; ++i) {
    if (actions[i] != Action::kTagBeam) continue;
    const Avatar& a = state.avatars[i];
    ++out.events[i].tags_fired;
    for (Cell c : BeamFootprint(map, a.pos, a.orientation, params.beam_length,
                                params.beam_width)) {
      state.beams[map.Index(c)] = 1;
      const int victim = state.AvatarAt(c);
      if (victim >= 0 && victim != i) hit[victim] = true;
    }
  }
  for (int j = 0; j < k; ++j) {
    if (!hit[j]) continue;
    ++out.events[j].times_tagged;
    state.avatars[j].frozen_until =
        std::max(state.avatars[j].frozen_until, state.t + 1 + params.tag_freeze_steps);
  }
  if (dynamics.supports_clean_beam()) {
    for (int i : priority) {
      if (actions[i] != Action::kCleanBeam) continue;
      const Avatar& a = state.avatars[i];
      for (Cell c : BeamFootprint(map, a.pos, a.orientation, params.beam_length,
                                  params.beam_width)) {
        state.beams[map.Index(c)] = 1;
      }
      out.events[i].waste_cleaned += dynamics.ResolveCleanBeam(state, i, params);
    }
  }

  dynamics.ApplyDynamics(state);

  for (int i = 0; i < k; ++i) {
    const int index = map.Index(state.avatars[i].pos);
    if (state.apples[index]) {
      state.SetApple(index, false);
      out.rewards[i] += 1.0;
      ++out.events[i].apples_eaten;
    }
  }

  ++state.t;
  out.done = state.done();
  return out;
}

StepResult Step(const GridState& state, std::span<const Action> joint_action,
                const Dynamics& dynamics, const EngineParams& params) {
  StepResult result;
  result.next_state = state;
  StepOutcome outcome = StepInPlace(result.next_state, joint_action, dynamics, params);
  result.extrinsic_rewards = std::move(outcome.rewards);
  result.events = std::move(outcome.events);
  result.done = outcome.done;
  for (int i = 0; i < result.next_state.num_agents(); ++i) {
    result.observations.push_back(Observe(result.next_state, i));
  }
  return result;
}

}  // namespace ssdlab::grid
