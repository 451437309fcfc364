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

#ifndef SSDLAB_PPO_ROLLOUT_H_
#define SSDLAB_PPO_ROLLOUT_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ssdlab/envs/environment.h"
#include "ssdlab/metrics/metrics.h"
#include "ssdlab/ppo/population.h"
#include "ssdlab/ppo/runner.h"

namespace ssdlab::ppo {

// One agent's experience at one step. `step.global_obs` is filled only when
// the shared critic is active.
struct Transition {
  AgentStep step;
  double extrinsic = 0;
  double intrinsic = 0;
  double shaped = 0;  // the reward used for advantages
  bool done = false;  // the episode ended after this step
};

struct AgentTrajectory {
  std::vector<Transition> steps;
  double bootstrap = 0;  // value of the state after the last step (0 if it ended an episode)
};

struct RolloutBuffer {
  std::vector<AgentTrajectory> agents;
  std::vector<metrics::EpisodeStats> finished;  // episodes completed during the rollout

  int horizon() const { return agents.empty() ? 0 : static_cast<int>(agents[0].steps.size()); }
};

struct CollectorSnapshot {
  int64_t episodes_started = 0;
  RunnerSnapshot runner;
};

// Steps one environment under the population, starting a fresh episode
// whenever the previous one ends. Episode k uses the seed
// HashKey(run_seed, kEpisodeSeed, {k}).
class Collector {
 public:
  Collector(const Population& population, const envs::Environment& env, uint64_t run_seed);

  RolloutBuffer Collect(int horizon);

  // Called with every joint step, after rewards are known.
  void set_step_observer(std::function<void(const JointStep&, const Runner&)> observer) {
    observer_ = std::move(observer);
  }
  Runner& runner() { return runner_; }
  int64_t episodes_started() const { return episodes_started_; }

  CollectorSnapshot Snapshot() const;
  void Restore(const CollectorSnapshot& snapshot);

 private:
  void StartEpisode();

  const Population& population_;
  uint64_t run_seed_;
  Runner runner_;
  int64_t episodes_started_ = 0;
  std::function<void(const JointStep&, const Runner&)> observer_;
};

uint64_t EpisodeSeed(uint64_t run_seed, int64_t episode_index);
uint64_t ActionKey(uint64_t episode_seed);

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_ROLLOUT_H_
