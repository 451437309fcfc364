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

#ifndef SSDLAB_PPO_RUNNER_H_
#define SSDLAB_PPO_RUNNER_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "ssdlab/envs/environment.h"
#include "ssdlab/grid/grid_state.h"
#include "ssdlab/metrics/metrics.h"
#include "ssdlab/ppo/population.h"

namespace ssdlab::ppo {

enum class ActionSelection { kSample, kArgmax };

// Replaces the policy's choice for `agent`. `u` is the step's keyed uniform.
using ScriptedPolicy = std::function<int(const grid::GridState& state, int agent, double u)>;

// What one agent saw and did on one step; the raw material of a Transition.
struct AgentStep {
  std::vector<uint8_t> obs;         // o_t, HWC
  std::vector<uint8_t> global_obs;  // full map (shared critic only)
  std::vector<uint8_t> next_obs;    // o_{t+1} (world model only)
  int action = 0;
  double log_prob = 0;
  double value = 0;
  std::vector<double> h_policy;  // recurrent inputs at t
  std::vector<double> h_wm;
  std::vector<double> h_moa;
  std::vector<int> moa_prev;    // peers' previous actions, -1 when unseen
  std::vector<int> moa_target;  // peers' current actions, -1 when unseen
  bool episode_start = false;
};

struct JointStep {
  int t = 0;  // step index within the episode
  std::vector<int> actions;
  std::vector<double> extrinsic;
  std::vector<double> intrinsic;
  std::vector<double> shaped;
  std::vector<grid::AgentEvents> events;
  bool done = false;
  std::vector<AgentStep> agents;  // only when training data was requested
};

// Everything needed to continue an episode exactly where it stopped.
struct RunnerSnapshot {
  bool active = false;
  grid::GridState state;
  uint64_t action_key = 0;
  std::vector<std::vector<double>> h_policy, h_wm, h_moa;
  std::vector<int> prev_actions;
  std::vector<double> cumulative_returns;
  metrics::EpisodeStats stats;
};

// Plays episodes of one environment with a population's current parameters.
// Forward passes only read the population; several runners may share one.
class Runner {
 public:
  Runner(const Population& population, const envs::Environment& env, ActionSelection selection);

  // Actions come from `policy` instead of the networks; log-probabilities and
  // values are still reported under the networks.
  void set_scripted_policy(ScriptedPolicy policy) { scripted_ = std::move(policy); }

  // Starts an episode; action sampling is keyed on `action_key`.
  void BeginEpisode(uint64_t episode_seed, uint64_t action_key);
  JointStep Step(bool record_training_data);

  bool active() const { return active_; }
  bool done() const { return active_ && state_.done(); }
  const grid::GridState& state() const { return state_; }
  const metrics::EpisodeStats& stats() const { return stats_; }
  const envs::Environment& env() const { return env_; }

  // Value estimate of the current state for every agent.
  std::vector<double> BootstrapValues() const;

  RunnerSnapshot Snapshot() const;
  void Restore(const RunnerSnapshot& snapshot);

 private:
  struct PolicyPass {
    std::vector<std::vector<double>> logits;  // per agent
    std::vector<double> values;
    std::vector<std::vector<double>> next_hidden;
    std::vector<std::vector<double>> features;
  };
  PolicyPass RunPolicies(const std::vector<std::vector<uint8_t>>& obs,
                         const std::vector<std::vector<uint8_t>>& global_obs) const;

  const Population& population_;
  const envs::Environment& env_;
  ActionSelection selection_;
  ScriptedPolicy scripted_;

  bool active_ = false;
  grid::GridState state_;
  uint64_t action_key_ = 0;
  std::vector<std::vector<double>> h_policy_, h_wm_, h_moa_;
  std::vector<int> prev_actions_;
  std::vector<double> cumulative_returns_;
  metrics::EpisodeStats stats_;
};

// Index of the action drawn by inverse-CDF sampling with uniform `u`.
int SampleFromLogits(std::span<const double> logits, double u);
// log softmax(logits)[a], computed like the LogSoftmax op.
double LogProbOf(std::span<const double> logits, int action);

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_RUNNER_H_
