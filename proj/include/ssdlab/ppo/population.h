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

#ifndef SSDLAB_PPO_POPULATION_H_
#define SSDLAB_PPO_POPULATION_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "ssdlab/nn/checkpoint.h"
#include "ssdlab/nn/networks.h"
#include "ssdlab/rewards/reward_config.h"

namespace ssdlab::ppo {

struct PopulationConfig {
  int num_agents = 5;
  // One policy/value network shared by every agent, with a value head over
  // the global state (MAPPO). Otherwise each agent owns its networks.
  bool shared_parameters = false;
  nn::NetSizes sizes;
  nn::ImageShape obs_shape;
  nn::ImageShape global_shape;  // full map, read by the shared critic
  rewards::RewardConfig reward;
  uint64_t seed = 1;

  void Validate() const;
};

// The learners of a run. A brain is one set of trainable networks; agents map
// onto brains (all onto brain 0 when parameters are shared).
class Population {
 public:
  struct Brain {
    nn::ParamSet params;  // policy, critic and MOA head (the MOA reuses the policy encoder)
    nn::PolicyNet policy;
    std::optional<nn::GlobalValueNet> critic;
    std::optional<nn::MoaHead> moa;
    nn::ParamSet wm_params;  // world model, trained with its own optimizer
    std::optional<nn::WorldModel> world_model;
  };

  explicit Population(PopulationConfig config);

  const PopulationConfig& config() const { return config_; }
  rewards::RewardVariant variant() const { return config_.reward.variant; }
  int num_agents() const { return config_.num_agents; }
  int num_brains() const { return static_cast<int>(brains_.size()); }
  int brain_of(int agent) const { return config_.shared_parameters ? 0 : agent; }
  std::vector<int> agents_of(int brain) const;

  Brain& brain(int b) { return *brains_.at(b); }
  const Brain& brain(int b) const { return *brains_.at(b); }
  Brain& brain_for_agent(int agent) { return brain(brain_of(agent)); }
  const Brain& brain_for_agent(int agent) const { return brain(brain_of(agent)); }

  // Per-agent SVO targets in radians (empty unless the SVO variant is on).
  const std::vector<double>& svo_targets() const { return svo_targets_; }
  void set_svo_targets(std::vector<double> targets);

  bool AllFinite() const;
  int64_t NumTrainableScalars() const;

  // Tensors are named "brain<b>/..." and "brain<b>/wm/...".
  void AppendTo(nn::Checkpoint& checkpoint) const;
  void RestoreFrom(const nn::Checkpoint& checkpoint);

 private:
  PopulationConfig config_;
  std::vector<std::unique_ptr<Brain>> brains_;
  std::vector<double> svo_targets_;
};

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_POPULATION_H_
