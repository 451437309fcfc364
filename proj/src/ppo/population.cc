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

#include "ssdlab/ppo/population.h"

#include <string>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"
#include "ssdlab/rewards/svo.h"

namespace ssdlab::ppo {

using rewards::RewardVariant;

void PopulationConfig::Validate() const {
  if (num_agents < 1) throw ConfigError("population needs at least one agent");
  sizes.Validate();
  reward.Validate();
  if (obs_shape.height <= 0 || obs_shape.width <= 0 || obs_shape.channels <= 0) {
    throw ConfigError("observation shape must be positive");
  }
  if (shared_parameters && (global_shape.height <= 0 || global_shape.width <= 0)) {
    throw ConfigError("shared parameters need a global state shape");
  }
  if ((reward.variant == RewardVariant::kInfluence || reward.variant == RewardVariant::kSvo) &&
      num_agents < 2) {
    throw ConfigError("influence and SVO rewards need at least two agents");
  }
}

Population::Population(PopulationConfig config) : config_(std::move(config)) {
  config_.Validate();
  const int brains = config_.shared_parameters ? 1 : config_.num_agents;
  const RewardVariant variant = config_.reward.variant;
  for (int b = 0; b < brains; ++b) {
    auto brain = std::make_unique<Brain>();
    const uint64_t seed = HashKey(config_.seed, RngPurpose::kParamInit, {static_cast<uint64_t>(b)});
    brain->policy = nn::PolicyNet(brain->params, "policy", config_.obs_shape, config_.sizes, seed,
                                  /*local_value_head=*/!config_.shared_parameters);
    if (config_.shared_parameters) {
      brain->critic.emplace(brain->params, "critic", config_.global_shape, config_.sizes, seed);
    }
    if (variant == RewardVariant::kInfluence) {
      brain->moa.emplace(brain->params, "moa", config_.sizes.dense, config_.num_agents - 1,
                         config_.sizes, seed);
    }
    if (variant == RewardVariant::kIcm || variant == RewardVariant::kIcmReward) {
      brain->world_model.emplace(brain->wm_params, "wm", config_.obs_shape, config_.sizes, seed,
                                 variant == RewardVariant::kIcmReward,
                                 config_.reward.icm_raw_target
                                     ? nn::ForwardTarget::kRawObservation
                                     : nn::ForwardTarget::kFeatures);
    }
    brains_.push_back(std::move(brain));
  }
  if (variant == RewardVariant::kSvo) {
    svo_targets_ = rewards::SampleSvoPopulation(config_.reward.svo_mu_deg,
                                                config_.reward.svo_sigma_deg,
                                                config_.num_agents, config_.seed);
  }
}

std::vector<int> Population::agents_of(int brain) const {
  std::vector<int> agents;
  for (int i = 0; i < num_agents(); ++i) {
    if (brain_of(i) == brain) agents.push_back(i);
  }
  return agents;
}

void Population::set_svo_targets(std::vector<double> targets) {
  SSD_CHECK(static_cast<int>(targets.size()) == num_agents(), "one SVO target per agent");
  svo_targets_ = std::move(targets);
}

bool Population::AllFinite() const {
  for (const auto& b : brains_) {
    if (!b->params.AllFinite() || !b->wm_params.AllFinite()) return false;
  }
  return true;
}

int64_t Population::NumTrainableScalars() const {
  int64_t n = 0;
  for (const auto& b : brains_) n += b->params.NumScalars() + b->wm_params.NumScalars();
  return n;
}

void Population::AppendTo(nn::Checkpoint& checkpoint) const {
  for (int b = 0; b < num_brains(); ++b) {
    const std::string prefix = "brain" + std::to_string(b) + "/";
    nn::AppendParamSet(brains_[b]->params, prefix, checkpoint);
    if (brains_[b]->world_model) nn::AppendParamSet(brains_[b]->wm_params, prefix + "wm/", checkpoint);
  }
  if (!svo_targets_.empty()) {
    // Stored for inspection; targets are re-derived from the seed on load.
    nn::NamedTensor t{"svo_targets", {num_agents()}, {}};
    for (double v : svo_targets_) t.data.push_back(static_cast<float>(v));
    checkpoint.tensors.push_back(std::move(t));
  }
}

void Population::RestoreFrom(const nn::Checkpoint& checkpoint) {
  for (int b = 0; b < num_brains(); ++b) {
    const std::string prefix = "brain" + std::to_string(b) + "/";
    nn::RestoreParamSet(checkpoint, prefix, brains_[b]->params);
    if (brains_[b]->world_model) nn::RestoreParamSet(checkpoint, prefix + "wm/", brains_[b]->wm_params);
  }
}

}  // namespace ssdlab::ppo
