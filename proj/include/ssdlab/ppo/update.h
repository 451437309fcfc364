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

#ifndef SSDLAB_PPO_UPDATE_H_
#define SSDLAB_PPO_UPDATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ssdlab/ppo/config.h"
#include "ssdlab/ppo/population.h"
#include "ssdlab/ppo/rollout.h"

namespace ssdlab::ppo {

// Per-agent advantages and value targets for one rollout.
struct UpdateTargets {
  std::vector<std::vector<double>> advantages;
  std::vector<std::vector<double>> returns;
};

// GAE on the shaped rewards of every agent, then one normalization over the
// whole batch (all agents together).
UpdateTargets ComputeTargets(const RolloutBuffer& buffer, const PpoConfig& cfg,
                             bool normalize = true);

struct MinibatchStats {
  int brain = 0;
  int epoch = 0;
  int samples = 0;
  double policy_loss = 0;            // clipped surrogate, negated
  double policy_loss_unclipped = 0;  // -mean(ratio * A)
  double value_loss = 0;
  double entropy = 0;
  double clip_fraction = 0;
  double approx_kl = 0;  // mean of (ratio - 1) - log(ratio)
  double max_abs_ratio_deviation = 0;
  double moa_loss = 0;
  double world_model_loss = 0;
  double grad_norm = 0;
};

struct UpdateReport {
  // Sample-weighted means over minibatches.
  double policy_loss = 0;
  double policy_loss_unclipped = 0;
  double value_loss = 0;
  double entropy = 0;
  double clip_fraction = 0;
  double approx_kl = 0;
  double moa_loss = 0;
  double world_model_loss = 0;
  int optimizer_steps = 0;
  bool aborted = false;
  std::string abort_reason;
  std::vector<MinibatchStats> minibatches;
};

struct UpdateOptions {
  std::vector<int> brains;  // empty means every brain
  uint64_t update_index = 0;
};

// Runs epochs_per_update passes of minibatched recurrent PPO over whole BPTT
// chunks. With zero epochs, the losses are measured once and nothing moves.
// A non-finite loss or gradient stops the update and sets `aborted`.
UpdateReport PpoUpdate(Population& population, const RolloutBuffer& buffer,
                       const UpdateTargets& targets, const PpoConfig& cfg,
                       const UpdateOptions& options = {});

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_UPDATE_H_
