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

#ifndef SSDLAB_PPO_CONFIG_H_
#define SSDLAB_PPO_CONFIG_H_

#include "ssdlab/nn/param_set.h"

namespace ssdlab::ppo {

struct PpoConfig {
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double clip_ratio = 0.2;
  int epochs_per_update = 4;
  int minibatch_count = 4;
  double value_coef = 0.5;
  double entropy_coef = 0.01;
  int rollout_horizon = 1000;
  int bptt_chunk = 64;
  nn::AdamConfig adam;              // policy, value and MOA parameters
  nn::AdamConfig world_model_adam;  // curiosity world model

  // Throws ConfigError.
  void Validate() const;
};

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_CONFIG_H_
