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

#include "ssdlab/ppo/gae.h"

#include <cmath>

#include "ssdlab/common/error.h"
#include "ssdlab/ppo/config.h"

namespace ssdlab::ppo {

void PpoConfig::Validate() const {
  if (!(gamma > 0 && gamma <= 1)) throw ConfigError("ppo: gamma must lie in (0, 1]");
  if (!(gae_lambda >= 0 && gae_lambda <= 1)) throw ConfigError("ppo: gae_lambda must lie in [0, 1]");
  if (!(clip_ratio > 0)) throw ConfigError("ppo: clip_ratio must be > 0");
  if (epochs_per_update < 0) throw ConfigError("ppo: epochs_per_update must be >= 0");
  if (minibatch_count < 1) throw ConfigError("ppo: minibatch_count must be >= 1");
  if (!(value_coef >= 0) || !(entropy_coef >= 0)) throw ConfigError("ppo: coefficients must be >= 0");
  if (rollout_horizon < 1) throw ConfigError("ppo: rollout_horizon must be >= 1");
  if (bptt_chunk < 1) throw ConfigError("ppo: bptt_chunk must be >= 1");
  adam.Validate();
  world_model_adam.Validate();
}

GaeResult ComputeGae(std::span<const double> rewards, std::span<const double> values,
                     std::span<const uint8_t> dones, double bootstrap, double gamma,
                     double lambda) {
  SSD_CHECK(rewards.size() == values.size() && rewards.size() == dones.size(),
            "GAE inputs differ in length");
  const size_t n = rewards.size();
  GaeResult out;
  out.advantages.assign(n, 0.0);
  out.returns.assign(n, 0.0);
  double next_adv = 0;
  for (size_t i = n; i-- > 0;) {
    const double not_done = dones[i] ? 0.0 : 1.0;
    const double next_value = (i + 1 < n ? values[i + 1] : bootstrap) * not_done;
    const double delta = rewards[i] + gamma * next_value - values[i];
    next_adv = delta + gamma * lambda * not_done * next_adv;
    out.advantages[i] = next_adv;
    out.returns[i] = next_adv + values[i];
  }
  return out;
}

void NormalizeAdvantages(std::span<double> advantages, double eps) {
  if (advantages.empty()) return;
  const double n = static_cast<double>(advantages.size());
  double mean = 0;
  for (double a : advantages) mean += a;
  mean /= n;
  double var = 0;
  for (double a : advantages) var += (a - mean) * (a - mean);
  const double sd = std::sqrt(var / n);
  for (double& a : advantages) a = (a - mean) / (sd + eps);
}

}  // namespace ssdlab::ppo
