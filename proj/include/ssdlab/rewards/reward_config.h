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

#ifndef SSDLAB_REWARDS_REWARD_CONFIG_H_
#define SSDLAB_REWARDS_REWARD_CONFIG_H_

#include <string>

namespace ssdlab::rewards {

enum class RewardVariant { kNone, kIcm, kIcmReward, kInfluence, kSvo };

std::string VariantName(RewardVariant v);
// Throws ConfigError for unknown names.
RewardVariant ParseVariant(const std::string& name);

// Which rewards feed the SVO angle.
enum class SvoBasis { kStep, kCumulative };

struct RewardConfig {
  RewardVariant variant = RewardVariant::kNone;
  double alpha = 0.0;
  // SVO targets are drawn from N(mu, sigma) in degrees.
  double svo_mu_deg = 45.0;
  double svo_sigma_deg = 0.0;
  SvoBasis svo_basis = SvoBasis::kStep;
  // ICM: compare in observation space instead of encoder feature space.
  bool icm_raw_target = false;
  // Weight of the world-model inverse loss relative to the forward loss.
  double icm_inverse_weight = 1.0;
  // Weight of the MOA cross-entropy in the policy update.
  double moa_loss_weight = 1.0;

  void Validate() const;
};

// r_ext + alpha * r_int.
inline double ShapedReward(double r_ext, double alpha, double r_int) {
  return r_ext + alpha * r_int;
}

}  // namespace ssdlab::rewards

#endif  // SSDLAB_REWARDS_REWARD_CONFIG_H_
