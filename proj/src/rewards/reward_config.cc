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

#include "ssdlab/rewards/reward_config.h"

#include <cmath>

#include "ssdlab/common/error.h"

namespace ssdlab::rewards {

std::string VariantName(RewardVariant v) {
  switch (v) {
    case RewardVariant::kNone: return "none";
    case RewardVariant::kIcm: return "icm";
    case RewardVariant::kIcmReward: return "icm_reward";
    case RewardVariant::kInfluence: return "influence";
    case RewardVariant::kSvo: return "svo";
  }
  return "?";
}

RewardVariant ParseVariant(const std::string& name) {
  for (RewardVariant v : {RewardVariant::kNone, RewardVariant::kIcm, RewardVariant::kIcmReward,
                          RewardVariant::kInfluence, RewardVariant::kSvo}) {
    if (VariantName(v) == name) return v;
  }
  throw ConfigError("unknown reward variant '" + name + "'");
}

void RewardConfig::Validate() const {
  if (!(alpha >= 0) || !std::isfinite(alpha)) throw ConfigError("alpha must be finite and >= 0");
  if (!(svo_sigma_deg >= 0)) throw ConfigError("svo sigma must be >= 0");
  if (!std::isfinite(svo_mu_deg)) throw ConfigError("svo mu must be finite");
  if (!(icm_inverse_weight >= 0)) throw ConfigError("icm inverse weight must be >= 0");
  if (!(moa_loss_weight >= 0)) throw ConfigError("moa loss weight must be >= 0");
}

}  // namespace ssdlab::rewards
