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

#ifndef SSDLAB_PPO_GAE_H_
#define SSDLAB_PPO_GAE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ssdlab::ppo {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values
};

// dones[t] != 0 means the episode ended with step t, so nothing after it is
// bootstrapped into t. `bootstrap` is V of the state after the last step.
GaeResult ComputeGae(std::span<const double> rewards, std::span<const double> values,
                     std::span<const uint8_t> dones, double bootstrap, double gamma,
                     double lambda);

// In place (x - mean) / (std + eps) with the population std.
void NormalizeAdvantages(std::span<double> advantages, double eps = 1e-8);

}  // namespace ssdlab::ppo

#endif  // SSDLAB_PPO_GAE_H_
