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

#include "ssdlab/rewards/svo.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::rewards {

double SvoAngle(double own, std::span<const double> others) {
  SSD_CHECK(!others.empty(), "SVO angle needs at least one peer");
  const double mean =
      std::accumulate(others.begin(), others.end(), 0.0) / static_cast<double>(others.size());
  return std::atan2(mean, own);
}

double SvoShapedReward(double r_ext, double angle, double target, double alpha) {
  const double clipped = std::clamp(angle, 0.0, std::numbers::pi / 2);
  return r_ext - alpha * std::abs(target - clipped);
}

std::vector<double> SampleSvoPopulation(double mu_deg, double sigma_deg, int k, uint64_t seed) {
  SSD_CHECK(sigma_deg >= 0, "negative SVO sigma");
  SSD_CHECK(k >= 0, "negative population size");
  CounterRng rng(HashKey(seed, RngPurpose::kSvoSample));
  std::vector<double> targets(k);
  for (double& t : targets) {
    const double deg = sigma_deg == 0 ? mu_deg : mu_deg + sigma_deg * rng.Normal();
    t = std::clamp(DegToRad(deg), 0.0, std::numbers::pi / 2);
  }
  return targets;
}

}  // namespace ssdlab::rewards
