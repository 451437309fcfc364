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

#ifndef SSDLAB_REWARDS_SVO_H_
#define SSDLAB_REWARDS_SVO_H_

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace ssdlab::rewards {

inline double DegToRad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double RadToDeg(double rad) { return rad * 180.0 / std::numbers::pi; }

// atan2(mean(others), own). Requires at least one peer.
double SvoAngle(double own, std::span<const double> others);

// r_ext - alpha * |target - clip(angle, 0, pi/2)|.
double SvoShapedReward(double r_ext, double angle, double target, double alpha);

// K independent N(mu, sigma) draws in degrees, converted to radians and
// clipped to [0, pi/2]. sigma = 0 reproduces mu exactly.
std::vector<double> SampleSvoPopulation(double mu_deg, double sigma_deg, int k, uint64_t seed);

}  // namespace ssdlab::rewards

#endif  // SSDLAB_REWARDS_SVO_H_
