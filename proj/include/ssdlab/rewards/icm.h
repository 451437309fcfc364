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

#ifndef SSDLAB_REWARDS_ICM_H_
#define SSDLAB_REWARDS_ICM_H_

#include <span>

#include "ssdlab/nn/networks.h"

namespace ssdlab::rewards {

struct IcmLosses {
  nn::Tensor forward;  // [B] squared L2 prediction error
  nn::Tensor inverse;  // [B] cross-entropy of the realized action
};

// `trunk` is the world-model trunk output for o_t. The forward target comes
// from o_{t+1} with gradients stopped.
IcmLosses ComputeIcmLosses(const nn::WorldModel& wm, const nn::Tensor& trunk,
                           std::span<const int> actions, const nn::Tensor& next_images);

// The losses used to train the world model. Identical in value to
// ComputeIcmLosses, but with feature targets the forward loss reaches only the
// forward head: the encoder and trunk learn from the inverse (and reward)
// losses. Letting the forward loss move the encoder that also produces its
// target makes the feature scale grow without bound.
IcmLosses ComputeIcmTrainingLosses(const nn::WorldModel& wm, const nn::Tensor& trunk,
                                   std::span<const int> actions, const nn::Tensor& next_images);

// [B] squared error between the reward head and the realized reward.
nn::Tensor ComputeRewardLoss(const nn::WorldModel& wm, const nn::Tensor& trunk,
                             std::span<const int> actions, std::span<const double> realized);

// The intrinsic reward is the loss value with no graph attached.
inline double IntrinsicFromLoss(double loss_value) { return loss_value; }

}  // namespace ssdlab::rewards

#endif  // SSDLAB_REWARDS_ICM_H_
