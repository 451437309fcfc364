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

#include "ssdlab/rewards/icm.h"

#include "ssdlab/common/error.h"
#include "ssdlab/nn/ops.h"

namespace ssdlab::rewards {

IcmLosses ComputeIcmLosses(const nn::WorldModel& wm, const nn::Tensor& trunk,
                           std::span<const int> actions, const nn::Tensor& next_images) {
  nn::Tensor onehot = nn::OneHotRows(actions, nn::kActionCount);
  IcmLosses out;
  nn::Tensor prediction = wm.PredictNext(trunk, onehot);
  out.forward = nn::SquaredL2Rows(nn::Sub(prediction, wm.ForwardTargetOf(next_images)));
  out.inverse = nn::SoftmaxCrossEntropy(wm.InverseLogits(trunk, wm.Encode(next_images)), actions);
  return out;
}

IcmLosses ComputeIcmTrainingLosses(const nn::WorldModel& wm, const nn::Tensor& trunk,
                                   std::span<const int> actions, const nn::Tensor& next_images) {
  if (wm.target() == nn::ForwardTarget::kRawObservation) {
    return ComputeIcmLosses(wm, trunk, actions, next_images);
  }
  nn::Tensor onehot = nn::OneHotRows(actions, nn::kActionCount);
  nn::Tensor next_features = wm.Encode(next_images);
  IcmLosses out;
  nn::Tensor prediction = wm.PredictNext(trunk.Detach(), onehot);
  out.forward = nn::SquaredL2Rows(nn::Sub(prediction, next_features.Detach()));
  out.inverse = nn::SoftmaxCrossEntropy(wm.InverseLogits(trunk, next_features), actions);
  return out;
}

nn::Tensor ComputeRewardLoss(const nn::WorldModel& wm, const nn::Tensor& trunk,
                             std::span<const int> actions, std::span<const double> realized) {
  SSD_CHECK(wm.has_reward_head(), "reward loss needs a world model with a reward head");
  SSD_CHECK(static_cast<int>(realized.size()) == trunk.dim(0), "reward count");
  nn::Tensor pred = wm.PredictReward(trunk, nn::OneHotRows(actions, nn::kActionCount));
  nn::Tensor target = nn::Tensor::FromVector({trunk.dim(0)},
                                             std::vector<nn::Real>(realized.begin(), realized.end()));
  return nn::Square(nn::Sub(pred, target));
}

}  // namespace ssdlab::rewards
