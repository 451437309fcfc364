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

#include "ssdlab/nn/networks.h"

#include "ssdlab/common/error.h"

namespace ssdlab::nn {

void NetSizes::Validate() const {
  if (conv_filters <= 0 || kernel <= 0 || dense <= 0 || hidden <= 0 || head_hidden <= 0) {
    throw ConfigError("network sizes must be positive");
  }
}

Tensor ImageTensor(const ImageShape& shape, int batch, std::span<const uint8_t> cells) {
  SSD_CHECK(static_cast<int64_t>(cells.size()) == shape.size() * batch,
            "ImageTensor: ", cells.size(), " cells for ", batch, " images");
  std::vector<Real> data(cells.begin(), cells.end());
  return Tensor::FromVector({batch, shape.height, shape.width, shape.channels},
                            std::move(data));
}

ConvEncoder::ConvEncoder(ParamSet& params, const std::string& prefix,
                         const ImageShape& input, const NetSizes& sizes, uint64_t seed)
    : input_(input) {
  sizes.Validate();
  const int k = sizes.kernel;
  SSD_CHECK(input.height >= 2 * k - 1 && input.width >= 2 * k - 1,
            "encoder input ", input.height, "x", input.width, " too small");
  c1_ = Conv::Create(params, prefix + "/conv1", input.channels, sizes.conv_filters, k, seed);
  c2_ = Conv::Create(params, prefix + "/conv2", sizes.conv_filters, sizes.conv_filters, k,
                     seed);
  const int flat = (input.height - 2 * (k - 1)) * (input.width - 2 * (k - 1)) *
                   sizes.conv_filters;
  fc_ = Dense::Create(params, prefix + "/fc", flat, sizes.dense, seed);
}

Tensor ConvEncoder::operator()(const Tensor& images) const {
  SSD_CHECK(images.rank() == 4 && images.dim(1) == input_.height &&
                images.dim(2) == input_.width && images.dim(3) == input_.channels,
            "encoder expects [B,", input_.height, ",", input_.width, ",", input_.channels,
            "], got ", ShapeString(images.shape()));
  Tensor x = Relu(c2_(Relu(c1_(images))));
  const int batch = x.dim(0);
  const int flat = x.dim(1) * x.dim(2) * x.dim(3);
  return Relu(fc_(Reshape(x, {batch, flat})));
}

PolicyNet::PolicyNet(ParamSet& params, const std::string& prefix, const ImageShape& input,
                     const NetSizes& sizes, uint64_t seed, bool local_value_head)
    : has_value_(local_value_head) {
  encoder_ = ConvEncoder(params, prefix + "/enc", input, sizes, seed);
  gru_ = GruCell::Create(params, prefix + "/gru", sizes.dense, sizes.hidden, seed);
  pi_ = Dense::Create(params, prefix + "/pi", sizes.hidden, kActionCount, seed, 0.01);
  if (has_value_) v_ = Dense::Create(params, prefix + "/v", sizes.hidden, 1, seed);
}

PolicyNet::Output PolicyNet::Heads(const Tensor& h, Tensor features, Tensor hidden) const {
  Output out;
  out.logits = pi_(h);
  if (has_value_) out.value = Reshape(v_(h), {h.dim(0)});
  out.hidden = std::move(hidden);
  out.features = std::move(features);
  return out;
}

PolicyNet::Output PolicyNet::Forward(const Tensor& images, const Tensor& hidden) const {
  SSD_CHECK(hidden.rank() == 2 && hidden.dim(0) == images.dim(0),
            "policy hidden batch mismatch");
  Tensor features = encoder_(images);
  Tensor h = gru_(features, hidden);
  return Heads(h, features, h);
}

PolicyNet::Output PolicyNet::ForwardSequence(const Tensor& images, const Tensor& h0,
                                             std::span<const Real> keep) const {
  Tensor features = encoder_(images);
  GruUnroll run = UnrollGru(gru_, features, h0, keep);
  return Heads(run.outputs, features, run.last);
}

GlobalValueNet::GlobalValueNet(ParamSet& params, const std::string& prefix,
                               const ImageShape& input, const NetSizes& sizes,
                               uint64_t seed) {
  encoder_ = ConvEncoder(params, prefix + "/enc", input, sizes, seed);
  v_ = Dense::Create(params, prefix + "/v", sizes.dense, 1, seed);
}

Tensor GlobalValueNet::operator()(const Tensor& images) const {
  Tensor v = v_(encoder_(images));
  return Reshape(v, {v.dim(0)});
}

WorldModel::WorldModel(ParamSet& params, const std::string& prefix, const ImageShape& input,
                       const NetSizes& sizes, uint64_t seed, bool reward_head,
                       ForwardTarget target)
    : has_reward_(reward_head), target_(target) {
  encoder_ = ConvEncoder(params, prefix + "/enc", input, sizes, seed);
  gru_ = GruCell::Create(params, prefix + "/gru", sizes.dense, sizes.hidden, seed);
  const int target_width =
      target == ForwardTarget::kFeatures ? sizes.dense : static_cast<int>(input.size());
  fwd1_ = Dense::Create(params, prefix + "/fwd1", sizes.hidden + kActionCount,
                        sizes.head_hidden, seed);
  fwd2_ = Dense::Create(params, prefix + "/fwd2", sizes.head_hidden, target_width, seed);
  inv1_ = Dense::Create(params, prefix + "/inv1", sizes.hidden + sizes.dense,
                        sizes.head_hidden, seed);
  inv2_ = Dense::Create(params, prefix + "/inv2", sizes.head_hidden, kActionCount, seed);
  if (has_reward_) {
    rew1_ = Dense::Create(params, prefix + "/rew1", sizes.hidden + kActionCount,
                          sizes.head_hidden, seed);
    rew2_ = Dense::Create(params, prefix + "/rew2", sizes.head_hidden, 1, seed);
  }
}

Tensor WorldModel::Encode(const Tensor& images) const { return encoder_(images); }

Tensor WorldModel::Trunk(const Tensor& features, const Tensor& hidden) const {
  return gru_(features, hidden);
}

GruUnroll WorldModel::TrunkSequence(const Tensor& features, const Tensor& h0,
                                    std::span<const Real> keep) const {
  return UnrollGru(gru_, features, h0, keep);
}

Tensor WorldModel::ForwardTargetOf(const Tensor& next_images) const {
  if (target_ == ForwardTarget::kRawObservation) {
    const int batch = next_images.dim(0);
    return Tensor::FromVector({batch, static_cast<int>(next_images.numel() / batch)},
                              std::vector<Real>(next_images.data().begin(),
                                                next_images.data().end()));
  }
  NoGradGuard no_grad;
  return encoder_(next_images).Detach();
}

Tensor WorldModel::PredictNext(const Tensor& trunk, const Tensor& action_onehot) const {
  return fwd2_(Relu(fwd1_(ConcatCols({trunk, action_onehot}))));
}

Tensor WorldModel::InverseLogits(const Tensor& trunk, const Tensor& next_features) const {
  return inv2_(Relu(inv1_(ConcatCols({trunk, next_features}))));
}

Tensor WorldModel::PredictReward(const Tensor& trunk, const Tensor& action_onehot) const {
  SSD_CHECK(has_reward_, "world model has no reward head");
  Tensor r = rew2_(Relu(rew1_(ConcatCols({trunk, action_onehot}))));
  return Reshape(r, {r.dim(0)});
}

MoaHead::MoaHead(ParamSet& params, const std::string& prefix, int feature_width,
                 int num_others, const NetSizes& sizes, uint64_t seed)
    : num_others_(num_others) {
  SSD_CHECK(num_others >= 1, "MOA head needs at least one other agent");
  const int in = feature_width + (num_others + 1) * kActionCount;
  fc1_ = Dense::Create(params, prefix + "/fc1", in, sizes.head_hidden, seed);
  fc2_ = Dense::Create(params, prefix + "/fc2", sizes.head_hidden, sizes.head_hidden, seed);
  gru_ = GruCell::Create(params, prefix + "/gru", sizes.head_hidden, sizes.hidden, seed);
  out_ = Dense::Create(params, prefix + "/out", sizes.hidden, num_others * kActionCount, seed);
}

MoaHead::Output MoaHead::Forward(const Tensor& features, const Tensor& prev_actions,
                                 const Tensor& self_action, const Tensor& hidden) const {
  SSD_CHECK(prev_actions.rank() == 2 && prev_actions.dim(1) == num_others_ * kActionCount,
            "MOA previous-action width");
  SSD_CHECK(self_action.rank() == 2 && self_action.dim(1) == kActionCount,
            "MOA self-action width");
  Tensor x = Relu(fc2_(Relu(fc1_(ConcatCols({features, prev_actions, self_action})))));
  Output out;
  out.hidden = gru_(x, hidden);
  out.logits = out_(out.hidden);
  return out;
}

MoaHead::Output MoaHead::ForwardSequence(const Tensor& features, const Tensor& prev_actions,
                                         const Tensor& self_action, const Tensor& h0,
                                         std::span<const Real> keep) const {
  Tensor x = Relu(fc2_(Relu(fc1_(ConcatCols({features, prev_actions, self_action})))));
  GruUnroll run = UnrollGru(gru_, x, h0, keep);
  return {out_(run.outputs), run.last};
}

}  // namespace ssdlab::nn
