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

#ifndef SSDLAB_NN_NETWORKS_H_
#define SSDLAB_NN_NETWORKS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssdlab/nn/layers.h"

namespace ssdlab::nn {

inline constexpr int kActionCount = 9;

struct NetSizes {
  int conv_filters = 16;
  int kernel = 3;
  int dense = 64;        // encoder output width
  int hidden = 64;       // GRU width of policy, world model and MOA
  int head_hidden = 64;  // MLP width inside world-model and MOA heads

  void Validate() const;
};

struct ImageShape {
  int height = 15;
  int width = 15;
  int channels = 8;

  int64_t size() const { return static_cast<int64_t>(height) * width * channels; }
};

// Converts `batch` consecutive HWC uint8 images into a [B,H,W,C] tensor.
Tensor ImageTensor(const ImageShape& shape, int batch, std::span<const uint8_t> cells);

// conv -> relu -> conv -> relu -> flatten -> dense -> relu.
class ConvEncoder {
 public:
  ConvEncoder() = default;
  ConvEncoder(ParamSet& params, const std::string& prefix, const ImageShape& input,
              const NetSizes& sizes, uint64_t seed);

  Tensor operator()(const Tensor& images) const;
  const ImageShape& input() const { return input_; }
  int out() const { return fc_.out(); }

 private:
  ImageShape input_;
  Conv c1_, c2_;
  Dense fc_;
};

// Encoder -> GRU -> (policy logits, value).
class PolicyNet {
 public:
  struct Output {
    Tensor logits;    // [B, 9]
    Tensor value;     // [B] (undefined without a local value head)
    Tensor hidden;    // [B, H]
    Tensor features;  // [B, D] encoder output, reused by an attached MOA head
  };

  PolicyNet() = default;
  PolicyNet(ParamSet& params, const std::string& prefix, const ImageShape& input,
            const NetSizes& sizes, uint64_t seed, bool local_value_head = true);

  Output Forward(const Tensor& images, const Tensor& hidden) const;

  // Unrolls over a time-major batch: row t*B + b of `images` is step t of
  // sequence b. keep[t*B + b] = 0 zeroes the carried state before step t.
  Output ForwardSequence(const Tensor& images, const Tensor& h0,
                         std::span<const Real> keep) const;

  Tensor InitialHidden(int batch) const { return Tensor::Zeros({batch, hidden_size()}); }
  int hidden_size() const { return gru_.hidden(); }
  bool has_value_head() const { return has_value_; }
  const ConvEncoder& encoder() const { return encoder_; }

 private:
  Output Heads(const Tensor& h, Tensor features, Tensor hidden) const;

  ConvEncoder encoder_;
  GruCell gru_;
  Dense pi_;
  Dense v_;
  bool has_value_ = true;
};

// Centralized critic over the full-map observation.
class GlobalValueNet {
 public:
  GlobalValueNet() = default;
  GlobalValueNet(ParamSet& params, const std::string& prefix, const ImageShape& input,
                 const NetSizes& sizes, uint64_t seed);

  Tensor operator()(const Tensor& images) const;  // [B]
  const ImageShape& input() const { return encoder_.input(); }

 private:
  ConvEncoder encoder_;
  Dense v_;
};

enum class ForwardTarget { kFeatures, kRawObservation };

// Curiosity world model: its own encoder and GRU trunk with forward, inverse
// and optional reward heads.
class WorldModel {
 public:
  WorldModel() = default;
  WorldModel(ParamSet& params, const std::string& prefix, const ImageShape& input,
             const NetSizes& sizes, uint64_t seed, bool reward_head,
             ForwardTarget target = ForwardTarget::kFeatures);

  Tensor Encode(const Tensor& images) const;
  Tensor Trunk(const Tensor& features, const Tensor& hidden) const;
  // Time-major unroll of the trunk; see UnrollGru.
  GruUnroll TrunkSequence(const Tensor& features, const Tensor& h0,
                          std::span<const Real> keep) const;
  // Target for the forward head; detached from the graph.
  Tensor ForwardTargetOf(const Tensor& next_images) const;
  Tensor PredictNext(const Tensor& trunk, const Tensor& action_onehot) const;
  Tensor InverseLogits(const Tensor& trunk, const Tensor& next_features) const;
  Tensor PredictReward(const Tensor& trunk, const Tensor& action_onehot) const;  // [B]

  Tensor InitialHidden(int batch) const { return Tensor::Zeros({batch, hidden_size()}); }
  int hidden_size() const { return gru_.hidden(); }
  bool has_reward_head() const { return has_reward_; }
  ForwardTarget target() const { return target_; }

 private:
  ConvEncoder encoder_;
  GruCell gru_;
  Dense fwd1_, fwd2_, inv1_, inv2_, rew1_, rew2_;
  bool has_reward_ = false;
  ForwardTarget target_ = ForwardTarget::kFeatures;
};

// Model of other agents. Consumes the policy encoder's features, the peers'
// previous actions (one-hot, zeros for invisible peers) and the self action.
class MoaHead {
 public:
  struct Output {
    Tensor logits;  // [B, (K-1)*9]
    Tensor hidden;  // [B, Hm]
  };

  MoaHead() = default;
  MoaHead(ParamSet& params, const std::string& prefix, int feature_width, int num_others,
          const NetSizes& sizes, uint64_t seed);

  Output Forward(const Tensor& features, const Tensor& prev_actions,
                 const Tensor& self_action, const Tensor& hidden) const;
  // Time-major unroll; `hidden` of the result is the last state.
  Output ForwardSequence(const Tensor& features, const Tensor& prev_actions,
                         const Tensor& self_action, const Tensor& h0,
                         std::span<const Real> keep) const;

  Tensor InitialHidden(int batch) const { return Tensor::Zeros({batch, hidden_size()}); }
  int hidden_size() const { return gru_.hidden(); }
  int num_others() const { return num_others_; }

 private:
  Dense fc1_, fc2_;
  GruCell gru_;
  Dense out_;
  int num_others_ = 0;
};

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_NETWORKS_H_
