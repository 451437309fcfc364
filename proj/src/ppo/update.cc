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

#include "ssdlab/ppo/update.h"

#include <algorithm>
#include <cmath>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"
#include "ssdlab/nn/ops.h"
#include "ssdlab/ppo/gae.h"
#include "ssdlab/rewards/icm.h"
#include "ssdlab/rewards/influence.h"

namespace ssdlab::ppo {

using nn::Tensor;

UpdateTargets ComputeTargets(const RolloutBuffer& buffer, const PpoConfig& cfg, bool normalize) {
  UpdateTargets out;
  std::vector<double> all;
  for (const auto& agent : buffer.agents) {
    std::vector<double> rewards, values;
    std::vector<uint8_t> dones;
    for (const auto& tr : agent.steps) {
      rewards.push_back(tr.shaped);
      values.push_back(tr.step.value);
      dones.push_back(tr.done ? 1 : 0);
    }
    GaeResult g = ComputeGae(rewards, values, dones, agent.bootstrap, cfg.gamma, cfg.gae_lambda);
    all.insert(all.end(), g.advantages.begin(), g.advantages.end());
    out.advantages.push_back(std::move(g.advantages));
    out.returns.push_back(std::move(g.returns));
  }
  if (normalize) {
    NormalizeAdvantages(all);
    size_t pos = 0;
    for (auto& a : out.advantages) {
      std::copy(all.begin() + pos, all.begin() + pos + a.size(), a.begin());
      pos += a.size();
    }
  }
  return out;
}

namespace {

struct Chunk {
  int agent = 0;
  int start = 0;
  int length = 0;
};

// A time-major padded batch of chunks: row t * B + c is step t of chunk c.
struct Minibatch {
  int batch = 0;
  int steps = 0;
  int valid = 0;
  std::vector<uint8_t> obs, global_obs, next_obs;
  std::vector<double> h_policy, h_wm, h_moa;
  std::vector<double> keep, mask, old_log_prob, advantages, returns, extrinsic;
  std::vector<int> actions;         // 0 on padding
  std::vector<int> padded_actions;  // -1 on padding
  std::vector<int> moa_prev, moa_target;

  int rows() const { return batch * steps; }
};

Minibatch Assemble(const Population& pop, const RolloutBuffer& buffer,
                   const UpdateTargets& targets, std::span<const Chunk> chunks) {
  const auto& cfg = pop.config();
  const auto& brain = pop.brain_for_agent(chunks[0].agent);
  const int peers = pop.num_agents() - 1;
  Minibatch mb;
  mb.batch = static_cast<int>(chunks.size());
  for (const auto& c : chunks) mb.steps = std::max(mb.steps, c.length);
  const int n = mb.rows();
  const size_t obs_size = cfg.obs_shape.size();
  mb.obs.assign(n * obs_size, 0);
  if (brain.critic) mb.global_obs.assign(n * cfg.global_shape.size(), 0);
  if (brain.world_model) mb.next_obs.assign(n * obs_size, 0);
  mb.keep.assign(n, 1.0);
  mb.mask.assign(n, 0.0);
  mb.old_log_prob.assign(n, 0.0);
  mb.advantages.assign(n, 0.0);
  mb.returns.assign(n, 0.0);
  mb.extrinsic.assign(n, 0.0);
  mb.actions.assign(n, 0);
  mb.padded_actions.assign(n, -1);
  if (brain.moa) {
    mb.moa_prev.assign(static_cast<size_t>(n) * peers, -1);
    mb.moa_target.assign(static_cast<size_t>(n) * peers, -1);
  }
  for (int c = 0; c < mb.batch; ++c) {
    const Chunk& ch = chunks[c];
    const auto& steps = buffer.agents[ch.agent].steps;
    const AgentStep& first = steps[ch.start].step;
    mb.h_policy.insert(mb.h_policy.end(), first.h_policy.begin(), first.h_policy.end());
    mb.h_wm.insert(mb.h_wm.end(), first.h_wm.begin(), first.h_wm.end());
    mb.h_moa.insert(mb.h_moa.end(), first.h_moa.begin(), first.h_moa.end());
    for (int t = 0; t < ch.length; ++t) {
      const int r = t * mb.batch + c;
      const Transition& tr = steps[ch.start + t];
      const AgentStep& s = tr.step;
      std::copy(s.obs.begin(), s.obs.end(), mb.obs.begin() + r * obs_size);
      if (brain.critic) {
        std::copy(s.global_obs.begin(), s.global_obs.end(),
                  mb.global_obs.begin() + r * cfg.global_shape.size());
      }
      if (brain.world_model) {
        std::copy(s.next_obs.begin(), s.next_obs.end(), mb.next_obs.begin() + r * obs_size);
      }
      mb.keep[r] = (t > 0 && s.episode_start) ? 0.0 : 1.0;
      mb.mask[r] = 1.0;
      mb.old_log_prob[r] = s.log_prob;
      mb.advantages[r] = targets.advantages[ch.agent][ch.start + t];
      mb.returns[r] = targets.returns[ch.agent][ch.start + t];
      mb.extrinsic[r] = tr.extrinsic;
      mb.actions[r] = s.action;
      mb.padded_actions[r] = s.action;
      if (brain.moa) {
        std::copy(s.moa_prev.begin(), s.moa_prev.end(), mb.moa_prev.begin() + r * peers);
        std::copy(s.moa_target.begin(), s.moa_target.end(), mb.moa_target.begin() + r * peers);
      }
      ++mb.valid;
    }
  }
  return mb;
}

Tensor Vec(const std::vector<double>& v) {
  return Tensor::FromVector({static_cast<int>(v.size())}, v);
}

Tensor Mat(const std::vector<double>& v, int rows) {
  return Tensor::FromVector({rows, static_cast<int>(v.size()) / rows}, v);
}

// Masked mean of a [N] tensor.
Tensor MaskedMean(const Tensor& x, const Tensor& mask, int valid) {
  return nn::Scale(nn::Sum(nn::Mul(x, mask)), 1.0 / valid);
}

struct LossResult {
  Tensor total;
  MinibatchStats stats;
};

LossResult PolicyLoss(const Population& pop, const Population::Brain& brain, const Minibatch& mb,
                      const PpoConfig& cfg) {
  const auto& pcfg = pop.config();
  const int n = mb.rows();
  const Tensor mask = Vec(mb.mask);
  const Tensor images = nn::ImageTensor(pcfg.obs_shape, n, mb.obs);
  const auto out = brain.policy.ForwardSequence(images, Mat(mb.h_policy, mb.batch), mb.keep);
  const Tensor log_prob = nn::GatherCols(nn::LogSoftmax(out.logits), mb.actions);
  const Tensor ratio = nn::Exp(nn::Sub(log_prob, Vec(mb.old_log_prob)));
  const Tensor adv = Vec(mb.advantages);
  const Tensor surrogate =
      nn::Minimum(nn::Mul(ratio, adv),
                  nn::Mul(nn::Clamp(ratio, 1.0 - cfg.clip_ratio, 1.0 + cfg.clip_ratio), adv));
  const Tensor policy_loss = nn::Scale(MaskedMean(surrogate, mask, mb.valid), -1.0);
  const Tensor values =
      brain.critic ? (*brain.critic)(nn::ImageTensor(pcfg.global_shape, n, mb.global_obs))
                   : out.value;
  const Tensor value_loss = MaskedMean(nn::Square(nn::Sub(values, Vec(mb.returns))), mask, mb.valid);
  const Tensor entropy = MaskedMean(nn::Entropy(out.logits), mask, mb.valid);
  Tensor total = nn::Add(nn::Add(policy_loss, nn::Scale(value_loss, cfg.value_coef)),
                         nn::Scale(entropy, -cfg.entropy_coef));

  LossResult res;
  if (brain.moa) {
    const int peers = brain.moa->num_others();
    const Tensor prev = nn::Reshape(nn::OneHotRows(mb.moa_prev, nn::kActionCount),
                                    {n, peers * nn::kActionCount});
    const Tensor self = nn::OneHotRows(mb.padded_actions, nn::kActionCount);
    const auto moa_out = brain.moa->ForwardSequence(out.features, prev, self,
                                                    Mat(mb.h_moa, mb.batch), mb.keep);
    const Tensor moa_loss =
        nn::Scale(nn::Sum(rewards::MoaLoss(moa_out.logits, mb.moa_target)), 1.0 / mb.valid);
    total = nn::Add(total, nn::Scale(moa_loss, pcfg.reward.moa_loss_weight));
    res.stats.moa_loss = moa_loss.item();
  }

  MinibatchStats& s = res.stats;
  s.samples = mb.valid;
  s.policy_loss = policy_loss.item();
  s.value_loss = value_loss.item();
  s.entropy = entropy.item();
  double unclipped = 0, clipped = 0, kl = 0, max_dev = 0;
  for (int r = 0; r < n; ++r) {
    if (mb.mask[r] == 0) continue;
    const double q = ratio.data()[r];
    unclipped += q * mb.advantages[r];
    if (std::abs(q - 1.0) > cfg.clip_ratio) clipped += 1;
    kl += (q - 1.0) - std::log(q);
    max_dev = std::max(max_dev, std::abs(q - 1.0));
  }
  s.policy_loss_unclipped = -unclipped / mb.valid;
  s.clip_fraction = clipped / mb.valid;
  s.approx_kl = kl / mb.valid;
  s.max_abs_ratio_deviation = max_dev;
  res.total = total;
  return res;
}

Tensor WorldModelLoss(const Population& pop, const Population::Brain& brain, const Minibatch& mb) {
  const auto& pcfg = pop.config();
  const auto& wm = *brain.world_model;
  const int n = mb.rows();
  const Tensor mask = Vec(mb.mask);
  const Tensor trunk =
      wm.TrunkSequence(wm.Encode(nn::ImageTensor(pcfg.obs_shape, n, mb.obs)),
                       Mat(mb.h_wm, mb.batch), mb.keep)
          .outputs;
  const auto icm = rewards::ComputeIcmTrainingLosses(wm, trunk, mb.padded_actions,
                                             nn::ImageTensor(pcfg.obs_shape, n, mb.next_obs));
  Tensor loss = nn::Add(MaskedMean(icm.forward, mask, mb.valid),
                        nn::Scale(nn::Sum(icm.inverse),
                                  pcfg.reward.icm_inverse_weight / mb.valid));
  if (wm.has_reward_head()) {
    loss = nn::Add(loss, MaskedMean(rewards::ComputeRewardLoss(wm, trunk, mb.padded_actions,
                                                               mb.extrinsic),
                                    mask, mb.valid));
  }
  return loss;
}

// Backpropagates `loss` and steps `params`. Returns false on a non-finite
// loss or gradient, leaving the parameters untouched.
bool Optimize(Tensor& loss, nn::ParamSet& params, const nn::AdamConfig& adam, double* grad_norm,
              std::string* reason) {
  if (!std::isfinite(loss.item())) {
    *reason = "non-finite loss";
    return false;
  }
  loss.Backward();
  const double norm = params.GradNorm();
  *grad_norm = norm;
  if (!std::isfinite(norm)) {
    params.ZeroGrad();
    *reason = "non-finite gradient";
    return false;
  }
  nn::AdamStep(params, adam);
  return true;
}

void Accumulate(UpdateReport& report) {
  double total = 0;
  for (const auto& m : report.minibatches) total += m.samples;
  if (total == 0) return;
  for (const auto& m : report.minibatches) {
    const double w = m.samples / total;
    report.policy_loss += w * m.policy_loss;
    report.policy_loss_unclipped += w * m.policy_loss_unclipped;
    report.value_loss += w * m.value_loss;
    report.entropy += w * m.entropy;
    report.clip_fraction += w * m.clip_fraction;
    report.approx_kl += w * m.approx_kl;
    report.moa_loss += w * m.moa_loss;
    report.world_model_loss += w * m.world_model_loss;
  }
}

}  // namespace

UpdateReport PpoUpdate(Population& pop, const RolloutBuffer& buffer, const UpdateTargets& targets,
                       const PpoConfig& cfg, const UpdateOptions& options) {
  cfg.Validate();
  SSD_CHECK(static_cast<int>(buffer.agents.size()) == pop.num_agents(),
            "buffer and population agent counts differ");
  SSD_CHECK(targets.advantages.size() == buffer.agents.size(), "targets do not match the buffer");
  std::vector<int> brains = options.brains;
  if (brains.empty()) {
    for (int b = 0; b < pop.num_brains(); ++b) brains.push_back(b);
  }

  UpdateReport report;
  for (int b : brains) {
    auto& brain = pop.brain(b);
    std::vector<Chunk> chunks;
    for (int agent : pop.agents_of(b)) {
      const int len = static_cast<int>(buffer.agents[agent].steps.size());
      for (int start = 0; start < len; start += cfg.bptt_chunk) {
        chunks.push_back({agent, start, std::min(cfg.bptt_chunk, len - start)});
      }
    }
    if (chunks.empty()) continue;
    const int groups = std::min<int>(cfg.minibatch_count, static_cast<int>(chunks.size()));
    const int passes = std::max(cfg.epochs_per_update, 1);
    for (int epoch = 0; epoch < passes; ++epoch) {
      CounterRng rng(HashKey(pop.config().seed, RngPurpose::kMinibatch,
                             {options.update_index, static_cast<uint64_t>(epoch),
                              static_cast<uint64_t>(b)}));
      const std::vector<int> order = RandomPermutation(static_cast<int>(chunks.size()), rng);
      for (int g = 0; g < groups; ++g) {
        const size_t lo = order.size() * g / groups;
        const size_t hi = order.size() * (g + 1) / groups;
        std::vector<Chunk> picked;
        for (size_t p = lo; p < hi; ++p) picked.push_back(chunks[order[p]]);
        const Minibatch mb = Assemble(pop, buffer, targets, picked);

        if (cfg.epochs_per_update == 0) {
          nn::NoGradGuard no_grad;
          LossResult res = PolicyLoss(pop, brain, mb, cfg);
          if (brain.world_model) res.stats.world_model_loss = WorldModelLoss(pop, brain, mb).item();
          res.stats.brain = b;
          report.minibatches.push_back(res.stats);
          continue;
        }

        LossResult res = PolicyLoss(pop, brain, mb, cfg);
        res.stats.brain = b;
        res.stats.epoch = epoch;
        if (!Optimize(res.total, brain.params, cfg.adam, &res.stats.grad_norm,
                      &report.abort_reason)) {
          report.aborted = true;
          report.minibatches.push_back(res.stats);
          Accumulate(report);
          return report;
        }
        ++report.optimizer_steps;
        if (brain.world_model) {
          Tensor wm_loss = WorldModelLoss(pop, brain, mb);
          res.stats.world_model_loss = wm_loss.item();
          double wm_norm = 0;
          if (!Optimize(wm_loss, brain.wm_params, cfg.world_model_adam, &wm_norm,
                        &report.abort_reason)) {
            report.aborted = true;
            report.abort_reason = "world model: " + report.abort_reason;
            report.minibatches.push_back(res.stats);
            Accumulate(report);
            return report;
          }
        }
        report.minibatches.push_back(res.stats);
      }
    }
  }
  Accumulate(report);
  return report;
}

}  // namespace ssdlab::ppo
