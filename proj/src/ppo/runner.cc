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

#include "ssdlab/ppo/runner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"
#include "ssdlab/grid/observation.h"
#include "ssdlab/nn/ops.h"
#include "ssdlab/rewards/icm.h"
#include "ssdlab/rewards/influence.h"
#include "ssdlab/rewards/svo.h"

namespace ssdlab::ppo {

using rewards::RewardVariant;

namespace {

nn::Tensor RowsTensor(const std::vector<std::vector<double>>& rows, const std::vector<int>& which) {
  const int width = static_cast<int>(rows.at(which.at(0)).size());
  std::vector<double> data;
  data.reserve(static_cast<size_t>(width) * which.size());
  for (int i : which) data.insert(data.end(), rows[i].begin(), rows[i].end());
  return nn::Tensor::FromVector({static_cast<int>(which.size()), width}, std::move(data));
}

nn::Tensor ImagesTensor(const nn::ImageShape& shape,
                        const std::vector<std::vector<uint8_t>>& images,
                        const std::vector<int>& which) {
  std::vector<uint8_t> cells;
  cells.reserve(shape.size() * which.size());
  for (int i : which) cells.insert(cells.end(), images[i].begin(), images[i].end());
  return nn::ImageTensor(shape, static_cast<int>(which.size()), cells);
}

std::vector<double> Row(const nn::Tensor& t, int r) {
  const int width = t.dim(1);
  auto d = t.data().subspan(static_cast<size_t>(r) * width, width);
  return {d.begin(), d.end()};
}

}  // namespace

int SampleFromLogits(std::span<const double> logits, double u) {
  const auto probs = nn::Softmax(logits);
  double cumulative = 0;
  for (size_t a = 0; a < probs.size(); ++a) {
    cumulative += probs[a];
    if (u < cumulative) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size()) - 1;
}

double LogProbOf(std::span<const double> logits, int action) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : logits) mx = std::max(mx, x);
  double s = 0;
  for (double x : logits) s += std::exp(x - mx);
  return logits[action] - (mx + std::log(s));
}

Runner::Runner(const Population& population, const envs::Environment& env,
               ActionSelection selection)
    : population_(population), env_(env), selection_(selection) {}

void Runner::BeginEpisode(uint64_t episode_seed, uint64_t action_key) {
  const int k = population_.num_agents();
  state_ = env_.Reset(episode_seed, k);
  action_key_ = action_key;
  h_policy_.assign(k, {});
  h_wm_.assign(k, {});
  h_moa_.assign(k, {});
  for (int i = 0; i < k; ++i) {
    const auto& brain = population_.brain_for_agent(i);
    h_policy_[i].assign(brain.policy.hidden_size(), 0.0);
    if (brain.world_model) h_wm_[i].assign(brain.world_model->hidden_size(), 0.0);
    if (brain.moa) h_moa_[i].assign(brain.moa->hidden_size(), 0.0);
  }
  prev_actions_.assign(k, -1);
  cumulative_returns_.assign(k, 0.0);
  stats_ = metrics::EpisodeStats{};
  stats_.agents.assign(k, {});
  stats_.seed = episode_seed;
  active_ = true;
}

Runner::PolicyPass Runner::RunPolicies(const std::vector<std::vector<uint8_t>>& obs,
                                       const std::vector<std::vector<uint8_t>>& global_obs) const {
  const int k = population_.num_agents();
  PolicyPass pass;
  pass.logits.resize(k);
  pass.values.resize(k);
  pass.next_hidden.resize(k);
  pass.features.resize(k);
  const auto& cfg = population_.config();
  for (int b = 0; b < population_.num_brains(); ++b) {
    const auto& brain = population_.brain(b);
    const std::vector<int> agents = population_.agents_of(b);
    auto out = brain.policy.Forward(ImagesTensor(cfg.obs_shape, obs, agents),
                                    RowsTensor(h_policy_, agents));
    nn::Tensor values = brain.critic
                            ? (*brain.critic)(ImagesTensor(cfg.global_shape, global_obs, agents))
                            : out.value;
    for (size_t r = 0; r < agents.size(); ++r) {
      const int i = agents[r];
      pass.logits[i] = Row(out.logits, static_cast<int>(r));
      pass.values[i] = values.data()[r];
      pass.next_hidden[i] = Row(out.hidden, static_cast<int>(r));
      pass.features[i] = Row(out.features, static_cast<int>(r));
    }
  }
  return pass;
}

JointStep Runner::Step(bool record_training_data) {
  SSD_CHECK(active_ && !state_.done(), "Step outside an active episode");
  nn::NoGradGuard no_grad;
  const int k = population_.num_agents();
  const auto& cfg = population_.config();
  const RewardVariant variant = cfg.reward.variant;
  const double alpha = cfg.reward.alpha;
  const bool centralized = population_.brain(0).critic.has_value();

  std::vector<std::vector<uint8_t>> obs(k), global_obs(centralized ? k : 0);
  for (int i = 0; i < k; ++i) {
    obs[i] = grid::Observe(state_, i).cells;
    if (centralized) global_obs[i] = grid::ObserveGlobal(state_, i).cells;
  }
  PolicyPass pass = RunPolicies(obs, global_obs);

  JointStep js;
  js.t = state_.t;
  js.actions.resize(k);
  js.intrinsic.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const double u = KeyedUniform(action_key_, RngPurpose::kActionSample,
                                  static_cast<uint64_t>(state_.t), static_cast<uint64_t>(i));
    if (scripted_) {
      js.actions[i] = scripted_(state_, i, u);
      SSD_CHECK(js.actions[i] >= 0 && js.actions[i] < nn::kActionCount, "scripted action");
    } else if (selection_ == ActionSelection::kArgmax) {
      js.actions[i] = static_cast<int>(std::max_element(pass.logits[i].begin(), pass.logits[i].end()) -
                                       pass.logits[i].begin());
    } else {
      js.actions[i] = SampleFromLogits(pass.logits[i], u);
    }
  }
  if (record_training_data) {
    js.agents.resize(k);
    for (int i = 0; i < k; ++i) {
      AgentStep& a = js.agents[i];
      a.obs = obs[i];
      if (centralized) a.global_obs = global_obs[i];
      a.action = js.actions[i];
      a.log_prob = LogProbOf(pass.logits[i], a.action);
      a.value = pass.values[i];
      a.h_policy = h_policy_[i];
      a.h_wm = h_wm_[i];
      a.h_moa = h_moa_[i];
      a.episode_start = state_.t == 0;
    }
  }

  if (variant == RewardVariant::kInfluence) {
    for (int i = 0; i < k; ++i) {
      const auto& brain = population_.brain_for_agent(i);
      const std::vector<int> seen = grid::VisibleAgents(state_, i);
      std::vector<int> prev, target;
      std::unique_ptr<bool[]> visible(new bool[k - 1]);
      int slot = 0;
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        const bool vis = std::find(seen.begin(), seen.end(), j) != seen.end();
        visible[slot++] = vis;
        prev.push_back(vis ? prev_actions_[j] : -1);
        target.push_back(vis ? js.actions[j] : -1);
      }
      nn::Tensor features = nn::Tensor::FromVector({1, static_cast<int>(pass.features[i].size())},
                                                   pass.features[i]);
      nn::Tensor prev_t = nn::Reshape(nn::OneHotRows(prev, nn::kActionCount),
                                      {1, (k - 1) * nn::kActionCount});
      nn::Tensor h = nn::Tensor::FromVector({1, static_cast<int>(h_moa_[i].size())}, h_moa_[i]);
      nn::Tensor next_h;
      auto table = rewards::MoaCounterfactuals(*brain.moa, features, prev_t, h, &next_h);
      const auto probs = nn::Softmax(pass.logits[i]);
      js.intrinsic[i] = rewards::InfluenceFromTable(
                            table, probs, js.actions[i],
                            std::span<const bool>(visible.get(), k - 1))
                            .total;
      h_moa_[i] = Row(next_h, js.actions[i]);
      if (record_training_data) {
        js.agents[i].moa_prev = prev;
        js.agents[i].moa_target = target;
      }
    }
  }

  std::vector<grid::Action> joint(k);
  for (int i = 0; i < k; ++i) joint[i] = static_cast<grid::Action>(js.actions[i]);
  grid::StepOutcome outcome = env_.Step(state_, joint);
  js.extrinsic = outcome.rewards;
  js.events = outcome.events;
  js.done = outcome.done;
  for (int i = 0; i < k; ++i) cumulative_returns_[i] += js.extrinsic[i];

  if (variant == RewardVariant::kIcm || variant == RewardVariant::kIcmReward) {
    for (int i = 0; i < k; ++i) {
      const auto& wm = *population_.brain_for_agent(i).world_model;
      std::vector<uint8_t> next = grid::Observe(state_, i).cells;
      nn::Tensor image = nn::ImageTensor(cfg.obs_shape, 1, obs[i]);
      nn::Tensor h = nn::Tensor::FromVector({1, static_cast<int>(h_wm_[i].size())}, h_wm_[i]);
      nn::Tensor trunk = wm.Trunk(wm.Encode(image), h);
      const std::vector<int> action = {js.actions[i]};
      if (variant == RewardVariant::kIcm) {
        nn::Tensor next_image = nn::ImageTensor(cfg.obs_shape, 1, next);
        js.intrinsic[i] = rewards::IntrinsicFromLoss(
            rewards::ComputeIcmLosses(wm, trunk, action, next_image).forward.item());
      } else {
        const std::vector<double> realized = {js.extrinsic[i]};
        js.intrinsic[i] = rewards::IntrinsicFromLoss(
            rewards::ComputeRewardLoss(wm, trunk, action, realized).item());
      }
      h_wm_[i] = Row(trunk, 0);
      if (record_training_data) js.agents[i].next_obs = std::move(next);
    }
  }

  js.shaped.resize(k);
  for (int i = 0; i < k; ++i) {
    if (variant == RewardVariant::kSvo) {
      const auto& basis = cfg.reward.svo_basis == rewards::SvoBasis::kStep ? js.extrinsic
                                                                           : cumulative_returns_;
      std::vector<double> others;
      for (int j = 0; j < k; ++j) {
        if (j != i) others.push_back(basis[j]);
      }
      const double angle = rewards::SvoAngle(basis[i], others);
      // Stored unscaled so that shaped = r_ext + alpha * intrinsic holds.
      js.intrinsic[i] = rewards::SvoShapedReward(0.0, angle, population_.svo_targets()[i], 1.0);
    }
    js.shaped[i] = rewards::ShapedReward(js.extrinsic[i], alpha, js.intrinsic[i]);
  }

  for (int i = 0; i < k; ++i) {
    h_policy_[i] = std::move(pass.next_hidden[i]);
    auto& s = stats_.agents[i];
    s.extrinsic_return += js.extrinsic[i];
    s.intrinsic_return += js.intrinsic[i];
    s.apples_eaten += js.events[i].apples_eaten;
    s.waste_cleaned += js.events[i].waste_cleaned;
    s.tags_fired += js.events[i].tags_fired;
    s.times_tagged += js.events[i].times_tagged;
  }
  prev_actions_ = js.actions;
  stats_.length = state_.t;
  return js;
}

std::vector<double> Runner::BootstrapValues() const {
  SSD_CHECK(active_, "no active episode");
  nn::NoGradGuard no_grad;
  const int k = population_.num_agents();
  const bool centralized = population_.brain(0).critic.has_value();
  std::vector<std::vector<uint8_t>> obs(k), global_obs(centralized ? k : 0);
  for (int i = 0; i < k; ++i) {
    obs[i] = grid::Observe(state_, i).cells;
    if (centralized) global_obs[i] = grid::ObserveGlobal(state_, i).cells;
  }
  return RunPolicies(obs, global_obs).values;
}

RunnerSnapshot Runner::Snapshot() const {
  RunnerSnapshot s;
  s.active = active_;
  s.state = state_;
  s.action_key = action_key_;
  s.h_policy = h_policy_;
  s.h_wm = h_wm_;
  s.h_moa = h_moa_;
  s.prev_actions = prev_actions_;
  s.cumulative_returns = cumulative_returns_;
  s.stats = stats_;
  return s;
}

void Runner::Restore(const RunnerSnapshot& s) {
  const int k = population_.num_agents();
  SSD_CHECK(!s.active || (static_cast<int>(s.h_policy.size()) == k &&
                          static_cast<int>(s.prev_actions.size()) == k),
            "runner snapshot population size mismatch");
  active_ = s.active;
  state_ = s.state;
  state_.map = env_.map_ptr();
  action_key_ = s.action_key;
  h_policy_ = s.h_policy;
  h_wm_ = s.h_wm;
  h_moa_ = s.h_moa;
  prev_actions_ = s.prev_actions;
  cumulative_returns_ = s.cumulative_returns;
  stats_ = s.stats;
}

}  // namespace ssdlab::ppo
