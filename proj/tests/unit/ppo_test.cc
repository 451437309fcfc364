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

#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include <gtest/gtest.h>

#include "ssdlab/common/error.h"
#include "ssdlab/envs/environment.h"
#include "ssdlab/grid/types.h"
#include "ssdlab/nn/ops.h"
#include "ssdlab/ppo/gae.h"
#include "ssdlab/ppo/population.h"
#include "ssdlab/ppo/rollout.h"
#include "ssdlab/ppo/runner.h"
#include "ssdlab/ppo/update.h"

namespace ssdlab::ppo {
namespace {

using rewards::RewardVariant;

nn::NetSizes TinySizes() { return {4, 3, 16, 16, 16}; }

envs::EnvConfig SmallEnv(const std::string& name, int episode_len) {
  envs::EnvConfig cfg = envs::DefaultEnvConfig(name);
  cfg.cleanup.episode_len = episode_len;
  cfg.harvest.episode_len = episode_len;
  return cfg;
}

PopulationConfig PopConfig(const envs::Environment& env, int k, RewardVariant variant,
                           double alpha, bool shared = false, uint64_t seed = 3) {
  PopulationConfig cfg;
  cfg.num_agents = k;
  cfg.shared_parameters = shared;
  cfg.sizes = TinySizes();
  cfg.global_shape = {env.map().height(), env.map().width(), 8};
  cfg.reward.variant = variant;
  cfg.reward.alpha = alpha;
  cfg.seed = seed;
  return cfg;
}

PpoConfig SmallPpo() {
  PpoConfig cfg;
  cfg.rollout_horizon = 32;
  cfg.bptt_chunk = 8;
  cfg.adam.lr = 1e-3;
  return cfg;
}

// ---- GAE ---------------------------------------------------------------

TEST(GaeTest, LambdaZeroIsOneStepTd) {
  const std::vector<double> r = {0.5, -1.0, 2.0, 0.25};
  const std::vector<double> v = {0.1, 0.7, -0.3, 0.9};
  const std::vector<uint8_t> d = {0, 1, 0, 0};
  const double gamma = 0.9, boot = 0.4;
  GaeResult g = ComputeGae(r, v, d, boot, gamma, 0.0);
  for (size_t t = 0; t < r.size(); ++t) {
    const double next = t + 1 < r.size() ? v[t + 1] : boot;
    EXPECT_DOUBLE_EQ(g.advantages[t], r[t] + gamma * next * (1 - d[t]) - v[t]) << t;
    EXPECT_DOUBLE_EQ(g.returns[t], g.advantages[t] + v[t]);
  }
}

TEST(GaeTest, ZeroRewardsAndValuesGiveZeroAdvantages) {
  std::vector<double> zeros(7, 0.0);
  std::vector<uint8_t> d(7, 0);
  d[3] = 1;
  GaeResult g = ComputeGae(zeros, zeros, d, 0.0, 0.99, 0.95);
  for (double a : g.advantages) EXPECT_EQ(a, 0.0);
}

TEST(GaeTest, UndiscountedMonteCarloReturns) {
  const std::vector<double> r = {1, 1, 1};
  const std::vector<double> v = {0, 0, 0};
  const std::vector<uint8_t> d = {0, 0, 1};
  GaeResult g = ComputeGae(r, v, d, 123.0, 1.0, 1.0);
  EXPECT_EQ(g.advantages, (std::vector<double>{3, 2, 1}));
}

TEST(GaeTest, EpisodeBoundaryStopsPropagation) {
  const std::vector<double> r = {1, 1, 5, 5};
  const std::vector<double> v = {0, 0, 0, 0};
  const std::vector<uint8_t> d = {0, 1, 0, 0};
  GaeResult g = ComputeGae(r, v, d, 0.0, 1.0, 1.0);
  EXPECT_EQ(g.advantages, (std::vector<double>{2, 1, 10, 5}));
}

TEST(GaeTest, MismatchedLengthsThrow) {
  std::vector<double> a(3), b(2);
  std::vector<uint8_t> d(3);
  EXPECT_THROW(ComputeGae(a, b, d, 0, 0.9, 0.9), ContractViolation);
}

TEST(GaeTest, NormalizationGivesZeroMeanUnitStd) {
  std::vector<double> a = {1, 4, -2, 7, 0.5, 3};
  NormalizeAdvantages(a);
  const double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
  double var = 0;
  for (double x : a) var += (x - mean) * (x - mean);
  EXPECT_NEAR(mean, 0.0, 1e-12);
  EXPECT_NEAR(std::sqrt(var / a.size()), 1.0, 1e-6);
  std::vector<double> constant(4, 2.5);
  NormalizeAdvantages(constant);
  for (double x : constant) EXPECT_EQ(x, 0.0);
}

TEST(PpoConfigTest, RejectsInvalidCoefficients) {
  PpoConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.gamma = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = PpoConfig{};
  cfg.gae_lambda = 1.5;
  EXPECT_THROW(cfg.Validate(), ConfigError);
  cfg = PpoConfig{};
  cfg.clip_ratio = 0;
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

// ---- Sampling helpers --------------------------------------------------

TEST(RunnerTest, SampleFromLogitsFollowsCdf) {
  const std::vector<double> logits = {0.0, std::log(3.0)};  // probs 0.25, 0.75
  EXPECT_EQ(SampleFromLogits(logits, 0.0), 0);
  EXPECT_EQ(SampleFromLogits(logits, 0.2499), 0);
  EXPECT_EQ(SampleFromLogits(logits, 0.2501), 1);
  EXPECT_EQ(SampleFromLogits(logits, 0.999999), 1);
  EXPECT_NEAR(LogProbOf(logits, 1), std::log(0.75), 1e-12);
}

// ---- Rollout collection ------------------------------------------------

TEST(RolloutTest, ZeroAlphaLeavesExtrinsicRewardsUnchanged) {
  envs::Environment env(SmallEnv("cleanup_small", 40));
  for (RewardVariant v : {RewardVariant::kNone, RewardVariant::kIcm, RewardVariant::kIcmReward,
                          RewardVariant::kInfluence, RewardVariant::kSvo}) {
    Population pop(PopConfig(env, 3, v, 0.0));
    Collector collector(pop, env, 11);
    RolloutBuffer buf = collector.Collect(25);
    for (const auto& agent : buf.agents) {
      for (const auto& tr : agent.steps) {
        EXPECT_EQ(tr.shaped, tr.extrinsic) << rewards::VariantName(v);
      }
    }
  }
}

TEST(RolloutTest, ShapedRewardCombinesIntrinsicWithAlpha) {
  envs::Environment env(SmallEnv("cleanup_small", 40));
  for (RewardVariant v : {RewardVariant::kIcm, RewardVariant::kIcmReward,
                          RewardVariant::kInfluence, RewardVariant::kSvo}) {
    Population pop(PopConfig(env, 3, v, 0.3));
    Collector collector(pop, env, 5);
    RolloutBuffer buf = collector.Collect(20);
    double total_intrinsic = 0;
    for (const auto& agent : buf.agents) {
      for (const auto& tr : agent.steps) {
        EXPECT_DOUBLE_EQ(tr.shaped, tr.extrinsic + 0.3 * tr.intrinsic);
        EXPECT_TRUE(std::isfinite(tr.intrinsic));
        if (v == RewardVariant::kSvo) EXPECT_LE(tr.intrinsic, 0.0);
        if (v != RewardVariant::kSvo) EXPECT_GE(tr.intrinsic, 0.0);
        total_intrinsic += tr.intrinsic;
      }
    }
    if (v == RewardVariant::kIcm) EXPECT_GT(total_intrinsic, 0.0);
  }
}

TEST(RolloutTest, DoNothingOnCleanupEarnsNothing) {
  envs::Environment env(SmallEnv("cleanup_small", 200));
  Population pop(PopConfig(env, 3, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 2);
  collector.runner().set_scripted_policy(
      [](const grid::GridState&, int, double) { return static_cast<int>(grid::Action::kStay); });
  RolloutBuffer buf = collector.Collect(200);
  const auto& state = collector.runner().state();
  EXPECT_EQ(std::count(state.apples.begin(), state.apples.end(), 1), 0);
  for (const auto& agent : buf.agents) {
    for (const auto& tr : agent.steps) EXPECT_EQ(tr.extrinsic, 0.0);
  }
  ASSERT_EQ(buf.finished.size(), 1u);
  EXPECT_EQ(buf.finished[0].PopulationReturn(), 0.0);
}

TEST(RolloutTest, ExtrinsicSumMatchesEpisodeReturn) {
  envs::Environment env(SmallEnv("harvest_small", 60));
  Population pop(PopConfig(env, 2, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 9);
  RolloutBuffer buf = collector.Collect(60);
  ASSERT_EQ(buf.finished.size(), 1u);
  double total = 0;
  for (int i = 0; i < 2; ++i) {
    double sum = 0;
    for (const auto& tr : buf.agents[i].steps) sum += tr.extrinsic;
    EXPECT_DOUBLE_EQ(sum, buf.finished[0].agents[i].extrinsic_return);
    total += sum;
  }
  EXPECT_GT(total, 0.0);  // random agents on Harvest do find apples
  EXPECT_TRUE(buf.agents[0].steps.back().done);
  EXPECT_EQ(buf.agents[0].bootstrap, 0.0);
}

TEST(RolloutTest, EpisodesRestartWithDoneMarkers) {
  envs::Environment env(SmallEnv("harvest_small", 10));
  Population pop(PopConfig(env, 2, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 9);
  RolloutBuffer buf = collector.Collect(25);
  EXPECT_EQ(buf.finished.size(), 2u);
  EXPECT_EQ(collector.episodes_started(), 3);
  for (int t = 0; t < 25; ++t) {
    const auto& tr = buf.agents[1].steps[t];
    EXPECT_EQ(tr.done, t % 10 == 9);
    EXPECT_EQ(tr.step.episode_start, t % 10 == 0);
  }
  EXPECT_NE(buf.agents[0].bootstrap, 0.0);
  EXPECT_NE(buf.finished[0].seed, buf.finished[1].seed);
}

TEST(RolloutTest, StoredLogProbMatchesRecomputation) {
  envs::Environment env(SmallEnv("cleanup_small", 30));
  Population pop(PopConfig(env, 3, RewardVariant::kInfluence, 0.1));
  Collector collector(pop, env, 4);
  RolloutBuffer buf = collector.Collect(45);
  nn::NoGradGuard no_grad;
  for (int i = 0; i < 3; ++i) {
    const auto& policy = pop.brain_for_agent(i).policy;
    const auto& steps = buf.agents[i].steps;
    // Step by step from the stored recurrent state.
    for (const auto& tr : steps) {
      auto out = policy.Forward(
          nn::ImageTensor(pop.config().obs_shape, 1, tr.step.obs),
          nn::Tensor::FromVector({1, static_cast<int>(tr.step.h_policy.size())}, tr.step.h_policy));
      EXPECT_DOUBLE_EQ(LogProbOf(out.logits.data(), tr.step.action), tr.step.log_prob);
    }
    // Full unroll from the first hidden state with episode resets.
    std::vector<uint8_t> cells;
    std::vector<double> keep;
    for (size_t t = 0; t < steps.size(); ++t) {
      cells.insert(cells.end(), steps[t].step.obs.begin(), steps[t].step.obs.end());
      keep.push_back(t > 0 && steps[t].step.episode_start ? 0.0 : 1.0);
    }
    auto out = policy.ForwardSequence(
        nn::ImageTensor(pop.config().obs_shape, static_cast<int>(steps.size()), cells),
        policy.InitialHidden(1), keep);
    for (size_t t = 0; t < steps.size(); ++t) {
      auto row = out.logits.data().subspan(t * nn::kActionCount, nn::kActionCount);
      EXPECT_NEAR(LogProbOf(row, steps[t].step.action), steps[t].step.log_prob, 1e-10);
    }
  }
}

TEST(RolloutTest, CollectionIsDeterministicAndResumable) {
  envs::Environment env(SmallEnv("harvest_small", 20));
  Population pop(PopConfig(env, 2, RewardVariant::kIcm, 0.2));
  Collector a(pop, env, 77);
  a.Collect(13);
  CollectorSnapshot snap = a.Snapshot();
  RolloutBuffer a2 = a.Collect(17);

  Collector b(pop, env, 77);
  b.Restore(snap);
  RolloutBuffer b2 = b.Collect(17);
  for (int i = 0; i < 2; ++i) {
    for (int t = 0; t < 17; ++t) {
      const auto& x = a2.agents[i].steps[t];
      const auto& y = b2.agents[i].steps[t];
      EXPECT_EQ(x.step.action, y.step.action);
      EXPECT_EQ(x.step.obs, y.step.obs);
      EXPECT_EQ(x.shaped, y.shaped);
    }
  }
}

TEST(RolloutTest, SharedCriticReadsGlobalState) {
  envs::Environment env(SmallEnv("cleanup_small", 30));
  Population pop(PopConfig(env, 3, RewardVariant::kNone, 0.0, /*shared=*/true));
  ASSERT_EQ(pop.num_brains(), 1);
  for (int i = 1; i < 3; ++i) EXPECT_EQ(&pop.brain_for_agent(i).params, &pop.brain(0).params);
  EXPECT_FALSE(pop.brain(0).policy.has_value_head());
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(5);
  nn::NoGradGuard no_grad;
  for (int i = 0; i < 3; ++i) {
    for (const auto& tr : buf.agents[i].steps) {
      ASSERT_EQ(static_cast<int64_t>(tr.step.global_obs.size()), pop.config().global_shape.size());
      const double v =
          (*pop.brain(0).critic)(nn::ImageTensor(pop.config().global_shape, 1, tr.step.global_obs))
              .item();
      EXPECT_NEAR(v, tr.step.value, 1e-12);
    }
  }
  // Different agents see the same map but a different self marker.
  EXPECT_NE(buf.agents[0].steps[0].step.global_obs, buf.agents[1].steps[0].step.global_obs);
}

TEST(RolloutTest, IndependentCriticHasNoGlobalState) {
  envs::Environment env(SmallEnv("cleanup_small", 30));
  Population pop(PopConfig(env, 2, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(3);
  EXPECT_TRUE(buf.agents[0].steps[0].step.global_obs.empty());
}

// ---- Updates -----------------------------------------------------------

std::vector<double> Flat(const nn::ParamSet& p) { return p.FlatValues(); }

bool BitsEqual(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST(UpdateTest, ZeroEpochsLeaveParametersUnchanged) {
  envs::Environment env(SmallEnv("cleanup_small", 30));
  Population pop(PopConfig(env, 2, RewardVariant::kIcm, 0.1));
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(16);
  PpoConfig cfg = SmallPpo();
  cfg.epochs_per_update = 0;
  const auto before0 = Flat(pop.brain(0).params);
  const auto before_wm = Flat(pop.brain(0).wm_params);
  UpdateReport r = PpoUpdate(pop, buf, ComputeTargets(buf, cfg), cfg);
  EXPECT_TRUE(BitsEqual(before0, Flat(pop.brain(0).params)));
  EXPECT_TRUE(BitsEqual(before_wm, Flat(pop.brain(0).wm_params)));
  EXPECT_EQ(r.optimizer_steps, 0);
  // A fresh policy is close to uniform.
  EXPECT_NEAR(r.entropy, std::log(9.0), 1e-2);
  EXPECT_NEAR(r.approx_kl, 0.0, 1e-12);
  EXPECT_GT(r.world_model_loss, 0.0);
}

TEST(UpdateTest, FirstMinibatchHasUnitRatio) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  Population pop(PopConfig(env, 2, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(32);
  PpoConfig cfg = SmallPpo();
  UpdateReport r = PpoUpdate(pop, buf, ComputeTargets(buf, cfg), cfg);
  ASSERT_FALSE(r.minibatches.empty());
  const auto& first = r.minibatches[0];
  EXPECT_LT(first.max_abs_ratio_deviation, 1e-12);
  EXPECT_EQ(first.clip_fraction, 0.0);
  EXPECT_LT(first.approx_kl, 1e-12);
  EXPECT_EQ(r.optimizer_steps, 2 * cfg.epochs_per_update * cfg.minibatch_count);
  EXPECT_FALSE(r.aborted);
}

TEST(UpdateTest, ClippedLossBoundsUnclippedLoss) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  Population pop(PopConfig(env, 2, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 1);
  PpoConfig cfg = SmallPpo();
  cfg.adam.lr = 0.02;  // large steps so that clipping engages
  int clipped_batches = 0;
  for (int u = 0; u < 3; ++u) {
    RolloutBuffer buf = collector.Collect(32);
    UpdateReport r = PpoUpdate(pop, buf, ComputeTargets(buf, cfg), cfg, {{}, uint64_t(u)});
    for (const auto& m : r.minibatches) {
      EXPECT_GE(m.policy_loss, m.policy_loss_unclipped - 1e-12);
      if (m.clip_fraction > 0) ++clipped_batches;
    }
  }
  EXPECT_GT(clipped_batches, 0);
}

TEST(UpdateTest, IndependentLearnersAreIsolated) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  const PopulationConfig pc = PopConfig(env, 3, RewardVariant::kInfluence, 0.1);
  PpoConfig cfg = SmallPpo();
  Population untouched(pc), all(pc), only0(pc), only2(pc);
  Collector collector(untouched, env, 1);
  RolloutBuffer buf = collector.Collect(24);
  const UpdateTargets targets = ComputeTargets(buf, cfg);

  PpoUpdate(all, buf, targets, cfg);
  PpoUpdate(only0, buf, targets, cfg, {{0}, 0});
  PpoUpdate(only2, buf, targets, cfg, {{2}, 0});

  EXPECT_FALSE(BitsEqual(Flat(only0.brain(0).params), Flat(untouched.brain(0).params)));
  EXPECT_TRUE(BitsEqual(Flat(only0.brain(1).params), Flat(untouched.brain(1).params)));
  EXPECT_TRUE(BitsEqual(Flat(only0.brain(2).params), Flat(untouched.brain(2).params)));
  EXPECT_TRUE(BitsEqual(Flat(only2.brain(0).params), Flat(untouched.brain(0).params)));
  // Each learner's result does not depend on whether the others trained.
  EXPECT_TRUE(BitsEqual(Flat(all.brain(0).params), Flat(only0.brain(0).params)));
  EXPECT_TRUE(BitsEqual(Flat(all.brain(2).params), Flat(only2.brain(2).params)));
}

TEST(UpdateTest, SharedParametersTrainOnEveryAgent) {
  envs::Environment env(SmallEnv("cleanup_small", 30));
  const PopulationConfig pc = PopConfig(env, 3, RewardVariant::kNone, 0.0, /*shared=*/true);
  Population pop(pc), fresh(pc);
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(16);
  PpoConfig cfg = SmallPpo();
  UpdateReport r = PpoUpdate(pop, buf, ComputeTargets(buf, cfg), cfg);
  int samples = 0;
  for (const auto& m : r.minibatches) {
    if (m.epoch == 0) samples += m.samples;
  }
  EXPECT_EQ(samples, 3 * 16);
  EXPECT_FALSE(BitsEqual(Flat(pop.brain(0).params), Flat(fresh.brain(0).params)));
  // The critic trains too.
  EXPECT_NE(pop.brain(0).params.Get("critic/v/w").data()[0],
            fresh.brain(0).params.Get("critic/v/w").data()[0]);
}

TEST(UpdateTest, NonFiniteLossAbortsWithoutChangingParameters) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  Population pop(PopConfig(env, 1, RewardVariant::kNone, 0.0));
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(16);
  PpoConfig cfg = SmallPpo();
  UpdateTargets targets = ComputeTargets(buf, cfg);
  targets.returns[0][3] = std::numeric_limits<double>::quiet_NaN();
  const auto before = Flat(pop.brain(0).params);
  UpdateReport r = PpoUpdate(pop, buf, targets, cfg);
  EXPECT_TRUE(r.aborted);
  EXPECT_FALSE(r.abort_reason.empty());
  EXPECT_TRUE(BitsEqual(before, Flat(pop.brain(0).params)));
}

TEST(UpdateTest, RawTargetWorldModelLossFallsOnFixedData) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  PopulationConfig pc = PopConfig(env, 1, RewardVariant::kIcmReward, 0.1);
  pc.reward.icm_raw_target = true;
  Population pop(pc);
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(32);
  PpoConfig cfg = SmallPpo();
  cfg.world_model_adam.lr = 1e-3;
  const UpdateTargets targets = ComputeTargets(buf, cfg);
  const double first = PpoUpdate(pop, buf, targets, cfg, {{}, 0}).world_model_loss;
  double last = first;
  for (int u = 1; u < 6; ++u) {
    last = PpoUpdate(pop, buf, targets, cfg, {{}, uint64_t(u)}).world_model_loss;
  }
  EXPECT_LT(last, 0.5 * first);
}

TEST(UpdateTest, FeatureTargetForwardLossTrainsOnlyTheForwardHead) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  PopulationConfig pc = PopConfig(env, 1, RewardVariant::kIcm, 0.1);
  pc.reward.icm_inverse_weight = 0;
  Population pop(pc), fresh(pc);
  Collector collector(pop, env, 1);
  RolloutBuffer buf = collector.Collect(16);
  PpoConfig cfg = SmallPpo();
  PpoUpdate(pop, buf, ComputeTargets(buf, cfg), cfg);
  const auto& after = pop.brain(0).wm_params;
  const auto& before = fresh.brain(0).wm_params;
  for (const auto& e : after.entries()) {
    const bool forward_head = e.name.rfind("wm/fwd", 0) == 0;
    const auto a = e.value.data();
    const auto b = before.Get(e.name).data();
    const bool same = std::equal(a.begin(), a.end(), b.begin());
    EXPECT_EQ(same, !forward_head) << e.name;
  }
}

// One state, fixed +1 advantage on action 0. Every update re-reads the old
// log-probabilities from the current policy, as a fresh rollout would.
TEST(UpdateTest, BanditPolicyConvergesToRewardedAction) {
  envs::Environment env(SmallEnv("harvest_small", 30));
  Population pop(PopConfig(env, 1, RewardVariant::kNone, 0.0));
  const auto& policy = pop.brain(0).policy;
  const nn::ImageShape shape = pop.config().obs_shape;
  const std::vector<uint8_t> blank(shape.size(), 0);
  auto action0_prob = [&] {
    nn::NoGradGuard no_grad;
    auto out = policy.Forward(nn::ImageTensor(shape, 1, blank), policy.InitialHidden(1));
    return std::exp(LogProbOf(out.logits.data(), 0));
  };
  PpoConfig cfg = SmallPpo();
  cfg.entropy_coef = 0;
  cfg.bptt_chunk = 1;
  cfg.adam.lr = 0.01;
  const int n = 16;
  double prob = action0_prob();
  EXPECT_NEAR(prob, 1.0 / 9, 0.02);
  bool reached = false;
  for (int u = 0; u < 50; ++u) {
    RolloutBuffer buf;
    buf.agents.resize(1);
    for (int t = 0; t < n; ++t) {
      Transition tr;
      tr.step.obs = blank;
      tr.step.action = 0;
      tr.step.log_prob = std::log(prob);
      tr.step.h_policy.assign(policy.hidden_size(), 0.0);
      tr.step.episode_start = true;
      tr.done = true;
      buf.agents[0].steps.push_back(tr);
    }
    UpdateTargets targets{{std::vector<double>(n, 1.0)}, {std::vector<double>(n, 0.0)}};
    PpoUpdate(pop, buf, targets, cfg, {{}, uint64_t(u)});
    const double next = action0_prob();
    EXPECT_GT(next, prob) << "update " << u;
    prob = next;
    reached = reached || prob > 0.9;
  }
  EXPECT_TRUE(reached);
  EXPECT_GT(prob, 0.9);
}

}  // namespace
}  // namespace ssdlab::ppo
