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

#ifndef SSDLAB_HARNESS_RUN_CONFIG_H_
#define SSDLAB_HARNESS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssdlab/envs/environment.h"
#include "ssdlab/nn/networks.h"
#include "ssdlab/ppo/config.h"
#include "ssdlab/ppo/population.h"
#include "ssdlab/ppo/runner.h"
#include "ssdlab/rewards/reward_config.h"

namespace ssdlab::harness {

using Json = nlohmann::json;

// The six evaluated populations plus the plain IPPO baseline.
enum class Variant { kIppo, kMappo, kIcm, kIcmReward, kInfluence, kSvoHe, kSvoHo };

std::string VariantName(Variant v);
Variant ParseVariant(const std::string& name);  // throws ConfigError
bool UsesIntrinsicReward(Variant v);
bool IsSvo(Variant v);

// Everything that determines a run. Variant-specific fields (alpha, svo,
// icm, moa) are read and written only for the variants that use them.
struct RunConfig {
  envs::EnvConfig env = envs::DefaultEnvConfig("cleanup");
  Variant variant = Variant::kIppo;
  int num_agents = 5;
  double alpha = 0.1;
  double svo_mu_deg = 30;
  double svo_sigma_deg = 0;
  rewards::SvoBasis svo_basis = rewards::SvoBasis::kStep;
  bool icm_raw_target = false;
  double icm_inverse_weight = 1.0;
  double moa_loss_weight = 1.0;
  nn::NetSizes sizes;
  ppo::PpoConfig ppo;
  int64_t total_env_steps = 1'000'000;
  int64_t epoch_steps = 5'000;
  int eval_episodes = 5;
  ppo::ActionSelection eval_selection = ppo::ActionSelection::kSample;
  // Explicit evaluation episode seeds; empty derives them from `seed`.
  std::vector<uint64_t> eval_seeds;
  uint64_t seed = 1;

  int64_t num_epochs() const { return total_env_steps / epoch_steps; }
  // Throws ConfigError.
  void Validate() const;
};

// Defaults for a variant and environment, including the paper's SVO
// population parameters.
RunConfig DefaultRunConfig(Variant variant, const std::string& env_name);

// Strict parsing: unknown keys, wrong types and fields of other variants are
// ConfigErrors. Missing keys take the defaults of (variant, env.name).
RunConfig RunConfigFromJson(const Json& j);
Json RunConfigToJson(const RunConfig& config);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// 16 hex digits identifying the canonical JSON form.
std::string ConfigDigest(const RunConfig& config);

ppo::PopulationConfig MakePopulationConfig(const RunConfig& config, const envs::Environment& env);

// Seeds of the evaluation episodes: explicit ones, else derived from the run
// seed under a purpose disjoint from training episodes.
std::vector<uint64_t> EvaluationSeeds(const RunConfig& config);
std::vector<uint64_t> DerivedEvaluationSeeds(uint64_t base_seed, int episodes);

Json EnvConfigToJson(const envs::EnvConfig& env);
envs::EnvConfig EnvConfigFromJson(const Json& j);

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_RUN_CONFIG_H_
