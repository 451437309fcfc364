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

#include "ssdlab/harness/run_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::harness {

namespace {

constexpr std::pair<Variant, const char*> kVariantNames[] = {
    {Variant::kIppo, "ippo"},           {Variant::kMappo, "mappo"},
    {Variant::kIcm, "icm"},             {Variant::kIcmReward, "icm_reward"},
    {Variant::kInfluence, "influence"}, {Variant::kSvoHe, "svo_he"},
    {Variant::kSvoHo, "svo_ho"},
};

// Reads an object field by field and rejects keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool Has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  void Get(const std::string& key, T& out) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    seen_.insert(key);
    try {
      out = it->template get<T>();
    } catch (const Json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  // Returns nullptr when absent.
  const Json* Sub(const std::string& key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  std::string Path(const std::string& key) const { return path_ + "." + key; }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) {
        throw ConfigError(path_ + ": unknown or inapplicable key '" + it.key() + "'");
      }
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void ReadAdam(const Json& j, const std::string& path, nn::AdamConfig& adam) {
  ObjectReader r(j, path);
  r.Get("lr", adam.lr);
  r.Get("beta1", adam.beta1);
  r.Get("beta2", adam.beta2);
  r.Get("eps", adam.eps);
  r.Get("max_grad_norm", adam.max_grad_norm);
  r.Finish();
}

Json AdamToJson(const nn::AdamConfig& a) {
  return {{"lr", a.lr},
          {"beta1", a.beta1},
          {"beta2", a.beta2},
          {"eps", a.eps},
          {"max_grad_norm", a.max_grad_norm}};
}

std::string WasteModeName(envs::WasteSpawnMode m) {
  return m == envs::WasteSpawnMode::kPointSource ? "point_source" : "per_cell";
}

}  // namespace

std::string VariantName(Variant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  SSD_CHECK(false, "unknown variant");
  return "";
}

Variant ParseVariant(const std::string& name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (name == n) return variant;
  }
  throw ConfigError("unknown variant '" + name +
                    "' (expected ippo, mappo, icm, icm_reward, influence, svo_he or svo_ho)");
}

bool UsesIntrinsicReward(Variant v) { return v != Variant::kIppo && v != Variant::kMappo; }
bool IsSvo(Variant v) { return v == Variant::kSvoHe || v == Variant::kSvoHo; }

void RunConfig::Validate() const {
  env.Validate();
  if (num_agents < 2) throw ConfigError("num_agents must be >= 2");
  if (!(alpha >= 0)) throw ConfigError("alpha must be >= 0");
  if (!(svo_sigma_deg >= 0)) throw ConfigError("svo.sigma_deg must be >= 0");
  if (variant == Variant::kSvoHo && svo_sigma_deg != 0) {
    throw ConfigError("svo_ho is a homogeneous population: svo.sigma_deg must be 0");
  }
  if (!(icm_inverse_weight >= 0) || !(moa_loss_weight >= 0)) {
    throw ConfigError("auxiliary loss weights must be >= 0");
  }
  sizes.Validate();
  ppo.Validate();
  if (epoch_steps < 1) throw ConfigError("epoch_steps must be >= 1");
  if (total_env_steps < epoch_steps) throw ConfigError("total_env_steps must be >= epoch_steps");
  if (total_env_steps % epoch_steps != 0) {
    throw ConfigError("epoch_steps must divide total_env_steps");
  }
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  if (!eval_seeds.empty() && static_cast<int>(eval_seeds.size()) != eval_episodes) {
    throw ConfigError("eval_seeds must list exactly eval_episodes seeds");
  }
}

RunConfig DefaultRunConfig(Variant variant, const std::string& env_name) {
  RunConfig c;
  c.env = envs::DefaultEnvConfig(env_name);
  c.variant = variant;
  if (variant == Variant::kSvoHe) {
    // Heterogeneous populations: very altruistic on Clean Up, mildly on Harvest.
    c.svo_mu_deg = c.env.kind == envs::EnvKind::kCleanup ? 75.0 : 15.0;
    c.svo_sigma_deg = 11.9;
  } else if (variant == Variant::kSvoHo) {
    c.svo_mu_deg = 30.0;
    c.svo_sigma_deg = 0.0;
  }
  return c;
}

Json EnvConfigToJson(const envs::EnvConfig& env) {
  Json j = {{"name", env.name},
            {"episode_len", env.episode_len()},
            {"engine",
             {{"beam_length", env.engine.beam_length},
              {"beam_width", env.engine.beam_width},
              {"tag_freeze_steps", env.engine.tag_freeze_steps}}}};
  if (!env.map_file.empty()) j["map_file"] = env.map_file;
  if (env.kind == envs::EnvKind::kCleanup) {
    const auto& p = env.cleanup;
    j["cleanup"] = {{"waste_spawn_prob", p.waste_spawn_prob},
                    {"waste_spawn_mode", WasteModeName(p.waste_spawn_mode)},
                    {"apple_spawn_prob_max", p.apple_spawn_prob_max},
                    {"threshold_depletion", p.threshold_depletion},
                    {"threshold_restoration", p.threshold_restoration},
                    {"starting_waste_fraction", p.starting_waste_fraction}};
  } else {
    j["harvest"] = {{"respawn_prob_by_neighbors", env.harvest.respawn_prob_by_neighbors}};
  }
  return j;
}

envs::EnvConfig EnvConfigFromJson(const Json& j) {
  ObjectReader r(j, "env");
  std::string name = "cleanup";
  r.Get("name", name);
  envs::EnvConfig env = envs::DefaultEnvConfig(name);
  r.Get("map_file", env.map_file);
  int episode_len = env.episode_len();
  r.Get("episode_len", episode_len);
  env.cleanup.episode_len = episode_len;
  env.harvest.episode_len = episode_len;
  if (const Json* e = r.Sub("engine")) {
    ObjectReader er(*e, "env.engine");
    er.Get("beam_length", env.engine.beam_length);
    er.Get("beam_width", env.engine.beam_width);
    er.Get("tag_freeze_steps", env.engine.tag_freeze_steps);
    er.Finish();
  }
  if (env.kind == envs::EnvKind::kCleanup) {
    if (const Json* c = r.Sub("cleanup")) {
      ObjectReader cr(*c, "env.cleanup");
      auto& p = env.cleanup;
      cr.Get("waste_spawn_prob", p.waste_spawn_prob);
      std::string mode = WasteModeName(p.waste_spawn_mode);
      cr.Get("waste_spawn_mode", mode);
      if (mode == "point_source") {
        p.waste_spawn_mode = envs::WasteSpawnMode::kPointSource;
      } else if (mode == "per_cell") {
        p.waste_spawn_mode = envs::WasteSpawnMode::kPerCell;
      } else {
        throw ConfigError("env.cleanup.waste_spawn_mode must be point_source or per_cell");
      }
      cr.Get("apple_spawn_prob_max", p.apple_spawn_prob_max);
      cr.Get("threshold_depletion", p.threshold_depletion);
      cr.Get("threshold_restoration", p.threshold_restoration);
      cr.Get("starting_waste_fraction", p.starting_waste_fraction);
      cr.Finish();
    }
  } else if (const Json* h = r.Sub("harvest")) {
    ObjectReader hr(*h, "env.harvest");
    hr.Get("respawn_prob_by_neighbors", env.harvest.respawn_prob_by_neighbors);
    hr.Finish();
  }
  r.Finish();
  env.Validate();
  return env;
}

RunConfig RunConfigFromJson(const Json& j) {
  ObjectReader r(j, "config");
  std::string variant_name = "ippo";
  r.Get("variant", variant_name);
  const Variant variant = ParseVariant(variant_name);
  envs::EnvConfig env = envs::DefaultEnvConfig("cleanup");
  if (const Json* e = r.Sub("env")) env = EnvConfigFromJson(*e);
  RunConfig c = DefaultRunConfig(variant, env.name);
  c.env = env;

  r.Get("num_agents", c.num_agents);
  r.Get("seed", c.seed);
  r.Get("total_env_steps", c.total_env_steps);
  r.Get("epoch_steps", c.epoch_steps);
  if (const Json* ev = r.Sub("evaluation")) {
    ObjectReader er(*ev, "config.evaluation");
    er.Get("episodes", c.eval_episodes);
    er.Get("seeds", c.eval_seeds);
    std::string sel = "sample";
    er.Get("action_selection", sel);
    if (sel == "sample") {
      c.eval_selection = ppo::ActionSelection::kSample;
    } else if (sel == "argmax") {
      c.eval_selection = ppo::ActionSelection::kArgmax;
    } else {
      throw ConfigError("config.evaluation.action_selection must be sample or argmax");
    }
    er.Finish();
  }
  if (UsesIntrinsicReward(variant)) r.Get("alpha", c.alpha);
  if (IsSvo(variant)) {
    if (const Json* s = r.Sub("svo")) {
      ObjectReader sr(*s, "config.svo");
      sr.Get("mu_deg", c.svo_mu_deg);
      sr.Get("sigma_deg", c.svo_sigma_deg);
      std::string basis = "step";
      sr.Get("basis", basis);
      if (basis == "step") {
        c.svo_basis = rewards::SvoBasis::kStep;
      } else if (basis == "cumulative") {
        c.svo_basis = rewards::SvoBasis::kCumulative;
      } else {
        throw ConfigError("config.svo.basis must be step or cumulative");
      }
      sr.Finish();
    }
  }
  if (variant == Variant::kIcm || variant == Variant::kIcmReward) {
    if (const Json* s = r.Sub("icm")) {
      ObjectReader ir(*s, "config.icm");
      ir.Get("raw_target", c.icm_raw_target);
      ir.Get("inverse_weight", c.icm_inverse_weight);
      ir.Finish();
    }
  }
  if (variant == Variant::kInfluence) {
    if (const Json* s = r.Sub("moa")) {
      ObjectReader mr(*s, "config.moa");
      mr.Get("loss_weight", c.moa_loss_weight);
      mr.Finish();
    }
  }
  if (const Json* n = r.Sub("network")) {
    ObjectReader nr(*n, "config.network");
    nr.Get("conv_filters", c.sizes.conv_filters);
    nr.Get("kernel", c.sizes.kernel);
    nr.Get("dense", c.sizes.dense);
    nr.Get("hidden", c.sizes.hidden);
    nr.Get("head_hidden", c.sizes.head_hidden);
    nr.Finish();
  }
  if (const Json* p = r.Sub("ppo")) {
    ObjectReader pr(*p, "config.ppo");
    auto& q = c.ppo;
    pr.Get("gamma", q.gamma);
    pr.Get("gae_lambda", q.gae_lambda);
    pr.Get("clip_ratio", q.clip_ratio);
    pr.Get("epochs_per_update", q.epochs_per_update);
    pr.Get("minibatch_count", q.minibatch_count);
    pr.Get("value_coef", q.value_coef);
    pr.Get("entropy_coef", q.entropy_coef);
    pr.Get("rollout_horizon", q.rollout_horizon);
    pr.Get("bptt_chunk", q.bptt_chunk);
    if (const Json* a = pr.Sub("adam")) ReadAdam(*a, "config.ppo.adam", q.adam);
    if (const Json* a = pr.Sub("world_model_adam")) {
      if (variant != Variant::kIcm && variant != Variant::kIcmReward) {
        throw ConfigError("config.ppo.world_model_adam applies only to icm and icm_reward");
      }
      ReadAdam(*a, "config.ppo.world_model_adam", q.world_model_adam);
    }
    pr.Finish();
  }
  r.Finish();
  c.Validate();
  return c;
}

Json RunConfigToJson(const RunConfig& c) {
  const auto& q = c.ppo;
  Json ppo = {{"gamma", q.gamma},
              {"gae_lambda", q.gae_lambda},
              {"clip_ratio", q.clip_ratio},
              {"epochs_per_update", q.epochs_per_update},
              {"minibatch_count", q.minibatch_count},
              {"value_coef", q.value_coef},
              {"entropy_coef", q.entropy_coef},
              {"rollout_horizon", q.rollout_horizon},
              {"bptt_chunk", q.bptt_chunk},
              {"adam", AdamToJson(q.adam)}};
  Json j = {{"variant", VariantName(c.variant)},
            {"env", EnvConfigToJson(c.env)},
            {"num_agents", c.num_agents},
            {"seed", c.seed},
            {"total_env_steps", c.total_env_steps},
            {"epoch_steps", c.epoch_steps},
            {"evaluation",
             {{"episodes", c.eval_episodes},
              {"seeds", c.eval_seeds},
              {"action_selection",
               c.eval_selection == ppo::ActionSelection::kSample ? "sample" : "argmax"}}},
            {"network",
             {{"conv_filters", c.sizes.conv_filters},
              {"kernel", c.sizes.kernel},
              {"dense", c.sizes.dense},
              {"hidden", c.sizes.hidden},
              {"head_hidden", c.sizes.head_hidden}}}};
  if (UsesIntrinsicReward(c.variant)) j["alpha"] = c.alpha;
  if (IsSvo(c.variant)) {
    j["svo"] = {{"mu_deg", c.svo_mu_deg},
                {"sigma_deg", c.svo_sigma_deg},
                {"basis", c.svo_basis == rewards::SvoBasis::kStep ? "step" : "cumulative"}};
  }
  if (c.variant == Variant::kIcm || c.variant == Variant::kIcmReward) {
    j["icm"] = {{"raw_target", c.icm_raw_target}, {"inverse_weight", c.icm_inverse_weight}};
    ppo["world_model_adam"] = AdamToJson(q.world_model_adam);
  }
  if (c.variant == Variant::kInfluence) j["moa"] = {{"loss_weight", c.moa_loss_weight}};
  j["ppo"] = ppo;
  return j;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j);
}

std::string ConfigDigest(const RunConfig& config) {
  const std::string text = RunConfigToJson(config).dump();
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

ppo::PopulationConfig MakePopulationConfig(const RunConfig& c, const envs::Environment& env) {
  ppo::PopulationConfig p;
  p.num_agents = c.num_agents;
  p.shared_parameters = c.variant == Variant::kMappo;
  p.sizes = c.sizes;
  p.global_shape = {env.map().height(), env.map().width(), p.obs_shape.channels};
  p.seed = c.seed;
  auto& r = p.reward;
  switch (c.variant) {
    case Variant::kIppo:
    case Variant::kMappo:
      r.variant = rewards::RewardVariant::kNone;
      break;
    case Variant::kIcm:
      r.variant = rewards::RewardVariant::kIcm;
      break;
    case Variant::kIcmReward:
      r.variant = rewards::RewardVariant::kIcmReward;
      break;
    case Variant::kInfluence:
      r.variant = rewards::RewardVariant::kInfluence;
      break;
    case Variant::kSvoHe:
    case Variant::kSvoHo:
      r.variant = rewards::RewardVariant::kSvo;
      break;
  }
  r.alpha = UsesIntrinsicReward(c.variant) ? c.alpha : 0.0;
  r.svo_mu_deg = c.svo_mu_deg;
  r.svo_sigma_deg = c.svo_sigma_deg;
  r.svo_basis = c.svo_basis;
  r.icm_raw_target = c.icm_raw_target;
  r.icm_inverse_weight = c.icm_inverse_weight;
  r.moa_loss_weight = c.moa_loss_weight;
  return p;
}

std::vector<uint64_t> DerivedEvaluationSeeds(uint64_t base_seed, int episodes) {
  std::vector<uint64_t> seeds;
  for (int e = 0; e < episodes; ++e) {
    seeds.push_back(HashKey(base_seed, RngPurpose::kEvalSeed, {static_cast<uint64_t>(e)}));
  }
  return seeds;
}

std::vector<uint64_t> EvaluationSeeds(const RunConfig& config) {
  if (!config.eval_seeds.empty()) return config.eval_seeds;
  return DerivedEvaluationSeeds(config.seed, config.eval_episodes);
}

}  // namespace ssdlab::harness
