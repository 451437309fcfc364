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

#include "ssdlab/harness/evaluate.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <thread>

#include "ssdlab/ppo/rollout.h"

namespace ssdlab::harness {

EpisodeHeader MakeEpisodeHeader(const RunConfig& config, const envs::Environment& env,
                                uint64_t seed, ppo::ActionSelection selection) {
  EpisodeHeader h;
  h.config_digest = ConfigDigest(config);
  h.variant = VariantName(config.variant);
  h.seed = seed;
  h.num_agents = config.num_agents;
  h.episode_len = env.episode_len();
  h.map_id = env.map().id();
  std::istringstream rows(env.map().ToText());
  for (std::string row; std::getline(rows, row);) {
    if (!row.empty()) h.map_rows.push_back(row);
  }
  h.env = EnvConfigToJson(env.config());
  h.action_selection = selection == ppo::ActionSelection::kSample ? "sample" : "argmax";
  return h;
}

EpisodeLog RecordEpisode(const ppo::Population& population, const envs::Environment& env,
                         const EpisodeHeader& header, ppo::ActionSelection selection,
                         const ppo::ScriptedPolicy& scripted) {
  ppo::Runner runner(population, env, selection);
  if (scripted) runner.set_scripted_policy(scripted);
  runner.BeginEpisode(header.seed, ppo::ActionKey(header.seed));
  EpisodeLog log;
  log.header = header;
  while (!runner.done()) {
    ppo::JointStep js = runner.Step(/*record_training_data=*/false);
    StepRecord rec;
    rec.t = js.t;
    rec.actions = std::move(js.actions);
    rec.extrinsic = std::move(js.extrinsic);
    rec.intrinsic = std::move(js.intrinsic);
    rec.events = std::move(js.events);
    log.steps.push_back(std::move(rec));
  }
  log.stats = runner.stats();
  log.final_apples = runner.state().apple_count;
  log.final_waste = runner.state().waste_count;
  return log;
}

EvaluationResult Evaluate(const ppo::Population& population, const envs::Environment& env,
                          const RunConfig& config, std::span<const uint64_t> seeds,
                          ppo::ActionSelection selection, int threads,
                          const ppo::ScriptedPolicy& scripted) {
  const int n = static_cast<int>(seeds.size());
  EvaluationResult result;
  result.logs.resize(n);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(std::max(threads, 1));
  auto work = [&](int worker) {
    try {
      for (int e = next++; e < n; e = next++) {
        result.logs[e] = RecordEpisode(population, env,
                                       MakeEpisodeHeader(config, env, seeds[e], selection),
                                       selection, scripted);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  std::vector<metrics::EpisodeStats> stats;
  for (const auto& log : result.logs) stats.push_back(log.stats);
  if (!stats.empty()) {
    result.report = metrics::MakePopulationReport(stats);
    result.mean_population_return = result.report.population_return.mean;
  }
  return result;
}

ppo::ScriptedPolicy UniformRandomPolicy() {
  return [](const grid::GridState&, int, double u) {
    return std::min(static_cast<int>(u * grid::kNumActions), grid::kNumActions - 1);
  };
}

}  // namespace ssdlab::harness
