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

#ifndef SSDLAB_HARNESS_EVALUATE_H_
#define SSDLAB_HARNESS_EVALUATE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ssdlab/envs/environment.h"
#include "ssdlab/harness/episode_log.h"
#include "ssdlab/harness/run_config.h"
#include "ssdlab/metrics/metrics.h"
#include "ssdlab/ppo/population.h"
#include "ssdlab/ppo/runner.h"

namespace ssdlab::harness {

EpisodeHeader MakeEpisodeHeader(const RunConfig& config, const envs::Environment& env,
                                uint64_t seed, ppo::ActionSelection selection);

// Plays one full episode with frozen parameters. Intrinsic rewards are
// computed and logged; reported returns are extrinsic only.
EpisodeLog RecordEpisode(const ppo::Population& population, const envs::Environment& env,
                         const EpisodeHeader& header, ppo::ActionSelection selection,
                         const ppo::ScriptedPolicy& scripted = {});

struct EvaluationResult {
  std::vector<EpisodeLog> logs;  // in seed order
  metrics::PopulationReport report;
  double mean_population_return = 0;
};

// Runs one episode per seed, on up to `threads` worker threads (0 picks the
// hardware concurrency). Results do not depend on the thread count.
EvaluationResult Evaluate(const ppo::Population& population, const envs::Environment& env,
                          const RunConfig& config, std::span<const uint64_t> seeds,
                          ppo::ActionSelection selection, int threads = 0,
                          const ppo::ScriptedPolicy& scripted = {});

// A policy that picks uniformly among the nine actions.
ppo::ScriptedPolicy UniformRandomPolicy();

}  // namespace ssdlab::harness

#endif  // SSDLAB_HARNESS_EVALUATE_H_
