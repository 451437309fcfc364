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

#include "ssdlab/ppo/rollout.h"

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::ppo {

uint64_t EpisodeSeed(uint64_t run_seed, int64_t episode_index) {
  return HashKey(run_seed, RngPurpose::kEpisodeSeed, {static_cast<uint64_t>(episode_index)});
}

uint64_t ActionKey(uint64_t episode_seed) {
  return HashKey(episode_seed, RngPurpose::kActionSample, {});
}

Collector::Collector(const Population& population, const envs::Environment& env,
                     uint64_t run_seed)
    : population_(population),
      run_seed_(run_seed),
      runner_(population, env, ActionSelection::kSample) {}

void Collector::StartEpisode() {
  const uint64_t seed = EpisodeSeed(run_seed_, episodes_started_);
  ++episodes_started_;
  runner_.BeginEpisode(seed, ActionKey(seed));
}

RolloutBuffer Collector::Collect(int horizon) {
  SSD_CHECK(horizon > 0, "rollout horizon must be positive");
  const int k = population_.num_agents();
  RolloutBuffer buffer;
  buffer.agents.resize(k);
  for (auto& a : buffer.agents) a.steps.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    if (!runner_.active() || runner_.done()) StartEpisode();
    JointStep js = runner_.Step(/*record_training_data=*/true);
    if (observer_) observer_(js, runner_);
    for (int i = 0; i < k; ++i) {
      Transition tr;
      tr.step = std::move(js.agents[i]);
      tr.extrinsic = js.extrinsic[i];
      tr.intrinsic = js.intrinsic[i];
      tr.shaped = js.shaped[i];
      tr.done = js.done;
      buffer.agents[i].steps.push_back(std::move(tr));
    }
    if (js.done) buffer.finished.push_back(runner_.stats());
  }
  if (runner_.done()) {
    for (auto& a : buffer.agents) a.bootstrap = 0;
  } else {
    const std::vector<double> v = runner_.BootstrapValues();
    for (int i = 0; i < k; ++i) buffer.agents[i].bootstrap = v[i];
  }
  return buffer;
}

CollectorSnapshot Collector::Snapshot() const {
  return {episodes_started_, runner_.Snapshot()};
}

void Collector::Restore(const CollectorSnapshot& snapshot) {
  episodes_started_ = snapshot.episodes_started;
  runner_.Restore(snapshot.runner);
}

}  // namespace ssdlab::ppo
