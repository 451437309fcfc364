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

#ifndef SSDLAB_ENVS_CLEANUP_H_
#define SSDLAB_ENVS_CLEANUP_H_

#include "ssdlab/grid/engine.h"
#include "ssdlab/grid/grid_state.h"

namespace ssdlab::envs {

enum class WasteSpawnMode {
  // With probability waste_spawn_prob, one uniformly chosen clean river cell
  // becomes polluted.
  kPointSource,
  // Every clean river cell independently becomes polluted with
  // probability waste_spawn_prob.
  kPerCell,
};

struct CleanupParams {
  double waste_spawn_prob = 0.5;
  WasteSpawnMode waste_spawn_mode = WasteSpawnMode::kPointSource;
  double apple_spawn_prob_max = 0.05;
  // Waste density at or above which apples stop growing.
  double threshold_depletion = 0.4;
  // Waste density at or below which apples grow at the maximal rate.
  double threshold_restoration = 0.0;
  double starting_waste_fraction = 0.5;
  int episode_len = 2000;

  void Validate() const;
};

// Fraction of river cells carrying waste.
struct WasteDensity {
  double value = 0.0;

  static WasteDensity Of(const grid::GridState& state);
};

// Linear ramp from apple_spawn_prob_max (density <= restoration) down to 0
// (density >= depletion).
double CleanupAppleSpawnProb(WasteDensity density, const CleanupParams& params);

// Clears waste under the clean beam of `agent_id`. Returns the number of
// cells cleaned.
int CleanBeamResolve(grid::GridState& state, int agent_id,
                     const grid::EngineParams& params);

// One step of apple growth (rate from the pre-step density) followed by
// waste spawning. Cells under avatars never receive items. Draws are keyed
// per (seed, t, cell).
void CleanupStepDynamics(grid::GridState& state, const CleanupParams& params);

class CleanupDynamics : public grid::Dynamics {
 public:
  explicit CleanupDynamics(CleanupParams params);

  int episode_len() const override { return params_.episode_len; }
  // Pollutes round(starting_waste_fraction * |river|) seeded river cells.
  void InitializeState(grid::GridState& state) const override;
  void ApplyDynamics(grid::GridState& state) const override;
  bool supports_clean_beam() const override { return true; }
  int ResolveCleanBeam(grid::GridState& state, int agent_id,
                       const grid::EngineParams& params) const override;

  const CleanupParams& params() const { return params_; }

 private:
  CleanupParams params_;
};

}  // namespace ssdlab::envs

#endif  // SSDLAB_ENVS_CLEANUP_H_
