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

#ifndef SSDLAB_ENVS_HARVEST_H_
#define SSDLAB_ENVS_HARVEST_H_

#include <array>
#include <span>

#include "ssdlab/grid/engine.h"
#include "ssdlab/grid/grid_state.h"

namespace ssdlab::envs {

struct HarvestParams {
  // Indexed by min(3, apples within Euclidean distance 2).
  std::array<double, 4> respawn_prob_by_neighbors = {0.0, 0.005, 0.02, 0.05};
  int episode_len = 1000;

  void Validate() const;
};

inline constexpr int kHarvestNeighborRadius = 2;

// Apples at Euclidean distance <= 2 from `cell`, excluding `cell` itself.
int AppleNeighborCount(const grid::GridState& state, grid::Cell cell);

// Regrows apples on bare, unoccupied orchard cells. Neighbour counts come
// from the pre-step apple set, so the result does not depend on the order
// cells are visited in.
void HarvestStepDynamics(grid::GridState& state, const HarvestParams& params);
// Same, visiting orchard cells in `cell_order` (map indices).
void HarvestStepDynamics(grid::GridState& state, const HarvestParams& params,
                         std::span<const int> cell_order);

class HarvestDynamics : public grid::Dynamics {
 public:
  explicit HarvestDynamics(HarvestParams params);

  int episode_len() const override { return params_.episode_len; }
  // Every unoccupied orchard cell starts with an apple.
  void InitializeState(grid::GridState& state) const override;
  void ApplyDynamics(grid::GridState& state) const override;

  const HarvestParams& params() const { return params_; }

 private:
  HarvestParams params_;
};

}  // namespace ssdlab::envs

#endif  // SSDLAB_ENVS_HARVEST_H_
