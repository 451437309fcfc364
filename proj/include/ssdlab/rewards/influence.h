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

#ifndef SSDLAB_REWARDS_INFLUENCE_H_
#define SSDLAB_REWARDS_INFLUENCE_H_

#include <span>
#include <vector>

#include "ssdlab/nn/networks.h"

namespace ssdlab::rewards {

// p(a_j = b | a_i = a) for every self action a, peer slot j and peer action b.
struct CounterfactualTable {
  int self_actions = 0;
  int peers = 0;
  int peer_actions = 0;
  std::vector<double> probs;  // [a][j][b], row-major

  CounterfactualTable(int self_actions, int peers, int peer_actions);
  double& at(int a, int j, int b) { return probs[(a * peers + j) * peer_actions + b]; }
  double at(int a, int j, int b) const { return probs[(a * peers + j) * peer_actions + b]; }
};

struct InfluenceReport {
  double total = 0;                         // sum of per-peer KLs over visible peers
  std::vector<double> per_peer;             // 0 for invisible peers
  std::vector<std::vector<double>> marginals;  // [peer][b]
};

// KL(p || q) over matching supports, ignoring terms with p = 0.
double KlDivergence(std::span<const double> p, std::span<const double> q);

// c = sum over visible j of KL(p(.|a_realized) || sum_a policy[a] p(.|a)).
InfluenceReport InfluenceFromTable(const CounterfactualTable& table,
                                   std::span<const double> policy, int realized_action,
                                   std::span<const bool> visible);

// Evaluates the MOA head once per counterfactual self action (batched) and
// returns the table. Runs without recording a graph. When `next_hidden` is
// given it receives the [9, Hm] recurrent states, one per self action.
CounterfactualTable MoaCounterfactuals(const nn::MoaHead& moa, const nn::Tensor& features,
                                       const nn::Tensor& prev_actions,
                                       const nn::Tensor& moa_hidden,
                                       nn::Tensor* next_hidden = nullptr);

// Per-row MOA loss: summed cross-entropy over peer slots whose target is
// >= 0 (visible). logits [B, P*9], targets [B*P]. Returns [B].
nn::Tensor MoaLoss(const nn::Tensor& logits, std::span<const int> peer_targets);

}  // namespace ssdlab::rewards

#endif  // SSDLAB_REWARDS_INFLUENCE_H_
