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

#include "ssdlab/rewards/influence.h"

#include <cmath>

#include "ssdlab/common/error.h"
#include "ssdlab/nn/ops.h"

namespace ssdlab::rewards {

CounterfactualTable::CounterfactualTable(int self_actions, int peers, int peer_actions)
    : self_actions(self_actions),
      peers(peers),
      peer_actions(peer_actions),
      probs(static_cast<size_t>(self_actions) * peers * peer_actions, 0.0) {}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  SSD_CHECK(p.size() == q.size(), "KL support mismatch");
  double kl = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) kl += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  // Rounding can leave tiny negatives when p == q.
  return std::max(kl, 0.0);
}

InfluenceReport InfluenceFromTable(const CounterfactualTable& table,
                                   std::span<const double> policy, int realized_action,
                                   std::span<const bool> visible) {
  SSD_CHECK(static_cast<int>(policy.size()) == table.self_actions, "policy size");
  SSD_CHECK(static_cast<int>(visible.size()) == table.peers, "visibility size");
  SSD_CHECK(0 <= realized_action && realized_action < table.self_actions,
            "realized action out of range");
  InfluenceReport report;
  report.per_peer.assign(table.peers, 0.0);
  report.marginals.assign(table.peers, std::vector<double>(table.peer_actions, 0.0));
  for (int j = 0; j < table.peers; ++j) {
    auto& marginal = report.marginals[j];
    for (int a = 0; a < table.self_actions; ++a) {
      for (int b = 0; b < table.peer_actions; ++b) marginal[b] += policy[a] * table.at(a, j, b);
    }
    if (!visible[j]) continue;
    std::vector<double> conditional(table.peer_actions);
    for (int b = 0; b < table.peer_actions; ++b) conditional[b] = table.at(realized_action, j, b);
    report.per_peer[j] = KlDivergence(conditional, marginal);
    report.total += report.per_peer[j];
  }
  return report;
}

CounterfactualTable MoaCounterfactuals(const nn::MoaHead& moa, const nn::Tensor& features,
                                       const nn::Tensor& prev_actions,
                                       const nn::Tensor& moa_hidden,
                                       nn::Tensor* next_hidden) {
  constexpr int kA = nn::kActionCount;
  SSD_CHECK(features.rank() == 2 && features.dim(0) == 1, "counterfactuals take one row");
  nn::NoGradGuard no_grad;
  auto repeat = [](const nn::Tensor& row) {
    std::vector<nn::Real> data;
    data.reserve(row.numel() * kA);
    for (int a = 0; a < kA; ++a) data.insert(data.end(), row.data().begin(), row.data().end());
    return nn::Tensor::FromVector({kA, row.dim(1)}, std::move(data));
  };
  std::vector<int> self(kA);
  for (int a = 0; a < kA; ++a) self[a] = a;
  auto out = moa.Forward(repeat(features), repeat(prev_actions), nn::OneHotRows(self, kA),
                         repeat(moa_hidden));
  if (next_hidden != nullptr) *next_hidden = out.hidden;
  const int peers = moa.num_others();
  CounterfactualTable table(kA, peers, kA);
  for (int a = 0; a < kA; ++a) {
    for (int j = 0; j < peers; ++j) {
      auto probs = nn::Softmax(out.logits.data().subspan((a * peers + j) * kA, kA));
      for (int b = 0; b < kA; ++b) table.at(a, j, b) = probs[b];
    }
  }
  return table;
}

nn::Tensor MoaLoss(const nn::Tensor& logits, std::span<const int> peer_targets) {
  constexpr int kA = nn::kActionCount;
  SSD_CHECK(logits.rank() == 2 && logits.dim(1) % kA == 0, "MOA logits shape");
  const int batch = logits.dim(0), peers = logits.dim(1) / kA;
  SSD_CHECK(static_cast<int>(peer_targets.size()) == batch * peers, "MOA target count");
  nn::Tensor ce = nn::SoftmaxCrossEntropy(nn::Reshape(logits, {batch * peers, kA}), peer_targets);
  return nn::SumRows(nn::Reshape(ce, {batch, peers}));
}

}  // namespace ssdlab::rewards
