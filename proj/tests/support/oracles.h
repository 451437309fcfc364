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


#ifndef SSDLAB_TESTS_SUPPORT_ORACLES_H_
#define SSDLAB_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssdlab/rewards/influence.h"

namespace ssdlab::testing {

// Gini from the pairwise-difference definition, with the negative shift.
inline double BruteGini(std::vector<double> r) {
  double lo = r[0];
  for (double v : r) lo = std::min(lo, v);
  if (lo < 0) {
    for (double& v : r) v = v - lo + 0.0001;
  }
  double pairs = 0, total = 0;
  for (double a : r) {
    total += a;
    for (double b : r) pairs += std::abs(a - b);
  }
  return total == 0 ? 0.0 : pairs / (2.0 * r.size() * total);
}

// Population-moment Pearson correlation.
inline double BrutePearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = x.size();
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return (sxy / n) / (std::sqrt(sxx / n) * std::sqrt(syy / n));
}

// Influence by enumerating joint (a_i, a_j) probabilities and marginalizing.
inline double EnumeratedInfluence(const rewards::CounterfactualTable& t,
                                  const std::vector<double>& policy, int realized,
                                  const std::vector<bool>& visible) {
  double total = 0;
  for (int j = 0; j < t.peers; ++j) {
    if (!visible[j]) continue;
    std::vector<double> marginal(t.peer_actions, 0.0);
    for (int a = 0; a < t.self_actions; ++a) {
      for (int b = 0; b < t.peer_actions; ++b) marginal[b] += policy[a] * t.at(a, j, b);
    }
    double kl = 0;
    for (int b = 0; b < t.peer_actions; ++b) {
      const double p = t.at(realized, j, b);
      kl += p * std::log(p / marginal[b]);
    }
    total += kl;
  }
  return total;
}

}  // namespace ssdlab::testing

#endif  // SSDLAB_TESTS_SUPPORT_ORACLES_H_
