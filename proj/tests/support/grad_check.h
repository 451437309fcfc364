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

#ifndef SSDLAB_TESTS_SUPPORT_GRAD_CHECK_H_
#define SSDLAB_TESTS_SUPPORT_GRAD_CHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ssdlab/common/rng.h"
#include "ssdlab/nn/tensor.h"

namespace ssdlab::testing {

// Central finite-difference oracle. `loss` must rebuild the scalar from the
// current leaf values on every call.
struct GradCheckResult {
  double max_rel_error = 0;
  int64_t checked = 0;
};

inline double RelError(double analytic, double numeric, double floor = 1e-6) {
  return std::abs(analytic - numeric) /
         std::max({std::abs(analytic), std::abs(numeric), floor});
}

inline GradCheckResult CheckGradients(std::vector<nn::Tensor> leaves,
                                      const std::function<nn::Tensor()>& loss,
                                      double eps = 1e-4) {
  for (nn::Tensor& t : leaves) t.ZeroGrad();
  loss().Backward();
  std::vector<std::vector<double>> analytic;
  for (nn::Tensor& t : leaves) {
    auto g = t.grad();
    analytic.emplace_back(t.numel(), 0.0);
    std::copy(g.begin(), g.end(), analytic.back().begin());
  }
  GradCheckResult result;
  nn::NoGradGuard no_grad;
  for (size_t k = 0; k < leaves.size(); ++k) {
    auto data = leaves[k].mutable_data();
    for (size_t i = 0; i < data.size(); ++i) {
      const double saved = data[i];
      data[i] = saved + eps;
      const double up = loss().item();
      data[i] = saved - eps;
      const double down = loss().item();
      data[i] = saved;
      const double numeric = (up - down) / (2 * eps);
      result.max_rel_error = std::max(result.max_rel_error, RelError(analytic[k][i], numeric));
      ++result.checked;
    }
  }
  for (nn::Tensor& t : leaves) t.ZeroGrad();
  return result;
}

inline nn::Tensor RandomTensor(CounterRng& rng, nn::Shape shape, bool requires_grad = true,
                               double scale = 1.0) {
  std::vector<double> v(nn::NumElements(shape));
  for (double& x : v) x = scale * rng.Uniform(-1.0, 1.0);
  return nn::Tensor::FromVector(std::move(shape), std::move(v), requires_grad);
}

}  // namespace ssdlab::testing

#endif  // SSDLAB_TESTS_SUPPORT_GRAD_CHECK_H_
