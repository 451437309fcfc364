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

#ifndef SSDLAB_NN_PARAM_SET_H_
#define SSDLAB_NN_PARAM_SET_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssdlab/nn/tensor.h"

namespace ssdlab::nn {

// Rounds every value to the nearest 32-bit float. Parameters and optimizer
// moments are kept float-representable so checkpoints are lossless.
void RoundToStorage(std::span<Real> values);

// Named trainable tensors plus Adam moment accumulators and a step counter.
// Entries keep insertion order, which fixes the serialization order.
class ParamSet {
 public:
  struct Entry {
    std::string name;
    Tensor value;
    std::vector<Real> m;
    std::vector<Real> v;
  };

  using Initializer = std::function<void(std::span<Real>)>;

  ParamSet() = default;
  // Deep copies; the copy never aliases this set's tensors.
  ParamSet(const ParamSet& other);
  ParamSet& operator=(const ParamSet& other);
  ParamSet(ParamSet&&) = default;
  ParamSet& operator=(ParamSet&&) = default;

  // Returns the existing tensor under `name`, or creates it. Reusing a name
  // with a different shape is a contract violation.
  Tensor GetOrCreate(const std::string& name, const Shape& shape, const Initializer& init);
  Tensor Get(const std::string& name) const;
  bool Contains(const std::string& name) const { return index_.count(name) > 0; }

  size_t size() const { return entries_.size(); }
  int64_t NumScalars() const;
  std::vector<Entry>& entries() { return entries_; }
  const std::vector<Entry>& entries() const { return entries_; }

  int64_t step() const { return step_; }
  void set_step(int64_t step) { step_ = step; }

  void ZeroGrad();
  // L2 norm over all accumulated gradients.
  Real GradNorm() const;
  bool AllFinite() const;

  // Copies values (and moments) from a set with identical names and shapes.
  void CopyFrom(const ParamSet& other);
  std::vector<Real> FlatValues() const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, size_t> index_;
  int64_t step_ = 0;
};

struct AdamConfig {
  Real lr = 1e-4;
  Real beta1 = 0.9;
  Real beta2 = 0.999;
  Real eps = 1e-8;
  // Global gradient-norm clip; non-positive disables clipping.
  Real max_grad_norm = 5.0;

  void Validate() const;
};

struct AdamReport {
  Real grad_norm = 0;  // before clipping
  bool clipped = false;
};

// One bias-corrected Adam update over every entry, then clears gradients.
AdamReport AdamStep(ParamSet& params, const AdamConfig& config);

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_PARAM_SET_H_
