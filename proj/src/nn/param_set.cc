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

#include "ssdlab/nn/param_set.h"

#include <cmath>

#include "ssdlab/common/error.h"

namespace ssdlab::nn {

void RoundToStorage(std::span<Real> values) {
  for (Real& v : values) v = static_cast<Real>(static_cast<float>(v));
}

ParamSet::ParamSet(const ParamSet& other) { *this = other; }

ParamSet& ParamSet::operator=(const ParamSet& other) {
  if (this == &other) return *this;
  entries_.clear();
  index_ = other.index_;
  step_ = other.step_;
  for (const Entry& e : other.entries_) {
    entries_.push_back({e.name,
                        Tensor::FromVector(e.value.shape(),
                                           std::vector<Real>(e.value.data().begin(),
                                                             e.value.data().end()),
                                           true),
                        e.m, e.v});
  }
  return *this;
}

Tensor ParamSet::GetOrCreate(const std::string& name, const Shape& shape,
                             const Initializer& init) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    const Tensor& t = entries_[it->second].value;
    SSD_CHECK(t.shape() == shape, "parameter ", name, " exists with shape ",
              ShapeString(t.shape()), ", requested ", ShapeString(shape));
    return t;
  }
  Tensor t = Tensor::Zeros(shape, true);
  if (init) init(t.mutable_data());
  RoundToStorage(t.mutable_data());
  const size_t n = t.numel();
  index_.emplace(name, entries_.size());
  entries_.push_back({name, t, std::vector<Real>(n, 0.0), std::vector<Real>(n, 0.0)});
  return t;
}

Tensor ParamSet::Get(const std::string& name) const {
  auto it = index_.find(name);
  SSD_CHECK(it != index_.end(), "unknown parameter ", name);
  return entries_[it->second].value;
}

int64_t ParamSet::NumScalars() const {
  int64_t n = 0;
  for (const Entry& e : entries_) n += e.value.numel();
  return n;
}

void ParamSet::ZeroGrad() {
  for (Entry& e : entries_) e.value.ZeroGrad();
}

Real ParamSet::GradNorm() const {
  Real s = 0;
  for (const Entry& e : entries_) {
    for (Real g : e.value.grad()) s += g * g;
  }
  return std::sqrt(s);
}

bool ParamSet::AllFinite() const {
  for (const Entry& e : entries_) {
    for (Real v : e.value.data()) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void ParamSet::CopyFrom(const ParamSet& other) {
  SSD_CHECK(other.entries_.size() == entries_.size(), "CopyFrom entry count mismatch");
  for (size_t i = 0; i < entries_.size(); ++i) {
    Entry& dst = entries_[i];
    const Entry& src = other.entries_[i];
    SSD_CHECK(dst.name == src.name && dst.value.shape() == src.value.shape(),
              "CopyFrom layout mismatch at ", dst.name);
    std::copy(src.value.data().begin(), src.value.data().end(),
              dst.value.mutable_data().begin());
    dst.m = src.m;
    dst.v = src.v;
  }
  step_ = other.step_;
}

std::vector<Real> ParamSet::FlatValues() const {
  std::vector<Real> out;
  out.reserve(NumScalars());
  for (const Entry& e : entries_) out.insert(out.end(), e.value.data().begin(), e.value.data().end());
  return out;
}

void AdamConfig::Validate() const {
  if (!(lr > 0)) throw ConfigError("adam: lr must be > 0");
  if (!(beta1 >= 0 && beta1 < 1)) throw ConfigError("adam: beta1 must lie in [0, 1)");
  if (!(beta2 >= 0 && beta2 < 1)) throw ConfigError("adam: beta2 must lie in [0, 1)");
  if (!(eps > 0)) throw ConfigError("adam: eps must be > 0");
}

AdamReport AdamStep(ParamSet& params, const AdamConfig& config) {
  AdamReport report;
  report.grad_norm = params.GradNorm();
  Real scale = 1.0;
  if (config.max_grad_norm > 0 && report.grad_norm > config.max_grad_norm) {
    scale = config.max_grad_norm / report.grad_norm;
    report.clipped = true;
  }
  params.set_step(params.step() + 1);
  const Real t = static_cast<Real>(params.step());
  const Real c1 = 1.0 - std::pow(config.beta1, t);
  const Real c2 = 1.0 - std::pow(config.beta2, t);
  for (ParamSet::Entry& e : params.entries()) {
    auto grad = e.value.grad();
    if (grad.empty()) continue;  // untouched this step: no update
    auto p = e.value.mutable_data();
    for (size_t i = 0; i < p.size(); ++i) {
      const Real g = grad[i] * scale;
      e.m[i] = config.beta1 * e.m[i] + (1 - config.beta1) * g;
      e.v[i] = config.beta2 * e.v[i] + (1 - config.beta2) * g * g;
      e.m[i] = static_cast<float>(e.m[i]);
      e.v[i] = static_cast<float>(e.v[i]);
      const Real mhat = e.m[i] / c1;
      const Real vhat = e.v[i] / c2;
      p[i] = static_cast<float>(p[i] - config.lr * mhat / (std::sqrt(vhat) + config.eps));
    }
  }
  params.ZeroGrad();
  return report;
}

}  // namespace ssdlab::nn
