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

#ifndef SSDLAB_NN_LAYERS_H_
#define SSDLAB_NN_LAYERS_H_

#include <cstdint>
#include <span>
#include <string>

#include "ssdlab/nn/ops.h"
#include "ssdlab/nn/param_set.h"

namespace ssdlab::nn {

// Initializers draw from a stream keyed on (seed, parameter name), so a
// parameter's initial value does not depend on construction order.
ParamSet::Initializer FanInUniform(uint64_t seed, const std::string& name, int fan_in,
                                   Real gain = 1.0);
// Column blocks of `rows` x `rows` orthogonal matrices.
ParamSet::Initializer OrthogonalBlocks(uint64_t seed, const std::string& name, int rows,
                                       int blocks);

// Layers are thin views of ParamSet entries. Creating a layer under a name
// that already exists binds to the existing tensors (parameter sharing).
struct Dense {
  Tensor w;  // [in, out]
  Tensor b;  // [out]

  static Dense Create(ParamSet& params, const std::string& name, int in, int out,
                      uint64_t seed, Real gain = 1.0);
  Tensor operator()(const Tensor& x) const { return Linear(x, w, b); }
  int in() const { return w.dim(0); }
  int out() const { return w.dim(1); }
};

// 3x3 (or any KHxKW) valid-padding stride-1 convolution.
struct Conv {
  Tensor w;  // [kh, kw, in_channels, filters]
  Tensor b;  // [filters]

  static Conv Create(ParamSet& params, const std::string& name, int in_channels,
                     int filters, int kernel, uint64_t seed);
  Tensor operator()(const Tensor& x) const { return Conv2d(x, w, b); }
  int filters() const { return w.dim(3); }
  int kernel() const { return w.dim(0); }
};

// Gated recurrent unit. Gate column order in the fused weights is (r, z, n):
//   r = sig(x Wr + br + h Ur + cr), z = sig(x Wz + bz + h Uz + cz)
//   n = tanh(x Wn + bn + r * (h Un + cn)), h' = (1 - z) * n + z * h
struct GruCell {
  Tensor wx;  // [in, 3H]
  Tensor wh;  // [H, 3H]
  Tensor bx;  // [3H]
  Tensor bh;  // [3H]

  static GruCell Create(ParamSet& params, const std::string& name, int in, int hidden,
                        uint64_t seed);
  Tensor operator()(const Tensor& x, const Tensor& h) const;
  int hidden() const { return wh.dim(0); }
};

struct GruUnroll {
  Tensor outputs;  // [T*B, H], time-major
  Tensor last;     // [B, H]
};

// Runs `cell` over time-major inputs [T*B, in] from h0 [B, H].
// keep[t*B + b] = 0 zeroes sequence b's state before step t.
GruUnroll UnrollGru(const GruCell& cell, const Tensor& inputs, const Tensor& h0,
                    std::span<const Real> keep);

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_LAYERS_H_
