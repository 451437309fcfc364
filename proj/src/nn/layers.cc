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

#include "ssdlab/nn/layers.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"

namespace ssdlab::nn {

namespace {

uint64_t NameHash(const std::string& name) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CounterRng InitRng(uint64_t seed, const std::string& name) {
  return CounterRng(HashKey(seed, RngPurpose::kParamInit, {NameHash(name)}));
}

ParamSet::Initializer ZeroInit() {
  return [](std::span<Real> v) { std::fill(v.begin(), v.end(), 0.0); };
}

}  // namespace

ParamSet::Initializer FanInUniform(uint64_t seed, const std::string& name, int fan_in,
                                   Real gain) {
  return [seed, name, fan_in, gain](std::span<Real> v) {
    CounterRng rng = InitRng(seed, name);
    const Real bound = gain / std::sqrt(static_cast<Real>(fan_in));
    for (Real& x : v) x = rng.Uniform(-bound, bound);
  };
}

ParamSet::Initializer OrthogonalBlocks(uint64_t seed, const std::string& name, int rows,
                                       int blocks) {
  return [seed, name, rows, blocks](std::span<Real> v) {
    SSD_CHECK(static_cast<int64_t>(v.size()) == static_cast<int64_t>(rows) * rows * blocks);
    CounterRng rng = InitRng(seed, name);
    const int cols = rows * blocks;
    for (int g = 0; g < blocks; ++g) {
      Eigen::MatrixXd a(rows, rows);
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < rows; ++j) a(i, j) = rng.Normal();
      }
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
      Eigen::MatrixXd q = qr.householderQ();
      Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < rows; ++j) {
        if (r(j, j) < 0) q.col(j) *= -1.0;
      }
      for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < rows; ++j) v[static_cast<size_t>(i) * cols + g * rows + j] = q(i, j);
      }
    }
  };
}

Dense Dense::Create(ParamSet& params, const std::string& name, int in, int out,
                    uint64_t seed, Real gain) {
  SSD_CHECK(in > 0 && out > 0, "Dense ", name, " sizes");
  Dense d;
  d.w = params.GetOrCreate(name + "/w", {in, out}, FanInUniform(seed, name + "/w", in, gain));
  d.b = params.GetOrCreate(name + "/b", {out}, ZeroInit());
  return d;
}

Conv Conv::Create(ParamSet& params, const std::string& name, int in_channels, int filters,
                  int kernel, uint64_t seed) {
  SSD_CHECK(in_channels > 0 && filters > 0 && kernel > 0, "Conv ", name, " sizes");
  Conv c;
  const int fan_in = kernel * kernel * in_channels;
  c.w = params.GetOrCreate(name + "/w", {kernel, kernel, in_channels, filters},
                           FanInUniform(seed, name + "/w", fan_in));
  c.b = params.GetOrCreate(name + "/b", {filters}, ZeroInit());
  return c;
}

GruCell GruCell::Create(ParamSet& params, const std::string& name, int in, int hidden,
                        uint64_t seed) {
  SSD_CHECK(in > 0 && hidden > 0, "GruCell ", name, " sizes");
  GruCell g;
  g.wx = params.GetOrCreate(name + "/wx", {in, 3 * hidden},
                            FanInUniform(seed, name + "/wx", in));
  g.wh = params.GetOrCreate(name + "/wh", {hidden, 3 * hidden},
                            OrthogonalBlocks(seed, name + "/wh", hidden, 3));
  g.bx = params.GetOrCreate(name + "/bx", {3 * hidden}, ZeroInit());
  g.bh = params.GetOrCreate(name + "/bh", {3 * hidden}, ZeroInit());
  return g;
}

Tensor GruCell::operator()(const Tensor& x, const Tensor& h) const {
  const int hs = hidden();
  SSD_CHECK(h.rank() == 2 && h.dim(1) == hs, "GRU hidden shape ", ShapeString(h.shape()));
  SSD_CHECK(x.rank() == 2 && x.dim(0) == h.dim(0), "GRU batch mismatch");
  Tensor gx = Linear(x, wx, bx);
  Tensor gh = Linear(h, wh, bh);
  Tensor r = Sigmoid(Add(SliceCols(gx, 0, hs), SliceCols(gh, 0, hs)));
  Tensor z = Sigmoid(Add(SliceCols(gx, hs, 2 * hs), SliceCols(gh, hs, 2 * hs)));
  Tensor n = Tanh(Add(SliceCols(gx, 2 * hs, 3 * hs), Mul(r, SliceCols(gh, 2 * hs, 3 * hs))));
  // (1 - z) * n + z * h == n + z * (h - n)
  return Add(n, Mul(z, Sub(h, n)));
}

GruUnroll UnrollGru(const GruCell& cell, const Tensor& inputs, const Tensor& h0,
                    std::span<const Real> keep) {
  const int batch = h0.dim(0);
  SSD_CHECK(batch > 0 && inputs.rank() == 2 && inputs.dim(0) % batch == 0,
            "unroll batch mismatch");
  const int steps = inputs.dim(0) / batch;
  SSD_CHECK(static_cast<int>(keep.size()) == steps * batch, "keep mask size");
  Tensor h = h0;
  std::vector<Tensor> hs;
  hs.reserve(steps);
  for (int t = 0; t < steps; ++t) {
    auto mask = keep.subspan(static_cast<size_t>(t) * batch, batch);
    if (!std::all_of(mask.begin(), mask.end(), [](Real m) { return m == 1.0; })) {
      h = MulRows(h, Tensor::FromVector({batch}, std::vector<Real>(mask.begin(), mask.end())));
    }
    h = cell(SliceRows(inputs, t * batch, (t + 1) * batch), h);
    hs.push_back(h);
  }
  return {ConcatRows(hs), h};
}

}  // namespace ssdlab::nn
