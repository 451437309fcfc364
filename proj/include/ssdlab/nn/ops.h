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

#ifndef SSDLAB_NN_OPS_H_
#define SSDLAB_NN_OPS_H_

#include <span>
#include <vector>

#include "ssdlab/nn/tensor.h"

// Differentiable operations. Shapes must match exactly unless stated; there is
// no implicit broadcasting. Matrices are row-major [rows, cols]; images are
// NHWC [batch, height, width, channels].
namespace ssdlab::nn {

// Elementwise.
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Minimum(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& a, Real s);
Tensor AddScalar(const Tensor& a, Real s);
Tensor Square(const Tensor& a);
Tensor Relu(const Tensor& a);
Tensor Sigmoid(const Tensor& a);
Tensor Tanh(const Tensor& a);
Tensor Exp(const Tensor& a);
Tensor Log(const Tensor& a);
// Gradient passes where lo <= a <= hi.
Tensor Clamp(const Tensor& a, Real lo, Real hi);

// Shape manipulation.
Tensor Reshape(const Tensor& a, Shape shape);
Tensor ConcatCols(const std::vector<Tensor>& parts);
Tensor ConcatRows(const std::vector<Tensor>& parts);
Tensor SliceCols(const Tensor& a, int begin, int end);
Tensor SliceRows(const Tensor& a, int begin, int end);

// Linear algebra.
Tensor MatMul(const Tensor& a, const Tensor& b);
// x [M,K] * w [K,N] + b [N].
Tensor Linear(const Tensor& x, const Tensor& w, const Tensor& b);
// Valid-padding stride-1 convolution. x [B,H,W,C], w [KH,KW,C,F], b [F].
Tensor Conv2d(const Tensor& x, const Tensor& w, const Tensor& b);
// Scales row i of a [M,N] by m[i] (m has M elements).
Tensor MulRows(const Tensor& a, const Tensor& m);

// Reductions.
Tensor Sum(const Tensor& a);
Tensor Mean(const Tensor& a);
Tensor SumRows(const Tensor& a);  // [M,N] -> [M]
// Sum of squared entries per row: [M,N] -> [M].
Tensor SquaredL2Rows(const Tensor& a);

// Row-wise log-softmax of [M,N].
Tensor LogSoftmax(const Tensor& logits);
// Picks a[i, index[i]] from [M,N] into [M].
Tensor GatherCols(const Tensor& a, std::span<const int> index);
// Per-row -log softmax(logits)[target]. Rows with a negative target yield 0
// and receive no gradient.
Tensor SoftmaxCrossEntropy(const Tensor& logits, std::span<const int> targets);
// Per-row entropy of softmax(logits): [M,N] -> [M].
Tensor Entropy(const Tensor& logits);

// Non-differentiable helpers.
std::vector<Real> Softmax(std::span<const Real> logits);
Tensor OneHotRows(std::span<const int> index, int width);

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_OPS_H_
