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

#include "ssdlab/nn/ops.h"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "ssdlab/common/error.h"

namespace ssdlab::nn {

namespace {

using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapR = Eigen::Map<MatR>;
using CMapR = Eigen::Map<const MatR>;


using CRowMap = Eigen::Map<const Eigen::Matrix<Real, 1, Eigen::Dynamic>>;

using BackwardFn = std::function<void(Node&)>;

// Wraps freshly computed data in a node. When recording is enabled and any
// input needs a gradient, the node keeps its inputs and backward rule.
Tensor MakeResult(Shape shape, std::vector<Real> data,
                  std::initializer_list<const Tensor*> inputs, BackwardFn fn) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  bool needs = false;
  if (GradEnabled()) {
    for (const Tensor* in : inputs) needs = needs || in->requires_grad();
  }
  if (needs) {
    node->requires_grad = true;
    node->is_leaf = false;
    for (const Tensor* in : inputs) node->parents.push_back(in->node_ptr());
    node->backward = std::move(fn);
  }
  return Tensor(std::move(node));
}

Tensor MakeResultVec(Shape shape, std::vector<Real> data,
                     const std::vector<Tensor>& inputs, BackwardFn fn) {
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->data = std::move(data);
  bool needs = false;
  if (GradEnabled()) {
    for (const Tensor& in : inputs) needs = needs || in.requires_grad();
  }
  if (needs) {
    node->requires_grad = true;
    node->is_leaf = false;
    for (const Tensor& in : inputs) node->parents.push_back(in.node_ptr());
    node->backward = std::move(fn);
  }
  return Tensor(std::move(node));
}

// Parent gradient buffer, or nullptr when that parent does not need one.
Real* GradOf(Node& out, size_t i) {
  Node* p = out.parents[i].get();
  return p->requires_grad ? p->EnsureGrad().data() : nullptr;
}

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  SSD_CHECK(a.defined() && b.defined(), op, ": undefined input");
  SSD_CHECK(a.shape() == b.shape(), op, ": shape ", ShapeString(a.shape()), " vs ",
            ShapeString(b.shape()));
}

void CheckMatrix(const Tensor& a, const char* op) {
  SSD_CHECK(a.defined() && a.rank() == 2, op, ": expected a matrix, got ",
            a.defined() ? ShapeString(a.shape()) : std::string("undefined"));
}

// Elementwise unary op with derivative expressed through input x and output y.
template <typename F, typename D>
Tensor Unary(const Tensor& a, F f, D dfdx) {
  SSD_CHECK(a.defined());
  std::vector<Real> y(a.numel());
  auto x = a.data();
  for (size_t i = 0; i < y.size(); ++i) y[i] = f(x[i]);
  return MakeResult(a.shape(), std::move(y), {&a}, [dfdx](Node& out) {
    Real* ga = GradOf(out, 0);
    const auto& x = out.parents[0]->data;
    for (size_t i = 0; i < out.grad.size(); ++i) {
      ga[i] += out.grad[i] * dfdx(x[i], out.data[i]);
    }
  });
}

}  // namespace

Tensor Add(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Add");
  std::vector<Real> y(a.numel());
  for (size_t i = 0; i < y.size(); ++i) y[i] = a.data()[i] + b.data()[i];
  return MakeResult(a.shape(), std::move(y), {&a, &b}, [](Node& out) {
    for (size_t k = 0; k < 2; ++k) {
      if (Real* g = GradOf(out, k)) {
        for (size_t i = 0; i < out.grad.size(); ++i) g[i] += out.grad[i];
      }
    }
  });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Sub");
  std::vector<Real> y(a.numel());
  for (size_t i = 0; i < y.size(); ++i) y[i] = a.data()[i] - b.data()[i];
  return MakeResult(a.shape(), std::move(y), {&a, &b}, [](Node& out) {
    if (Real* g = GradOf(out, 0)) {
      for (size_t i = 0; i < out.grad.size(); ++i) g[i] += out.grad[i];
    }
    if (Real* g = GradOf(out, 1)) {
      for (size_t i = 0; i < out.grad.size(); ++i) g[i] -= out.grad[i];
    }
  });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Mul");
  std::vector<Real> y(a.numel());
  for (size_t i = 0; i < y.size(); ++i) y[i] = a.data()[i] * b.data()[i];
  return MakeResult(a.shape(), std::move(y), {&a, &b}, [](Node& out) {
    const auto& x0 = out.parents[0]->data;
    const auto& x1 = out.parents[1]->data;
    if (Real* g = GradOf(out, 0)) {
      for (size_t i = 0; i < out.grad.size(); ++i) g[i] += out.grad[i] * x1[i];
    }
    if (Real* g = GradOf(out, 1)) {
      for (size_t i = 0; i < out.grad.size(); ++i) g[i] += out.grad[i] * x0[i];
    }
  });
}

Tensor Minimum(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Minimum");
  std::vector<Real> y(a.numel());
  for (size_t i = 0; i < y.size(); ++i) y[i] = std::min(a.data()[i], b.data()[i]);
  return MakeResult(a.shape(), std::move(y), {&a, &b}, [](Node& out) {
    const auto& x0 = out.parents[0]->data;
    const auto& x1 = out.parents[1]->data;
    Real* g0 = GradOf(out, 0);
    Real* g1 = GradOf(out, 1);
    for (size_t i = 0; i < out.grad.size(); ++i) {
      // Ties route the gradient to the first argument.
      if (x0[i] <= x1[i]) {
        if (g0) g0[i] += out.grad[i];
      } else if (g1) {
        g1[i] += out.grad[i];
      }
    }
  });
}

Tensor Scale(const Tensor& a, Real s) {
  return Unary(a, [s](Real x) { return s * x; }, [s](Real, Real) { return s; });
}

Tensor AddScalar(const Tensor& a, Real s) {
  return Unary(a, [s](Real x) { return x + s; }, [](Real, Real) { return 1.0; });
}

Tensor Square(const Tensor& a) {
  return Unary(a, [](Real x) { return x * x; }, [](Real x, Real) { return 2.0 * x; });
}

Tensor Relu(const Tensor& a) {
  return Unary(a, [](Real x) { return x > 0 ? x : 0.0; },
               [](Real x, Real) { return x > 0 ? 1.0 : 0.0; });
}

Tensor Sigmoid(const Tensor& a) {
  return Unary(
      a,
      [](Real x) {
        if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
        Real e = std::exp(x);
        return e / (1.0 + e);
      },
      [](Real, Real y) { return y * (1.0 - y); });
}

Tensor Tanh(const Tensor& a) {
  return Unary(a, [](Real x) { return std::tanh(x); },
               [](Real, Real y) { return 1.0 - y * y; });
}

Tensor Exp(const Tensor& a) {
  return Unary(a, [](Real x) { return std::exp(x); }, [](Real, Real y) { return y; });
}

Tensor Log(const Tensor& a) {
  return Unary(a, [](Real x) { return std::log(x); }, [](Real x, Real) { return 1.0 / x; });
}

Tensor Clamp(const Tensor& a, Real lo, Real hi) {
  SSD_CHECK(lo <= hi, "Clamp bounds");
  return Unary(a, [lo, hi](Real x) { return std::clamp(x, lo, hi); },
               [lo, hi](Real x, Real) { return (x >= lo && x <= hi) ? 1.0 : 0.0; });
}

Tensor Reshape(const Tensor& a, Shape shape) {
  SSD_CHECK(NumElements(shape) == a.numel(), "Reshape ", ShapeString(a.shape()), " to ",
            ShapeString(shape));
  std::vector<Real> y(a.data().begin(), a.data().end());
  return MakeResult(std::move(shape), std::move(y), {&a}, [](Node& out) {
    Real* g = GradOf(out, 0);
    for (size_t i = 0; i < out.grad.size(); ++i) g[i] += out.grad[i];
  });
}

Tensor ConcatCols(const std::vector<Tensor>& parts) {
  SSD_CHECK(!parts.empty(), "ConcatCols of nothing");
  const int rows = parts[0].rank() == 2 ? parts[0].dim(0) : -1;
  std::vector<int> widths;
  int total = 0;
  for (const Tensor& p : parts) {
    CheckMatrix(p, "ConcatCols");
    SSD_CHECK(p.dim(0) == rows, "ConcatCols row mismatch");
    widths.push_back(p.dim(1));
    total += p.dim(1);
  }
  std::vector<Real> y(static_cast<size_t>(rows) * total);
  int offset = 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    auto src = parts[k].data();
    for (int r = 0; r < rows; ++r) {
      std::copy_n(src.begin() + static_cast<size_t>(r) * widths[k], widths[k],
                  y.begin() + static_cast<size_t>(r) * total + offset);
    }
    offset += widths[k];
  }
  return MakeResultVec({rows, total}, std::move(y), parts,
                       [rows, total, widths](Node& out) {
                         int offset = 0;
                         for (size_t k = 0; k < widths.size(); ++k) {
                           if (Real* g = GradOf(out, k)) {
                             for (int r = 0; r < rows; ++r) {
                               for (int c = 0; c < widths[k]; ++c) {
                                 g[static_cast<size_t>(r) * widths[k] + c] +=
                                     out.grad[static_cast<size_t>(r) * total + offset + c];
                               }
                             }
                           }
                           offset += widths[k];
                         }
                       });
}

Tensor ConcatRows(const std::vector<Tensor>& parts) {
  SSD_CHECK(!parts.empty(), "ConcatRows of nothing");
  CheckMatrix(parts[0], "ConcatRows");
  const int cols = parts[0].dim(1);
  int rows = 0;
  std::vector<Real> y;
  for (const Tensor& p : parts) {
    CheckMatrix(p, "ConcatRows");
    SSD_CHECK(p.dim(1) == cols, "ConcatRows column mismatch");
    rows += p.dim(0);
    y.insert(y.end(), p.data().begin(), p.data().end());
  }
  return MakeResultVec({rows, cols}, std::move(y), parts, [](Node& out) {
    size_t offset = 0;
    for (size_t k = 0; k < out.parents.size(); ++k) {
      const size_t n = out.parents[k]->data.size();
      if (Real* g = GradOf(out, k)) {
        for (size_t i = 0; i < n; ++i) g[i] += out.grad[offset + i];
      }
      offset += n;
    }
  });
}

Tensor SliceCols(const Tensor& a, int begin, int end) {
  CheckMatrix(a, "SliceCols");
  const int rows = a.dim(0), cols = a.dim(1);
  SSD_CHECK(0 <= begin && begin <= end && end <= cols, "SliceCols range");
  const int w = end - begin;
  std::vector<Real> y(static_cast<size_t>(rows) * w);
  for (int r = 0; r < rows; ++r) {
    std::copy_n(a.data().begin() + static_cast<size_t>(r) * cols + begin, w,
                y.begin() + static_cast<size_t>(r) * w);
  }
  return MakeResult({rows, w}, std::move(y), {&a}, [rows, cols, begin, w](Node& out) {
    Real* g = GradOf(out, 0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < w; ++c) {
        g[static_cast<size_t>(r) * cols + begin + c] += out.grad[static_cast<size_t>(r) * w + c];
      }
    }
  });
}

Tensor SliceRows(const Tensor& a, int begin, int end) {
  CheckMatrix(a, "SliceRows");
  const int rows = a.dim(0), cols = a.dim(1);
  SSD_CHECK(0 <= begin && begin <= end && end <= rows, "SliceRows range");
  const size_t off = static_cast<size_t>(begin) * cols;
  std::vector<Real> y(a.data().begin() + off,
                      a.data().begin() + static_cast<size_t>(end) * cols);
  return MakeResult({end - begin, cols}, std::move(y), {&a}, [off](Node& out) {
    Real* g = GradOf(out, 0);
    for (size_t i = 0; i < out.grad.size(); ++i) g[off + i] += out.grad[i];
  });
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  CheckMatrix(a, "MatMul");
  CheckMatrix(b, "MatMul");
  const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
  SSD_CHECK(b.dim(0) == k, "MatMul inner dims ", k, " vs ", b.dim(0));
  std::vector<Real> y(static_cast<size_t>(m) * n);
  MapR(y.data(), m, n).noalias() = CMapR(a.data().data(), m, k) * CMapR(b.data().data(), k, n);
  return MakeResult({m, n}, std::move(y), {&a, &b}, [m, k, n](Node& out) {
    CMapR dy(out.grad.data(), m, n);
    if (Real* g = GradOf(out, 0)) {
      MapR(g, m, k).noalias() += dy * CMapR(out.parents[1]->data.data(), k, n).transpose();
    }
    if (Real* g = GradOf(out, 1)) {
      MapR(g, k, n).noalias() += CMapR(out.parents[0]->data.data(), m, k).transpose() * dy;
    }
  });
}

Tensor Linear(const Tensor& x, const Tensor& w, const Tensor& b) {
  CheckMatrix(x, "Linear");
  CheckMatrix(w, "Linear");
  const int m = x.dim(0), k = x.dim(1), n = w.dim(1);
  SSD_CHECK(w.dim(0) == k, "Linear input width ", k, " vs weight rows ", w.dim(0));
  SSD_CHECK(b.numel() == n, "Linear bias size");
  std::vector<Real> y(static_cast<size_t>(m) * n);
  MapR ym(y.data(), m, n);
  ym.noalias() = CMapR(x.data().data(), m, k) * CMapR(w.data().data(), k, n);
  ym.rowwise() += CRowMap(b.data().data(), n);
  return MakeResult({m, n}, std::move(y), {&x, &w, &b}, [m, k, n](Node& out) {
    CMapR dy(out.grad.data(), m, n);
    if (Real* g = GradOf(out, 0)) {
      MapR(g, m, k).noalias() += dy * CMapR(out.parents[1]->data.data(), k, n).transpose();
    }
    if (Real* g = GradOf(out, 1)) {
      MapR(g, k, n).noalias() += CMapR(out.parents[0]->data.data(), m, k).transpose() * dy;
    }
    if (Real* g = GradOf(out, 2)) {
      MapR(g, 1, n) += dy.colwise().sum();
    }
  });
}

Tensor Conv2d(const Tensor& x, const Tensor& w, const Tensor& b) {
  SSD_CHECK(x.defined() && x.rank() == 4, "Conv2d input must be [B,H,W,C]");
  SSD_CHECK(w.defined() && w.rank() == 4, "Conv2d weight must be [KH,KW,C,F]");
  const int batch = x.dim(0), h = x.dim(1), wd = x.dim(2), c = x.dim(3);
  const int kh = w.dim(0), kw = w.dim(1), f = w.dim(3);
  SSD_CHECK(w.dim(2) == c, "Conv2d channel mismatch ", c, " vs ", w.dim(2));
  SSD_CHECK(b.numel() == f, "Conv2d bias size");
  SSD_CHECK(h >= kh && wd >= kw, "Conv2d input smaller than kernel");
  const int ho = h - kh + 1, wo = wd - kw + 1;
  const int rows = batch * ho * wo, patch = kh * kw * c, seg = kw * c;

  // im2col: each kernel row of a patch is one contiguous run of the input.
  auto cols = std::make_shared<std::vector<Real>>(static_cast<size_t>(rows) * patch);
  const Real* xd = x.data().data();
  for (int n = 0; n < batch; ++n) {
    for (int i = 0; i < ho; ++i) {
      for (int j = 0; j < wo; ++j) {
        Real* dst = cols->data() + (static_cast<size_t>((n * ho + i) * wo + j)) * patch;
        for (int ki = 0; ki < kh; ++ki) {
          const Real* src = xd + (static_cast<size_t>((n * h + i + ki) * wd + j)) * c;
          std::copy_n(src, seg, dst + ki * seg);
        }
      }
    }
  }
  std::vector<Real> y(static_cast<size_t>(rows) * f);
  MapR ym(y.data(), rows, f);
  ym.noalias() = CMapR(cols->data(), rows, patch) * CMapR(w.data().data(), patch, f);
  ym.rowwise() += CRowMap(b.data().data(), f);

  return MakeResult(
      {batch, ho, wo, f}, std::move(y), {&x, &w, &b},
      [=](Node& out) {
        CMapR dy(out.grad.data(), rows, f);
        if (Real* g = GradOf(out, 1)) {
          MapR(g, patch, f).noalias() += CMapR(cols->data(), rows, patch).transpose() * dy;
        }
        if (Real* g = GradOf(out, 2)) MapR(g, 1, f) += dy.colwise().sum();
        if (Real* g = GradOf(out, 0)) {
          MatR dcols = dy * CMapR(out.parents[1]->data.data(), patch, f).transpose();
          for (int n = 0; n < batch; ++n) {
            for (int i = 0; i < ho; ++i) {
              for (int j = 0; j < wo; ++j) {
                const Real* src = dcols.data() + (static_cast<size_t>((n * ho + i) * wo + j)) * patch;
                for (int ki = 0; ki < kh; ++ki) {
                  Real* dst = g + (static_cast<size_t>((n * h + i + ki) * wd + j)) * c;
                  for (int e = 0; e < seg; ++e) dst[e] += src[ki * seg + e];
                }
              }
            }
          }
        }
      });
}

Tensor MulRows(const Tensor& a, const Tensor& m) {
  CheckMatrix(a, "MulRows");
  const int rows = a.dim(0), cols = a.dim(1);
  SSD_CHECK(m.numel() == rows, "MulRows scale size");
  std::vector<Real> y(a.numel());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const size_t i = static_cast<size_t>(r) * cols + c;
      y[i] = a.data()[i] * m.data()[r];
    }
  }
  return MakeResult(a.shape(), std::move(y), {&a, &m}, [rows, cols](Node& out) {
    const auto& xa = out.parents[0]->data;
    const auto& xm = out.parents[1]->data;
    Real* ga = GradOf(out, 0);
    Real* gm = GradOf(out, 1);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const size_t i = static_cast<size_t>(r) * cols + c;
        if (ga) ga[i] += out.grad[i] * xm[r];
        if (gm) gm[r] += out.grad[i] * xa[i];
      }
    }
  });
}

Tensor Sum(const Tensor& a) {
  SSD_CHECK(a.defined());
  Real s = 0;
  for (Real v : a.data()) s += v;
  return MakeResult({1}, {s}, {&a}, [](Node& out) {
    Real* g = GradOf(out, 0);
    const size_t n = out.parents[0]->data.size();
    for (size_t i = 0; i < n; ++i) g[i] += out.grad[0];
  });
}

Tensor Mean(const Tensor& a) {
  SSD_CHECK(a.defined() && a.numel() > 0, "Mean of empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<Real>(a.numel()));
}

Tensor SumRows(const Tensor& a) {
  CheckMatrix(a, "SumRows");
  const int rows = a.dim(0), cols = a.dim(1);
  std::vector<Real> y(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) y[r] += a.data()[static_cast<size_t>(r) * cols + c];
  }
  return MakeResult({rows}, std::move(y), {&a}, [rows, cols](Node& out) {
    Real* g = GradOf(out, 0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) g[static_cast<size_t>(r) * cols + c] += out.grad[r];
    }
  });
}

Tensor SquaredL2Rows(const Tensor& a) { return SumRows(Square(a)); }

Tensor LogSoftmax(const Tensor& logits) {
  CheckMatrix(logits, "LogSoftmax");
  const int rows = logits.dim(0), cols = logits.dim(1);
  std::vector<Real> y(logits.numel());
  for (int r = 0; r < rows; ++r) {
    const Real* x = logits.data().data() + static_cast<size_t>(r) * cols;
    Real mx = -std::numeric_limits<Real>::infinity();
    for (int c = 0; c < cols; ++c) mx = std::max(mx, x[c]);
    Real s = 0;
    for (int c = 0; c < cols; ++c) s += std::exp(x[c] - mx);
    const Real lse = mx + std::log(s);
    for (int c = 0; c < cols; ++c) y[static_cast<size_t>(r) * cols + c] = x[c] - lse;
  }
  return MakeResult(logits.shape(), std::move(y), {&logits}, [rows, cols](Node& out) {
    Real* g = GradOf(out, 0);
    for (int r = 0; r < rows; ++r) {
      const size_t o = static_cast<size_t>(r) * cols;
      Real gs = 0;
      for (int c = 0; c < cols; ++c) gs += out.grad[o + c];
      for (int c = 0; c < cols; ++c) {
        g[o + c] += out.grad[o + c] - std::exp(out.data[o + c]) * gs;
      }
    }
  });
}

Tensor GatherCols(const Tensor& a, std::span<const int> index) {
  CheckMatrix(a, "GatherCols");
  const int rows = a.dim(0), cols = a.dim(1);
  SSD_CHECK(static_cast<int>(index.size()) == rows, "GatherCols index count");
  std::vector<int> idx(index.begin(), index.end());
  std::vector<Real> y(rows);
  for (int r = 0; r < rows; ++r) {
    SSD_CHECK(0 <= idx[r] && idx[r] < cols, "GatherCols index out of range");
    y[r] = a.data()[static_cast<size_t>(r) * cols + idx[r]];
  }
  return MakeResult({rows}, std::move(y), {&a}, [idx, cols](Node& out) {
    Real* g = GradOf(out, 0);
    for (size_t r = 0; r < idx.size(); ++r) g[r * cols + idx[r]] += out.grad[r];
  });
}

Tensor SoftmaxCrossEntropy(const Tensor& logits, std::span<const int> targets) {
  CheckMatrix(logits, "SoftmaxCrossEntropy");
  const int rows = logits.dim(0), cols = logits.dim(1);
  SSD_CHECK(static_cast<int>(targets.size()) == rows, "SoftmaxCrossEntropy target count");
  std::vector<int> tgt(targets.begin(), targets.end());
  auto probs = std::make_shared<std::vector<Real>>(logits.numel());
  std::vector<Real> y(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    const size_t o = static_cast<size_t>(r) * cols;
    const Real* x = logits.data().data() + o;
    Real mx = -std::numeric_limits<Real>::infinity();
    for (int c = 0; c < cols; ++c) mx = std::max(mx, x[c]);
    Real s = 0;
    for (int c = 0; c < cols; ++c) s += std::exp(x[c] - mx);
    const Real lse = mx + std::log(s);
    for (int c = 0; c < cols; ++c) (*probs)[o + c] = std::exp(x[c] - lse);
    SSD_CHECK(tgt[r] < cols, "SoftmaxCrossEntropy target out of range");
    if (tgt[r] >= 0) y[r] = lse - x[tgt[r]];
  }
  return MakeResult({rows}, std::move(y), {&logits}, [tgt, probs, cols](Node& out) {
    Real* g = GradOf(out, 0);
    for (size_t r = 0; r < tgt.size(); ++r) {
      if (tgt[r] < 0) continue;
      const size_t o = r * cols;
      for (int c = 0; c < cols; ++c) {
        g[o + c] += out.grad[r] * ((*probs)[o + c] - (c == tgt[r] ? 1.0 : 0.0));
      }
    }
  });
}

Tensor Entropy(const Tensor& logits) {
  Tensor lp = LogSoftmax(logits);
  return Scale(SumRows(Mul(Exp(lp), lp)), -1.0);
}

std::vector<Real> Softmax(std::span<const Real> logits) {
  std::vector<Real> p(logits.size());
  if (logits.empty()) return p;
  const Real mx = *std::max_element(logits.begin(), logits.end());
  Real s = 0;
  for (size_t i = 0; i < p.size(); ++i) s += (p[i] = std::exp(logits[i] - mx));
  for (Real& v : p) v /= s;
  return p;
}

Tensor OneHotRows(std::span<const int> index, int width) {
  std::vector<Real> y(index.size() * width, 0.0);
  for (size_t r = 0; r < index.size(); ++r) {
    if (index[r] >= 0) {
      SSD_CHECK(index[r] < width, "OneHotRows index out of range");
      y[r * width + index[r]] = 1.0;
    }
  }
  return Tensor::FromVector({static_cast<int>(index.size()), width}, std::move(y));
}

}  // namespace ssdlab::nn
