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

#ifndef SSDLAB_NN_TENSOR_H_
#define SSDLAB_NN_TENSOR_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ssdlab::nn {

using Real = double;
using Shape = std::vector<int>;

int64_t NumElements(const Shape& shape);
std::string ShapeString(const Shape& shape);

// One vertex of the recorded computation graph.
struct Node {
  Shape shape;
  std::vector<Real> data;
  std::vector<Real> grad;  // allocated lazily
  bool requires_grad = false;
  bool is_leaf = true;
  bool consumed = false;
  std::vector<std::shared_ptr<Node>> parents;
  // Reads this node's grad and accumulates into parents' grads.
  std::function<void(Node&)> backward;

  std::vector<Real>& EnsureGrad() {
    if (grad.empty()) grad.assign(data.size(), 0.0);
    return grad;
  }
};

// Shared handle to a graph node. Copies alias the same storage.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  static Tensor Zeros(Shape shape, bool requires_grad = false);
  static Tensor FromVector(Shape shape, std::vector<Real> values,
                           bool requires_grad = false);
  static Tensor Scalar(Real value) { return FromVector({1}, {value}); }

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  int dim(int i) const { return node_->shape.at(i); }
  int rank() const { return static_cast<int>(node_->shape.size()); }
  int64_t numel() const { return static_cast<int64_t>(node_->data.size()); }

  std::span<const Real> data() const { return node_->data; }
  std::span<Real> mutable_data() { return node_->data; }
  // Empty when no gradient has been accumulated.
  std::span<const Real> grad() const { return node_->grad; }
  std::span<Real> mutable_grad() { return node_->EnsureGrad(); }
  bool requires_grad() const { return node_->requires_grad; }
  Real item() const;

  // Reverse-mode sweep from this scalar. Accumulates into every reachable
  // requires_grad leaf and then releases the recorded graph. Throws
  // ContractViolation when the tensor is not a scalar, carries no graph, or
  // its graph was already consumed.
  void Backward() const;

  // Same values, no history.
  Tensor Detach() const;
  void ZeroGrad() { node_->grad.clear(); }

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& node_ptr() const { return node_; }

 private:
  std::shared_ptr<Node> node_;
};

// Graph recording is on by default; a guard turns it off for the current
// thread (used for rollouts and evaluation).
bool GradEnabled();

class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

}  // namespace ssdlab::nn

#endif  // SSDLAB_NN_TENSOR_H_
