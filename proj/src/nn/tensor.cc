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

#include "ssdlab/nn/tensor.h"

#include <unordered_set>

#include "ssdlab/common/error.h"

namespace ssdlab::nn {

namespace {

thread_local bool g_grad_enabled = true;

}  // namespace

int64_t NumElements(const Shape& shape) {
  int64_t n = 1;
  for (int d : shape) n *= d;
  return n;
}

std::string ShapeString(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

Tensor Tensor::Zeros(Shape shape, bool requires_grad) {
  auto node = std::make_shared<Node>();
  node->data.assign(NumElements(shape), 0.0);
  node->shape = std::move(shape);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::FromVector(Shape shape, std::vector<Real> values, bool requires_grad) {
  SSD_CHECK(NumElements(shape) == static_cast<int64_t>(values.size()),
            "shape ", ShapeString(shape), " vs ", values.size(), " values");
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->data = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Real Tensor::item() const {
  SSD_CHECK(numel() == 1, "item() on shape ", ShapeString(shape()));
  return node_->data[0];
}

Tensor Tensor::Detach() const {
  return FromVector(node_->shape, node_->data, false);
}

void Tensor::Backward() const {
  SSD_CHECK(defined());
  SSD_CHECK(numel() == 1, "backward from non-scalar ", ShapeString(shape()));
  SSD_CHECK(node_->requires_grad, "backward on a tensor without recorded graph");
  SSD_CHECK(!node_->consumed, "backward on an already consumed graph");

  // Iterative post-order DFS over interior nodes.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && !parent->is_leaf && visited.insert(parent).second) {
        SSD_CHECK(!parent->consumed, "graph shares a consumed node");
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  node_->EnsureGrad()[0] += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->backward && !node->grad.empty()) node->backward(*node);
  }
  for (Node* node : order) {
    if (node->is_leaf) continue;
    node->backward = nullptr;
    node->parents.clear();
    node->grad.clear();
    node->grad.shrink_to_fit();
    node->consumed = true;
  }
}

bool GradEnabled() { return g_grad_enabled; }

NoGradGuard::NoGradGuard() : previous_(g_grad_enabled) { g_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { g_grad_enabled = previous_; }

}  // namespace ssdlab::nn
