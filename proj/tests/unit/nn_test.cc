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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "gtest/gtest.h"
#include "ssdlab/common/error.h"
#include "ssdlab/common/rng.h"
#include "ssdlab/nn/checkpoint.h"
#include "ssdlab/nn/layers.h"
#include "ssdlab/nn/networks.h"
#include "ssdlab/nn/ops.h"
#include "ssdlab/nn/param_set.h"
#include "support/grad_check.h"

namespace ssdlab::nn {
namespace {

using ::ssdlab::testing::CheckGradients;
using ::ssdlab::testing::RandomTensor;

constexpr double kGradTol = 1e-3;

Tensor Project(const Tensor& y, const Tensor& direction) { return Sum(Mul(y, direction)); }

TEST(TensorTest, QuadraticGradientIsTwoP) {
  CounterRng rng(1);
  Tensor p = RandomTensor(rng, {7});
  Sum(Mul(p, p)).Backward();
  for (int i = 0; i < 7; ++i) EXPECT_DOUBLE_EQ(p.grad()[i], 2 * p.data()[i]);
}

TEST(TensorTest, ConstantLossGivesZeroGradient) {
  CounterRng rng(2);
  Tensor p = RandomTensor(rng, {4});
  AddScalar(Scale(Sum(p), 0.0), 3.0).Backward();
  for (double g : p.grad()) EXPECT_EQ(g, 0.0);
}

TEST(TensorTest, BackwardOnDetachedScalarIsContractViolation) {
  CounterRng rng(3);
  Tensor p = RandomTensor(rng, {3});
  EXPECT_THROW(Sum(p).Detach().Backward(), ContractViolation);
  EXPECT_THROW(Tensor::Scalar(1.0).Backward(), ContractViolation);
  {
    NoGradGuard guard;
    EXPECT_THROW(Sum(p).Backward(), ContractViolation);
  }
}

TEST(TensorTest, GraphIsConsumedByBackward) {
  CounterRng rng(4);
  Tensor p = RandomTensor(rng, {3});
  Tensor loss = Sum(Square(p));
  loss.Backward();
  EXPECT_THROW(loss.Backward(), ContractViolation);
}

TEST(TensorTest, GradientsAccumulateAcrossBackwardCalls) {
  Tensor p = Tensor::FromVector({2}, {1.0, -2.0}, true);
  Sum(Scale(p, 3.0)).Backward();
  Sum(Scale(p, 3.0)).Backward();
  EXPECT_DOUBLE_EQ(p.grad()[0], 6.0);
  EXPECT_DOUBLE_EQ(p.grad()[1], 6.0);
}

TEST(TensorTest, SharedSubexpressionGetsBothContributions) {
  Tensor p = Tensor::FromVector({1}, {3.0}, true);
  Tensor q = Square(p);
  Add(q, q).Backward();  // 2p^2 -> 4p
  EXPECT_DOUBLE_EQ(p.grad()[0], 12.0);
}

TEST(TensorTest, ShapeMismatchIsContractViolation) {
  Tensor a = Tensor::Zeros({2, 3});
  Tensor b = Tensor::Zeros({3, 2});
  EXPECT_THROW(Add(a, b), ContractViolation);
  EXPECT_THROW(MatMul(a, a), ContractViolation);
  EXPECT_THROW(Tensor::FromVector({2, 2}, {1, 2, 3}), ContractViolation);
}

// One finite-difference check per op family over random small instances.
class OpGradientTest : public ::testing::TestWithParam<int> {};

TEST_P(OpGradientTest, DenseLayer) {
  CounterRng rng(HashKey(GetParam(), {1}));
  const int m = 1 + rng.UniformInt(4), k = 1 + rng.UniformInt(5), n = 1 + rng.UniformInt(5);
  Tensor x = RandomTensor(rng, {m, k}), w = RandomTensor(rng, {k, n}), b = RandomTensor(rng, {n});
  Tensor dir = RandomTensor(rng, {m, n}, false);
  auto r = CheckGradients({x, w, b}, [&] { return Project(Linear(x, w, b), dir); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, ConvLayer) {
  CounterRng rng(HashKey(GetParam(), {2}));
  const int batch = 1 + rng.UniformInt(2), c = 1 + rng.UniformInt(3), f = 1 + rng.UniformInt(3);
  const int h = 3 + rng.UniformInt(3), wd = 3 + rng.UniformInt(3);
  Tensor x = RandomTensor(rng, {batch, h, wd, c});
  Tensor w = RandomTensor(rng, {3, 3, c, f});
  Tensor b = RandomTensor(rng, {f});
  Tensor dir = RandomTensor(rng, {batch, h - 2, wd - 2, f}, false);
  auto r = CheckGradients({x, w, b}, [&] { return Project(Conv2d(x, w, b), dir); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, GruCell) {
  CounterRng rng(HashKey(GetParam(), {3}));
  const int batch = 1 + rng.UniformInt(3), in = 1 + rng.UniformInt(4), hid = 1 + rng.UniformInt(4);
  ParamSet params;
  GruCell gru = GruCell::Create(params, "gru", in, hid, GetParam());
  for (auto& e : params.entries()) {
    for (double& v : e.value.mutable_data()) v += 0.3 * rng.Uniform(-1, 1);
  }
  Tensor x = RandomTensor(rng, {batch, in});
  Tensor h = RandomTensor(rng, {batch, hid});
  Tensor dir = RandomTensor(rng, {batch, hid}, false);
  auto r = CheckGradients({x, h, gru.wx, gru.wh, gru.bx, gru.bh},
                          [&] { return Project(gru(x, h), dir); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, SoftmaxCrossEntropy) {
  CounterRng rng(HashKey(GetParam(), {4}));
  const int m = 1 + rng.UniformInt(4), n = 2 + rng.UniformInt(8);
  Tensor logits = RandomTensor(rng, {m, n}, true, 3.0);
  std::vector<int> targets(m);
  for (int& t : targets) t = static_cast<int>(rng.UniformInt(n));
  if (m > 1) targets[0] = -1;  // masked row
  Tensor weights = RandomTensor(rng, {m}, false);
  auto r = CheckGradients(
      {logits}, [&] { return Project(SoftmaxCrossEntropy(logits, targets), weights); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, SquaredL2Loss) {
  CounterRng rng(HashKey(GetParam(), {5}));
  const int m = 1 + rng.UniformInt(4), n = 1 + rng.UniformInt(6);
  Tensor pred = RandomTensor(rng, {m, n});
  Tensor target = RandomTensor(rng, {m, n});
  auto r = CheckGradients({pred, target},
                          [&] { return Mean(SquaredL2Rows(Sub(pred, target))); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, ElementwiseAndShapeOps) {
  CounterRng rng(HashKey(GetParam(), {6}));
  const int m = 2 + rng.UniformInt(3), n = 3 + rng.UniformInt(3);
  Tensor a = RandomTensor(rng, {m, n});
  Tensor b = RandomTensor(rng, {m, n});
  Tensor s = RandomTensor(rng, {m});
  std::vector<int> idx(m);
  for (int& i : idx) i = static_cast<int>(rng.UniformInt(n));
  auto loss = [&] {
    Tensor u = Add(Mul(Sigmoid(a), Tanh(b)), Minimum(a, Scale(b, 0.7)));
    Tensor v = Exp(Scale(Clamp(a, -0.8, 0.8), 0.5));
    Tensor w = Log(AddScalar(Square(b), 1.0));
    Tensor cat = ConcatCols({SliceCols(u, 0, 2), v, SliceCols(w, 1, n)});
    Tensor rows = ConcatRows({SliceRows(cat, 1, m), SliceRows(cat, 0, 1)});
    Tensor g = GatherCols(LogSoftmax(SliceCols(rows, 0, n)), idx);
    Tensor e = Entropy(MulRows(Relu(AddScalar(a, 0.5)), s));
    return Add(Sum(Mul(g, s)), Add(Mean(e), Sum(Reshape(rows, {static_cast<int>(rows.numel())}))));
  };
  auto r = CheckGradients({a, b, s}, loss);
  EXPECT_LT(r.max_rel_error, kGradTol);
}

TEST_P(OpGradientTest, MatMul) {
  CounterRng rng(HashKey(GetParam(), {7}));
  Tensor a = RandomTensor(rng, {3, 4}), b = RandomTensor(rng, {4, 2});
  Tensor dir = RandomTensor(rng, {3, 2}, false);
  auto r = CheckGradients({a, b}, [&] { return Project(MatMul(a, b), dir); });
  EXPECT_LT(r.max_rel_error, kGradTol);
}

INSTANTIATE_TEST_SUITE_P(Instances, OpGradientTest, ::testing::Range(0, 20));

// Backprop through an unrolled GRU equals differentiating the composed map.
TEST(GruUnrollTest, MatchesFiniteDifferencesUpToFiveSteps) {
  for (int steps = 1; steps <= 5; ++steps) {
    CounterRng rng(HashKey(99, {static_cast<uint64_t>(steps)}));
    ParamSet params;
    GruCell gru = GruCell::Create(params, "gru", 3, 4, steps);
    Dense head = Dense::Create(params, "head", 4, 2, steps);
    std::vector<Tensor> xs;
    for (int t = 0; t < steps; ++t) xs.push_back(RandomTensor(rng, {2, 3}, false));
    Tensor h0 = RandomTensor(rng, {2, 4});
    Tensor dir = RandomTensor(rng, {2, 2}, false);
    std::vector<Tensor> leaves = {h0};
    for (auto& e : params.entries()) leaves.push_back(e.value);
    auto r = CheckGradients(leaves, [&] {
      Tensor h = h0;
      for (const Tensor& x : xs) h = gru(x, h);
      return Project(head(h), dir);
    });
    EXPECT_LT(r.max_rel_error, kGradTol) << "steps=" << steps;
  }
}

TEST(DirectionalDerivativeTest, RandomThreeLayerNet) {
  for (int trial = 0; trial < 5; ++trial) {
    CounterRng rng(HashKey(7, {static_cast<uint64_t>(trial)}));
    ParamSet params;
    Dense l1 = Dense::Create(params, "l1", 5, 8, trial);
    Dense l2 = Dense::Create(params, "l2", 8, 8, trial);
    Dense l3 = Dense::Create(params, "l3", 8, 3, trial);
    Tensor x = RandomTensor(rng, {4, 5}, false);
    Tensor dir_out = RandomTensor(rng, {4, 3}, false);
    auto loss = [&] { return Project(l3(Tanh(l2(Relu(l1(x))))), dir_out); };
    loss().Backward();
    std::vector<std::vector<double>> d;
    double analytic = 0;
    for (auto& e : params.entries()) {
      d.emplace_back(e.value.numel());
      for (size_t i = 0; i < d.back().size(); ++i) {
        d.back()[i] = rng.Uniform(-1, 1);
        analytic += d.back()[i] * e.value.grad()[i];
      }
    }
    auto shift = [&](double s) {
      for (size_t k = 0; k < d.size(); ++k) {
        auto v = params.entries()[k].value.mutable_data();
        for (size_t i = 0; i < v.size(); ++i) v[i] += s * d[k][i];
      }
    };
    NoGradGuard guard;
    const double eps = 1e-4;
    shift(eps);
    const double up = loss().item();
    shift(-2 * eps);
    const double down = loss().item();
    shift(eps);
    EXPECT_LT(testing::RelError(analytic, (up - down) / (2 * eps)), kGradTol);
  }
}

// Tiny policy network used by the following tests.
struct TinyPolicy {
  ImageShape shape{15, 15, 8};
  NetSizes sizes{2, 3, 8, 8, 8};
  ParamSet params;
  PolicyNet net;

  explicit TinyPolicy(uint64_t seed) { net = PolicyNet(params, "pol", shape, sizes, seed); }
};

Tensor RandomObservation(CounterRng& rng, const ImageShape& shape, int batch) {
  std::vector<uint8_t> cells(shape.size() * batch);
  for (auto& c : cells) c = rng.Uniform() < 0.2 ? 1 : 0;
  return ImageTensor(shape, batch, cells);
}

TEST(PolicyNetTest, ZeroParametersGiveUniformPolicy) {
  TinyPolicy p(1);
  for (auto& e : p.params.entries()) {
    for (double& v : e.value.mutable_data()) v = 0;
  }
  CounterRng rng(5);
  auto out = p.net.Forward(RandomObservation(rng, p.shape, 3), p.net.InitialHidden(3));
  ASSERT_EQ(out.logits.shape(), (Shape{3, kActionCount}));
  for (int r = 0; r < 3; ++r) {
    auto probs = Softmax(out.logits.data().subspan(r * kActionCount, kActionCount));
    for (double q : probs) EXPECT_NEAR(q, 1.0 / 9.0, 1e-12);
  }
}

TEST(PolicyNetTest, ForwardIsDeterministicAndNormalized) {
  TinyPolicy p(2);
  CounterRng rng(6);
  Tensor obs = RandomObservation(rng, p.shape, 2);
  Tensor h = RandomTensor(rng, {2, 8}, false);
  auto a = p.net.Forward(obs, h);
  auto b = p.net.Forward(obs, h);
  EXPECT_TRUE(std::equal(a.logits.data().begin(), a.logits.data().end(), b.logits.data().begin()));
  EXPECT_TRUE(std::equal(a.value.data().begin(), a.value.data().end(), b.value.data().begin()));
  EXPECT_TRUE(std::equal(a.hidden.data().begin(), a.hidden.data().end(), b.hidden.data().begin()));
  auto probs = Softmax(a.logits.data().subspan(0, kActionCount));
  EXPECT_NEAR(std::accumulate(probs.begin(), probs.end(), 0.0), 1.0, 1e-6);
}

TEST(PolicyNetTest, WrongObservationShapeIsContractViolation) {
  TinyPolicy p(3);
  Tensor obs = Tensor::Zeros({1, 11, 11, 8});
  EXPECT_THROW(p.net.Forward(obs, p.net.InitialHidden(1)), ContractViolation);
}

TEST(PolicyNetTest, NegLogProbGradientMatchesFiniteDifferences) {
  TinyPolicy p(4);
  CounterRng rng(7);
  Tensor obs = RandomObservation(rng, p.shape, 2);
  Tensor h = RandomTensor(rng, {2, 8}, false);
  // Larger head weights make the policy far from uniform.
  for (double& v : p.params.Get("pol/pi/w").mutable_data()) v *= 100;
  const std::vector<int> actions = {3, 7};
  std::vector<Tensor> leaves;
  for (auto& e : p.params.entries()) leaves.push_back(e.value);
  auto r = CheckGradients(leaves, [&] {
    return Sum(SoftmaxCrossEntropy(p.net.Forward(obs, h).logits, actions));
  });
  EXPECT_LT(r.max_rel_error, kGradTol);
  EXPECT_EQ(r.checked, p.params.NumScalars());
}

TEST(PolicyNetTest, SequenceForwardMatchesStepwiseForward) {
  TinyPolicy p(5);
  CounterRng rng(8);
  const int batch = 2, steps = 4;
  Tensor obs = RandomObservation(rng, p.shape, batch * steps);
  std::vector<Real> keep(batch * steps, 1.0);
  keep[2 * batch + 1] = 0.0;  // sequence 1 restarts at step 2
  Tensor h0 = RandomTensor(rng, {batch, 8}, false);
  auto seq = p.net.ForwardSequence(obs, h0, keep);
  for (int b = 0; b < batch; ++b) {
    Tensor h = SliceRows(h0, b, b + 1);
    for (int t = 0; t < steps; ++t) {
      if (keep[t * batch + b] == 0.0) h = Tensor::Zeros({1, 8});
      const int row = t * batch + b;
      Tensor o = Tensor::FromVector(
          {1, 15, 15, 8},
          std::vector<Real>(obs.data().begin() + row * p.shape.size(),
                            obs.data().begin() + (row + 1) * p.shape.size()));
      auto step = p.net.Forward(o, h);
      h = step.hidden;
      for (int a = 0; a < kActionCount; ++a) {
        EXPECT_NEAR(step.logits.data()[a], seq.logits.data()[row * kActionCount + a], 1e-12);
      }
      EXPECT_NEAR(step.value.item(), seq.value.data()[row], 1e-12);
    }
  }
}

TEST(ParamSetTest, NamesShareTensorsAndRejectShapeChange) {
  ParamSet params;
  Dense a = Dense::Create(params, "shared", 3, 2, 1);
  Dense b = Dense::Create(params, "shared", 3, 2, 999);
  EXPECT_EQ(a.w.node(), b.w.node());
  EXPECT_EQ(params.size(), 2u);
  EXPECT_THROW(Dense::Create(params, "shared", 4, 2, 1), ContractViolation);
}

TEST(ParamSetTest, InitializationIsOrderIndependentAndFloatExact) {
  ParamSet p1, p2;
  Dense::Create(p1, "a", 4, 3, 11);
  Dense::Create(p1, "b", 3, 3, 11);
  Dense::Create(p2, "b", 3, 3, 11);
  Dense::Create(p2, "a", 4, 3, 11);
  auto a1 = p1.Get("a/w").data();
  auto a2 = p2.Get("a/w").data();
  EXPECT_TRUE(std::equal(a1.begin(), a1.end(), a2.begin()));
  for (double v : a1) EXPECT_EQ(v, static_cast<double>(static_cast<float>(v)));
}

TEST(ParamSetTest, RecurrentWeightsAreOrthogonalBlocks) {
  ParamSet params;
  GruCell g = GruCell::Create(params, "g", 3, 5, 4);
  for (int block = 0; block < 3; ++block) {
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        double dot = 0;
        for (int r = 0; r < 5; ++r) {
          dot += g.wh.data()[r * 15 + block * 5 + i] * g.wh.data()[r * 15 + block * 5 + j];
        }
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-6);
      }
    }
  }
}

TEST(ParamSetTest, CopyIsDeep) {
  ParamSet p;
  Dense::Create(p, "d", 2, 2, 1);
  ParamSet q = p;
  q.entries()[0].value.mutable_data()[0] += 1.0;
  EXPECT_NE(p.entries()[0].value.data()[0], q.entries()[0].value.data()[0]);
}

TEST(AdamTest, ZeroGradientLeavesParametersUnchanged) {
  ParamSet params;
  Tensor p = params.GetOrCreate("p", {3}, [](std::span<Real> v) { v[0] = 1; v[1] = -2; v[2] = 0.5; });
  const auto before = params.FlatValues();
  Sum(Scale(p, 0.0)).Backward();
  AdamStep(params, AdamConfig{});
  EXPECT_EQ(params.FlatValues(), before);
  EXPECT_TRUE(p.grad().empty());
  EXPECT_EQ(params.step(), 1);
}

TEST(AdamTest, FirstStepMovesByLearningRateAgainstGradient) {
  for (double g : {3.0, -0.25}) {
    ParamSet params;
    Tensor p = params.GetOrCreate("p", {1}, [](std::span<Real> v) { v[0] = 0.5; });
    Sum(Scale(p, g)).Backward();
    AdamConfig cfg;
    cfg.lr = 1e-3;
    AdamStep(params, cfg);
    const double delta = p.data()[0] - 0.5;
    EXPECT_NEAR(std::abs(delta), cfg.lr, 1e-6);
    EXPECT_LT(delta * g, 0);
  }
}

TEST(AdamTest, GlobalNormClipScalesGradient) {
  ParamSet params;
  Tensor p = params.GetOrCreate("p", {2}, nullptr);
  Sum(Mul(p, Tensor::FromVector({2}, {30.0, 40.0}))).Backward();
  AdamConfig cfg;
  cfg.beta1 = 0.0;
  auto report = AdamStep(params, cfg);
  EXPECT_DOUBLE_EQ(report.grad_norm, 50.0);
  EXPECT_TRUE(report.clipped);
  EXPECT_NEAR(params.entries()[0].m[0], 30.0 * 5.0 / 50.0, 1e-6);
}

// f(p) = sum c_i (p_i - p*_i)^2 has optimum 0 at p*.
TEST(AdamTest, ConvexQuadraticConvergesMonotonically) {
  ParamSet params;
  Tensor p = params.GetOrCreate("p", {2}, [](std::span<Real> v) { v[0] = 1.3; v[1] = -1.2; });
  const Tensor c = Tensor::FromVector({2}, {1.0, 3.0});
  const Tensor opt = Tensor::FromVector({2}, {0.3, -0.7});
  AdamConfig cfg;
  cfg.lr = 0.02;
  cfg.beta1 = 0.5;  // heavier momentum overshoots the minimum
  std::vector<double> losses;
  for (int step = 0; step < 200; ++step) {
    Tensor loss = Sum(Mul(c, Square(Sub(p, opt))));
    loss.Backward();
    AdamStep(params, cfg);
    NoGradGuard guard;
    losses.push_back(Sum(Mul(c, Square(Sub(p, opt)))).item());
  }
  for (size_t i = 10; i + 1 < losses.size(); ++i) {
    ASSERT_LT(losses[i + 1], losses[i]) << "step " << i;
  }
  EXPECT_LT(losses.back(), 1e-6);
}

TEST(CheckpointTest, RoundTripIsBitExactAndForwardIdentical) {
  TinyPolicy p(9);
  CounterRng rng(10);
  Tensor obs = RandomObservation(rng, p.shape, 1);
  // Take one optimizer step so moments are populated.
  Sum(SoftmaxCrossEntropy(p.net.Forward(obs, p.net.InitialHidden(1)).logits,
                          std::vector<int>{2}))
      .Backward();
  AdamStep(p.params, AdamConfig{});
  const auto before = p.net.Forward(obs, p.net.InitialHidden(1));

  Checkpoint ck;
  AppendParamSet(p.params, "agent0/", ck);
  ck.meta = R"({"epoch": 3})";
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssdlab_nn_ckpt_test.bin").string();
  SaveCheckpoint(path, ck);
  Checkpoint loaded = LoadCheckpoint(path);
  EXPECT_EQ(loaded.meta, ck.meta);

  TinyPolicy q(12345);
  RestoreParamSet(loaded, "agent0/", q.params);
  EXPECT_EQ(q.params.step(), p.params.step());
  EXPECT_EQ(q.params.FlatValues(), p.params.FlatValues());
  for (size_t i = 0; i < p.params.size(); ++i) {
    EXPECT_EQ(q.params.entries()[i].m, p.params.entries()[i].m);
    EXPECT_EQ(q.params.entries()[i].v, p.params.entries()[i].v);
  }
  const auto after = q.net.Forward(obs, q.net.InitialHidden(1));
  EXPECT_TRUE(std::equal(before.logits.data().begin(), before.logits.data().end(),
                         after.logits.data().begin()));
  EXPECT_EQ(before.value.item(), after.value.item());
  std::remove(path.c_str());
}

TEST(CheckpointTest, CorruptionIsDetected) {
  Checkpoint ck;
  ck.tensors.push_back({"t", {2}, {1.5f, -2.0f}});
  ck.meta = "{}";
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssdlab_nn_ckpt_corrupt.bin").string();
  SaveCheckpoint(path, ck);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8 + 4 + 4 + 4 + 1 + 4 + 4 + 2);  // inside the first float
    f.put('\x7f');
  }
  EXPECT_THROW(LoadCheckpoint(path), ConfigError);
  EXPECT_THROW(LoadCheckpoint(path + ".missing"), ConfigError);
  std::remove(path.c_str());
}

TEST(SharedEncoderTest, MoaLossMovesEncoderSeenByPolicy) {
  TinyPolicy p(13);
  MoaHead moa(p.params, "moa", p.sizes.dense, 2, p.sizes, 13);
  CounterRng rng(14);
  Tensor obs = RandomObservation(rng, p.shape, 2);
  const Tensor enc_w = p.params.Get("pol/enc/conv1/w");
  const std::vector<double> enc_before(enc_w.data().begin(), enc_w.data().end());
  const auto policy_before = p.net.Forward(obs, p.net.InitialHidden(2)).logits;

  auto out = p.net.Forward(obs, p.net.InitialHidden(2));
  Tensor prev = OneHotRows(std::vector<int>{1, 4, -1, 0}, kActionCount);
  prev = Reshape(prev, {2, 2 * kActionCount});
  auto m = moa.Forward(out.features, prev, OneHotRows(std::vector<int>{0, 5}, kActionCount),
                       moa.InitialHidden(2));
  Sum(SoftmaxCrossEntropy(Reshape(m.logits, {4, kActionCount}), std::vector<int>{2, 3, 4, 5}))
      .Backward();
  // Only the MOA loss produced gradients; the policy heads received none.
  EXPECT_TRUE(p.params.Get("pol/pi/w").grad().empty());
  EXPECT_FALSE(enc_w.grad().empty());
  AdamConfig cfg;
  cfg.lr = 1e-2;
  AdamStep(p.params, cfg);
  const auto policy_after = p.net.Forward(obs, p.net.InitialHidden(2)).logits;
  EXPECT_NE(std::vector<double>(enc_w.data().begin(), enc_w.data().end()), enc_before);
  EXPECT_FALSE(std::equal(policy_before.data().begin(), policy_before.data().end(),
                          policy_after.data().begin()));
}

TEST(WorldModelTest, HeadsHaveExpectedShapes) {
  ParamSet params;
  NetSizes sizes{2, 3, 8, 8, 8};
  ImageShape shape{15, 15, 8};
  WorldModel wm(params, "wm", shape, sizes, 1, true);
  WorldModel raw(params, "raw", shape, sizes, 1, false, ForwardTarget::kRawObservation);
  CounterRng rng(3);
  Tensor obs = RandomObservation(rng, shape, 2);
  Tensor a = OneHotRows(std::vector<int>{0, 8}, kActionCount);
  Tensor trunk = wm.Trunk(wm.Encode(obs), wm.InitialHidden(2));
  EXPECT_EQ(wm.PredictNext(trunk, a).shape(), (Shape{2, 8}));
  EXPECT_EQ(wm.ForwardTargetOf(obs).shape(), (Shape{2, 8}));
  EXPECT_FALSE(wm.ForwardTargetOf(obs).requires_grad());
  EXPECT_EQ(wm.InverseLogits(trunk, wm.Encode(obs)).shape(), (Shape{2, kActionCount}));
  EXPECT_EQ(wm.PredictReward(trunk, a).shape(), (Shape{2}));
  Tensor rtrunk = raw.Trunk(raw.Encode(obs), raw.InitialHidden(2));
  EXPECT_EQ(raw.PredictNext(rtrunk, a).shape(), (Shape{2, 15 * 15 * 8}));
  EXPECT_EQ(raw.ForwardTargetOf(obs).shape(), (Shape{2, 15 * 15 * 8}));
  EXPECT_THROW(raw.PredictReward(rtrunk, a), ContractViolation);
}

}  // namespace
}  // namespace ssdlab::nn
