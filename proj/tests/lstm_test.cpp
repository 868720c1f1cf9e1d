// Copyright 2026 The ristpc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ristpc/lstm.hpp"
#include "ristpc/verify.hpp"

namespace ristpc {
namespace {

std::vector<double> random_inputs(std::size_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(2 * steps);
  for (double& v : x) v = n(rng);
  return x;
}

double loss_at(const LstmParams& p, const std::vector<double>& x,
               const std::array<double, 2>& target) {
  LstmCache cache;
  return mse_loss(lstm_forward(p, x, cache), target).loss;
}

TEST(LstmParams, LayoutAndGroups) {
  const LstmParams p(4);
  const std::size_t h = 4;
  const std::size_t expect = 4 * h * 2 + 4 * h * h + 4 * h   // layer 0
                             + 4 * h * h * 2 + 4 * h          // layer 1
                             + 2 * h + 2;                     // head
  EXPECT_EQ(p.size(), expect);
  ASSERT_EQ(p.groups().size(), 8u);
  std::size_t offset = 0;
  for (const ParamGroup& g : p.groups()) {
    EXPECT_EQ(g.offset, offset);
    offset += g.size;
  }
  EXPECT_EQ(offset, p.size());
  EXPECT_EQ(p.group("l1.U").size, 4 * h * h);
  EXPECT_THROW(p.group("l2.U"), std::invalid_argument);
  EXPECT_THROW(LstmParams(0), std::invalid_argument);
}

TEST(LstmParams, InitIsSeededAndBounded) {
  const LstmParams a = LstmParams::init(8, 3);
  EXPECT_EQ(a, LstmParams::init(8, 3));
  EXPECT_FALSE(a == LstmParams::init(8, 4));
  const double k = 1.0 / std::sqrt(8.0);
  const ParamGroup& b0 = a.group("l0.b");
  const ParamGroup& b1 = a.group("l1.b");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool forget_bias = (i >= b0.offset + 8 && i < b0.offset + 16) ||
                             (i >= b1.offset + 8 && i < b1.offset + 16);
    if (forget_bias) {
      EXPECT_EQ(a.data()[i], 1.0);
    } else {
      EXPECT_LE(std::abs(a.data()[i]), k);
    }
  }
}

TEST(LstmForward, ZeroWeightsGiveHeadBias) {
  LstmParams p(3);
  auto d = p.mutable_data();
  const ParamGroup& hb = p.group("head.b");
  d[hb.offset] = 0.25;
  d[hb.offset + 1] = -0.5;
  LstmCache cache;
  const auto y = lstm_forward(p, random_inputs(5, 1), cache);
  EXPECT_EQ(y[0], 0.25);
  EXPECT_EQ(y[1], -0.5);
}

TEST(LstmForward, SingleUnitMatchesHandComputation) {
  // H = 1, one step: gates use only W0 and b0 (h_prev = c_prev = 0).
  LstmParams p(1);
  auto d = p.mutable_data();
  const ParamGroup& w0 = p.group("l0.W");
  const ParamGroup& b0 = p.group("l0.b");
  const double wi = 0.3, wf = -0.2, wg = 0.5, wo = 0.7;  // weight on x[0]
  d[w0.offset + 0] = wi;
  d[w0.offset + 2] = wf;
  d[w0.offset + 4] = wg;
  d[w0.offset + 6] = wo;
  d[b0.offset + 2] = 0.1;
  const ParamGroup& w1 = p.group("l1.W");
  for (std::size_t k = 0; k < 4; ++k) d[w1.offset + k] = 0.4;
  const ParamGroup& hw = p.group("head.W");
  d[hw.offset] = 2.0;
  d[hw.offset + 1] = -1.0;

  auto sig = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  const double x = 0.8;
  const double c0 = sig(wi * x) * std::tanh(wg * x + 0.1);
  const double h0 = sig(wo * x) * std::tanh(c0);
  const double z1 = 0.4 * h0;
  const double c1 = sig(z1) * std::tanh(z1);
  const double h1 = sig(z1) * std::tanh(c1);

  LstmCache cache;
  const auto y = lstm_forward(p, std::vector<double>{x, 0.0}, cache);
  EXPECT_NEAR(y[0], 2.0 * h1, 1e-15);
  EXPECT_NEAR(y[1], -h1, 1e-15);
}

TEST(LstmForward, RejectsRaggedInput) {
  LstmParams p(2);
  LstmCache cache;
  EXPECT_THROW(lstm_forward(p, std::vector<double>{1.0, 2.0, 3.0}, cache),
               std::invalid_argument);
  EXPECT_THROW(lstm_forward(p, std::vector<double>{}, cache), std::invalid_argument);
}

// Central differences computed here, independent of the verify module.
TEST(LstmBackward, MatchesFiniteDifferencesPerGroup) {
  const LstmParams p0 = LstmParams::init(4, 11);
  const auto x = random_inputs(8, 12);
  const std::array<double, 2> target{0.3, -0.7};
  LstmCache cache;
  const MseResult r = mse_loss(lstm_forward(p0, x, cache), target);
  const LstmParams g = lstm_backward(p0, cache, r.grad);
  const double eps = 1e-5;
  for (const ParamGroup& grp : p0.groups()) {
    double worst = 0.0;
    for (std::size_t i = grp.offset; i < grp.offset + grp.size; ++i) {
      LstmParams plus = p0, minus = p0;
      plus.mutable_data()[i] += eps;
      minus.mutable_data()[i] -= eps;
      const double num = (loss_at(plus, x, target) - loss_at(minus, x, target)) / (2.0 * eps);
      const double ana = g.data()[i];
      const double denom = std::max({std::abs(num), std::abs(ana), 1e-6});
      worst = std::max(worst, std::abs(num - ana) / denom);
    }
    EXPECT_LT(worst, 1e-4) << grp.name;
  }
}

TEST(LstmBackward, HeadBiasGradientIsOutputGradient) {
  const LstmParams p = LstmParams::init(5, 13);
  LstmCache cache;
  lstm_forward(p, random_inputs(6, 14), cache);
  const LstmParams g = lstm_backward(p, cache, {0.4, -1.5});
  const ParamGroup& hb = p.group("head.b");
  EXPECT_EQ(g.data()[hb.offset], 0.4);
  EXPECT_EQ(g.data()[hb.offset + 1], -1.5);
}

TEST(LstmBackward, ZeroOutputGradientGivesZero) {
  const LstmParams p = LstmParams::init(5, 15);
  LstmCache cache;
  lstm_forward(p, random_inputs(6, 16), cache);
  const LstmParams g = lstm_backward(p, cache, {0.0, 0.0});
  for (double v : g.data()) EXPECT_EQ(v, 0.0);
}

TEST(LstmBackward, AccumulateAddsUp) {
  const LstmParams p = LstmParams::init(3, 17);
  LstmCache cache;
  lstm_forward(p, random_inputs(4, 18), cache);
  const LstmParams once = lstm_backward(p, cache, {0.2, 0.1});
  LstmParams twice(3);
  lstm_backward_accumulate(p, cache, {0.2, 0.1}, twice);
  lstm_backward_accumulate(p, cache, {0.2, 0.1}, twice);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(twice.data()[i], 2.0 * once.data()[i], 1e-12 * std::abs(once.data()[i]) + 1e-300);
  }
}

TEST(LstmBackward, StaleCacheRejected) {
  LstmParams p = LstmParams::init(3, 19);
  LstmCache cache;
  lstm_forward(p, random_inputs(4, 20), cache);
  p.mutable_data()[0] += 1.0;
  EXPECT_THROW(lstm_backward(p, cache, {1.0, 1.0}), std::logic_error);
  const LstmParams other = LstmParams::init(3, 19);
  EXPECT_THROW(lstm_backward(other, cache, {1.0, 1.0}), std::logic_error);
}

TEST(GradientCheck, PassesAndNegativeControlFails) {
  const LstmParams p = LstmParams::init(4, 21);
  const auto x = random_inputs(8, 22);
  for (const GradientCheck& c : gradient_check(p, x, {0.1, 0.2}, 1e-5)) {
    EXPECT_LT(c.max_rel_error, 1e-4) << c.group;
  }
  bool caught = false;
  for (const GradientCheck& c : gradient_check(p, x, {0.1, 0.2}, 1e-5, 1e-6, true)) {
    if (c.group == "l0.U") caught = c.max_rel_error > 1e-4;
  }
  EXPECT_TRUE(caught);
}

TEST(MseLoss, HalfSquaredError) {
  const MseResult r = mse_loss({1.0, 2.0}, {0.0, 4.0});
  EXPECT_DOUBLE_EQ(r.loss, 2.5);
  EXPECT_DOUBLE_EQ(r.grad[0], 1.0);
  EXPECT_DOUBLE_EQ(r.grad[1], -2.0);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  LstmParams p(1);
  LstmParams g(1);
  auto gd = g.mutable_data();
  for (std::size_t i = 0; i < gd.size(); ++i) gd[i] = (i % 2 == 0) ? 3.0 : -0.01;
  AdamState s(p.size(), 0.01);
  adam_step(p, g, s);
  // Bias correction makes the first update lr * g / (|g| + eps').
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double gi = g.data()[i];
    EXPECT_NEAR(p.data()[i], -0.01 * gi / (std::abs(gi) + 1e-8), 1e-12);
  }
  EXPECT_EQ(s.t, 1u);
}

TEST(Adam, MinimizesQuadratic) {
  // Drive every parameter toward 1 with the gradient of (p - 1)^2 / 2.
  LstmParams p(2);
  LstmParams g(2);
  AdamState s(p.size(), 0.05);
  for (int k = 0; k < 2000; ++k) {
    auto gd = g.mutable_data();
    for (std::size_t i = 0; i < p.size(); ++i) gd[i] = p.data()[i] - 1.0;
    adam_step(p, g, s);
  }
  for (double v : p.data()) EXPECT_NEAR(v, 1.0, 1e-3);
}

TEST(Adam, RejectsShapeMismatch) {
  LstmParams p(2);
  AdamState s;
  EXPECT_THROW(adam_step(p, LstmParams(3), s), std::invalid_argument);
}

TEST(Train, ReducesLossDeterministically) {
  std::vector<WindowSample> train_set, val_set;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 120; ++k) {
    WindowSample w;
    const double vlat = 1e-4 * u(rng), vlon = 1e-4 * u(rng);
    for (std::size_t s = 0; s < 8; ++s) {
      w.input.push_back({39.9 + vlat * s, 116.3 + vlon * s, 5.0 * s});
    }
    w.target = {39.9 + vlat * 8, 116.3 + vlon * 8, 40.0};
    (k < 100 ? train_set : val_set).push_back(w);
  }
  const NormStats stats = fit_norm_stats(train_set);
  TrainConfig cfg;
  cfg.hidden = 8;
  cfg.epochs = 15;
  cfg.batch_size = 16;
  cfg.lr = 1e-2;
  const TrainResult a = train(train_set, val_set, stats, cfg);
  const TrainResult b = train(train_set, val_set, stats, cfg);
  EXPECT_EQ(a.params, b.params);
  ASSERT_GE(a.curve.size(), 2u);
  EXPECT_EQ(a.curve.front().epoch, 0u);
  double best = a.curve.front().val_loss;
  for (const EpochStats& e : a.curve) best = std::min(best, e.val_loss);
  EXPECT_LT(best, 0.5 * a.curve.front().val_loss);
  EXPECT_DOUBLE_EQ(a.curve[a.best_epoch].val_loss, best);

  cfg.hidden = 0;
  EXPECT_THROW(train(train_set, val_set, stats, cfg), std::invalid_argument);
  cfg.hidden = 8;
  EXPECT_THROW(train(train_set, {}, stats, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace ristpc
