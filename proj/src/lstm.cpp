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

#include "ristpc/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ristpc/simd/kernels.hpp"

namespace ristpc {
namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmParams::LstmParams(int hidden) : hidden_(hidden) {
  if (hidden < 1) throw std::invalid_argument("lstm: hidden size must be >= 1");
  const std::size_t h = static_cast<std::size_t>(hidden);
  std::size_t offset = 0;
  auto add = [&](std::string name, std::size_t n) {
    groups_.push_back({std::move(name), offset, n});
    offset += n;
  };
  for (int l = 0; l < kLayers; ++l) {
    const std::string p = "l" + std::to_string(l) + ".";
    add(p + "W", 4 * h * input_dim(l));
    add(p + "U", 4 * h * h);
    add(p + "b", 4 * h);
  }
  add("head.W", kOutputDim * h);
  add("head.b", kOutputDim);
  data_.assign(offset, 0.0);
}

std::size_t LstmParams::input_dim(int layer) const {
  return layer == 0 ? kInputDim : static_cast<std::size_t>(hidden_);
}

const ParamGroup& LstmParams::group(const std::string& name) const {
  for (const auto& g : groups_) {
    if (g.name == name) return g;
  }
  throw std::invalid_argument("lstm: no parameter group '" + name + "'");
}

LstmParams LstmParams::init(int hidden, std::uint64_t seed) {
  LstmParams p(hidden);
  std::mt19937_64 rng(seed);
  const double k = 1.0 / std::sqrt(static_cast<double>(hidden));
  std::uniform_real_distribution<double> dist(-k, k);
  auto d = p.mutable_data();
  for (double& x : d) x = dist(rng);
  const std::size_t h = static_cast<std::size_t>(hidden);
  for (int l = 0; l < kLayers; ++l) {
    const ParamGroup& b = p.groups_[3 * l + 2];
    for (std::size_t r = h; r < 2 * h; ++r) d[b.offset + r] = 1.0;
  }
  return p;
}

std::array<double, 2> lstm_forward(const LstmParams& params, std::span<const double> inputs,
                                   LstmCache& cache) {
  if (inputs.empty() || inputs.size() % LstmParams::kInputDim != 0) {
    throw std::invalid_argument("lstm_forward: inputs must be steps x 2");
  }
  const auto& k = simd::active_kernels();
  const std::size_t h = static_cast<std::size_t>(params.hidden());
  const std::size_t steps = inputs.size() / LstmParams::kInputDim;
  cache.params = &params;
  cache.generation = params.generation();
  cache.steps = steps;
  cache.hidden = params.hidden();

  std::vector<double> z(4 * h);
  for (int l = 0; l < LstmParams::kLayers; ++l) {
    const std::size_t d = params.input_dim(l);
    auto& x = cache.x[l];
    if (l == 0) {
      x.assign(inputs.begin(), inputs.end());
    } else {
      // Layer 1 reads layer 0's hidden states h_1 .. h_T.
      x.assign(cache.h[0].begin() + static_cast<std::ptrdiff_t>(h), cache.h[0].end());
    }
    auto& hs = cache.h[l];
    auto& cs = cache.c[l];
    auto& gs = cache.gates[l];
    auto& tc = cache.tanh_c[l];
    hs.assign((steps + 1) * h, 0.0);
    cs.assign((steps + 1) * h, 0.0);
    gs.assign(steps * 4 * h, 0.0);
    tc.assign(steps * h, 0.0);
    const double* w = params.w(l);
    const double* u = params.u(l);
    const double* b = params.b(l);
    for (std::size_t t = 0; t < steps; ++t) {
      const double* xt = x.data() + t * d;
      const double* hp = hs.data() + t * h;
      for (std::size_t r = 0; r < 4 * h; ++r) {
        z[r] = b[r] + k.dot(w + r * d, xt, d) + k.dot(u + r * h, hp, h);
      }
      double* g = gs.data() + t * 4 * h;
      const double* cp = cs.data() + t * h;
      double* cn = cs.data() + (t + 1) * h;
      double* hn = hs.data() + (t + 1) * h;
      double* tct = tc.data() + t * h;
      for (std::size_t j = 0; j < h; ++j) {
        const double ig = sigmoid(z[j]);
        const double fg = sigmoid(z[h + j]);
        const double gg = std::tanh(z[2 * h + j]);
        const double og = sigmoid(z[3 * h + j]);
        g[j] = ig;
        g[h + j] = fg;
        g[2 * h + j] = gg;
        g[3 * h + j] = og;
        cn[j] = fg * cp[j] + ig * gg;
        tct[j] = std::tanh(cn[j]);
        hn[j] = og * tct[j];
      }
    }
  }
  const double* top = cache.h[1].data() + steps * h;
  for (std::size_t o = 0; o < LstmParams::kOutputDim; ++o) {
    cache.output[o] = params.head_b()[o] + k.dot(params.head_w() + o * h, top, h);
  }
  return cache.output;
}

void lstm_backward_accumulate(const LstmParams& params, const LstmCache& cache,
                              const std::array<double, 2>& grad_out, LstmParams& grads) {
  if (cache.params != &params || cache.generation != params.generation() ||
      cache.hidden != params.hidden() || cache.steps == 0) {
    throw std::logic_error("lstm_backward: cache does not belong to these parameters");
  }
  if (grads.hidden() != params.hidden()) {
    throw std::invalid_argument("lstm_backward: gradient buffer has the wrong shape");
  }
  const auto& k = simd::active_kernels();
  const std::size_t h = static_cast<std::size_t>(params.hidden());
  const std::size_t steps = cache.steps;
  auto gd = grads.mutable_data();
  auto goff = [&](int idx) { return gd.data() + grads.groups()[idx].offset; };

  // Head.
  const double* top = cache.h[1].data() + steps * h;
  std::vector<double> dh_above(steps * h, 0.0);  // d loss / d h_t from above
  for (std::size_t o = 0; o < LstmParams::kOutputDim; ++o) {
    k.axpy(grad_out[o], top, goff(6) + o * h, h);
    goff(7)[o] += grad_out[o];
    k.axpy(grad_out[o], params.head_w() + o * h, dh_above.data() + (steps - 1) * h, h);
  }

  std::vector<double> dz(4 * h), dh(h), dc(h), dh_next(h), dc_next(h);
  for (int l = LstmParams::kLayers - 1; l >= 0; --l) {
    const std::size_t d = params.input_dim(l);
    std::vector<double> dx(steps * d, 0.0);
    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    std::fill(dc_next.begin(), dc_next.end(), 0.0);
    const double* w = params.w(l);
    const double* u = params.u(l);
    double* dw = goff(3 * l);
    double* du = goff(3 * l + 1);
    double* db = goff(3 * l + 2);
    for (std::size_t t = steps; t-- > 0;) {
      const double* g = cache.gates[l].data() + t * 4 * h;
      const double* cp = cache.c[l].data() + t * h;
      const double* tct = cache.tanh_c[l].data() + t * h;
      for (std::size_t j = 0; j < h; ++j) {
        const double ig = g[j], fg = g[h + j], gg = g[2 * h + j], og = g[3 * h + j];
        dh[j] = dh_above[t * h + j] + dh_next[j];
        dc[j] = dc_next[j] + dh[j] * og * (1.0 - tct[j] * tct[j]);
        dz[j] = dc[j] * gg * ig * (1.0 - ig);
        dz[h + j] = dc[j] * cp[j] * fg * (1.0 - fg);
        dz[2 * h + j] = dc[j] * ig * (1.0 - gg * gg);
        dz[3 * h + j] = dh[j] * tct[j] * og * (1.0 - og);
        dc_next[j] = dc[j] * fg;
      }
      const double* xt = cache.x[l].data() + t * d;
      const double* hp = cache.h[l].data() + t * h;
      std::fill(dh_next.begin(), dh_next.end(), 0.0);
      double* dxt = dx.data() + t * d;
      for (std::size_t r = 0; r < 4 * h; ++r) {
        const double a = dz[r];
        if (a == 0.0) continue;
        k.axpy(a, xt, dw + r * d, d);
        k.axpy(a, hp, du + r * h, h);
        db[r] += a;
        k.axpy(a, w + r * d, dxt, d);
        k.axpy(a, u + r * h, dh_next.data(), h);
      }
    }
    if (l > 0) dh_above = std::move(dx);
  }
}

LstmParams lstm_backward(const LstmParams& params, const LstmCache& cache,
                         const std::array<double, 2>& grad_out) {
  LstmParams grads(params.hidden());
  lstm_backward_accumulate(params, cache, grad_out, grads);
  return grads;
}

MseResult mse_loss(const std::array<double, 2>& pred, const std::array<double, 2>& target) {
  MseResult r;
  const double e0 = pred[0] - target[0];
  const double e1 = pred[1] - target[1];
  r.loss = (e0 * e0 + e1 * e1) / 2.0;
  r.grad = {e0, e1};
  return r;
}

void adam_step(LstmParams& params, const LstmParams& grads, AdamState& state) {
  if (grads.size() != params.size()) throw std::invalid_argument("adam_step: shape mismatch");
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw std::invalid_argument("adam_step: optimizer state shape mismatch");
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  auto p = params.mutable_data();
  const auto g = grads.data();
  for (std::size_t i = 0; i < p.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g[i] * g[i];
    const double mhat = state.m[i] / c1;
    const double vhat = state.v[i] / c2;
    p[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
  }
}

EncodedSample encode_window(const WindowSample& w, const NormStats& stats) {
  stats.validate();
  const AnchoredWindow a = anchor_window(w);
  EncodedSample e;
  e.input.reserve(a.input.size() * 2);
  for (const auto& p : a.input) {
    e.input.push_back((p[0] - stats.mean_lat) / stats.std_lat);
    e.input.push_back((p[1] - stats.mean_lon) / stats.std_lon);
  }
  e.target = {(a.target[0] - stats.mean_lat) / stats.std_lat,
              (a.target[1] - stats.mean_lon) / stats.std_lon};
  return e;
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("train: lr must be > 0");
  if (hidden < 1) throw std::invalid_argument("train: hidden must be >= 1");
}

double mean_loss(const LstmParams& params, std::span<const EncodedSample> samples) {
  if (samples.empty()) return 0.0;
  LstmCache cache;
  double sum = 0.0;
  for (const auto& s : samples) {
    sum += mse_loss(lstm_forward(params, s.input, cache), s.target).loss;
  }
  return sum / static_cast<double>(samples.size());
}

TrainResult train(std::span<const WindowSample> train_set,
                  std::span<const WindowSample> validation_set, const NormStats& stats,
                  const TrainConfig& config) {
  config.validate();
  if (train_set.empty() || validation_set.empty()) {
    throw std::invalid_argument("train: training and validation sets must be non-empty");
  }
  std::vector<EncodedSample> tr, va;
  tr.reserve(train_set.size());
  va.reserve(validation_set.size());
  for (const auto& w : train_set) tr.push_back(encode_window(w, stats));
  for (const auto& w : validation_set) va.push_back(encode_window(w, stats));

  TrainResult result;
  LstmParams params = LstmParams::init(config.hidden, config.seed);
  AdamState adam(params.size(), config.lr);
  LstmParams grads(config.hidden);
  LstmCache cache;
  std::mt19937_64 rng(config.seed ^ 0xA5A5A5A5A5A5A5A5ull);
  std::vector<std::size_t> order(tr.size());
  std::iota(order.begin(), order.end(), 0);

  double best_val = mean_loss(params, va);
  result.params = params;
  result.curve.push_back({0, mean_loss(params, tr), best_val});
  std::size_t since_best = 0;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      auto gd = grads.mutable_data();
      std::fill(gd.begin(), gd.end(), 0.0);
      for (std::size_t s = start; s < end; ++s) {
        const EncodedSample& ex = tr[order[s]];
        const MseResult loss = mse_loss(lstm_forward(params, ex.input, cache), ex.target);
        epoch_loss += loss.loss;
        lstm_backward_accumulate(params, cache, {loss.grad[0] * scale, loss.grad[1] * scale},
                                 grads);
      }
      adam_step(params, grads, adam);
    }
    const double val = mean_loss(params, va);
    result.curve.push_back({epoch, epoch_loss / static_cast<double>(tr.size()), val});
    if (val < best_val) {
      best_val = val;
      result.params = params;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

}  // namespace ristpc
