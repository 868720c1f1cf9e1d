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

#ifndef RISTPC_LSTM_HPP_
#define RISTPC_LSTM_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ristpc/trajectory.hpp"

namespace ristpc {

struct ParamGroup {
  std::string name;
  std::size_t offset = 0;
  std::size_t size = 0;
};

// Two stacked LSTM layers followed by an affine head H -> 2. All weights live
// in one flat buffer so optimizers and gradient checks can treat them
// uniformly:
//   layer l: W (4H x D_l), U (4H x H), b (4H); gate row blocks i, f, g, o
//   head:    W (2 x H), b (2)
// D_0 = 2 (normalized lat/lon offsets), D_1 = H.
class LstmParams {
 public:
  static constexpr int kLayers = 2;
  static constexpr std::size_t kInputDim = 2;
  static constexpr std::size_t kOutputDim = 2;

  LstmParams() : LstmParams(1) {}
  // All-zero parameters. Throws std::invalid_argument if hidden < 1.
  explicit LstmParams(int hidden);

  // Uniform(-1/sqrt(H), 1/sqrt(H)) weights, forget-gate bias +1.
  static LstmParams init(int hidden, std::uint64_t seed);

  int hidden() const { return hidden_; }
  std::size_t size() const { return data_.size(); }
  std::size_t input_dim(int layer) const;

  std::span<const double> data() const { return data_; }
  // Any mutable access invalidates forward caches taken earlier.
  std::span<double> mutable_data() {
    ++generation_;
    return data_;
  }
  std::uint64_t generation() const { return generation_; }

  const std::vector<ParamGroup>& groups() const { return groups_; }
  const ParamGroup& group(const std::string& name) const;

  const double* w(int layer) const { return data_.data() + groups_[3 * layer].offset; }
  const double* u(int layer) const { return data_.data() + groups_[3 * layer + 1].offset; }
  const double* b(int layer) const { return data_.data() + groups_[3 * layer + 2].offset; }
  const double* head_w() const { return data_.data() + groups_[6].offset; }
  const double* head_b() const { return data_.data() + groups_[7].offset; }

  friend bool operator==(const LstmParams& a, const LstmParams& b) {
    return a.hidden_ == b.hidden_ && a.data_ == b.data_;
  }

 private:
  int hidden_;
  std::vector<double> data_;
  std::vector<ParamGroup> groups_;
  std::uint64_t generation_ = 0;
};

// Activations of one forward pass, kept for lstm_backward.
struct LstmCache {
  const LstmParams* params = nullptr;
  std::uint64_t generation = 0;
  std::size_t steps = 0;
  int hidden = 0;
  // Per layer: inputs (steps x D), states h and c ((steps + 1) x H, row 0 is
  // the zero initial state), activated gates (steps x 4H), tanh(c) (steps x H).
  std::array<std::vector<double>, 2> x, h, c, gates, tanh_c;
  std::array<double, 2> output{};
};

// `inputs` holds steps x 2 normalized values, row-major. Throws
// std::invalid_argument on a size that is not a positive multiple of 2.
std::array<double, 2> lstm_forward(const LstmParams& params, std::span<const double> inputs,
                                   LstmCache& cache);

// Backpropagation through time for d(loss)/d(output) = grad_out. Returns
// gradients shaped like the parameters. Throws std::logic_error if the cache
// was produced by other or since-modified parameters.
LstmParams lstm_backward(const LstmParams& params, const LstmCache& cache,
                         const std::array<double, 2>& grad_out);

// Accumulating variant used in training: grads += d(loss)/d(params).
void lstm_backward_accumulate(const LstmParams& params, const LstmCache& cache,
                              const std::array<double, 2>& grad_out, LstmParams& grads);

struct MseResult {
  double loss = 0.0;
  std::array<double, 2> grad{};
};

// Mean of the two squared coordinate errors; grad = pred - target.
MseResult mse_loss(const std::array<double, 2>& pred, const std::array<double, 2>& target);

struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t t = 0;
  std::vector<double> m;
  std::vector<double> v;

  AdamState() = default;
  explicit AdamState(std::size_t n, double lr_ = 1e-3) : lr(lr_), m(n, 0.0), v(n, 0.0) {}
};

// One bias-corrected Adam update. Throws std::invalid_argument on a shape
// mismatch.
void adam_step(LstmParams& params, const LstmParams& grads, AdamState& state);

// A window encoded for the network: inputs relative to the last observed
// point, z-scored; target likewise.
struct EncodedSample {
  std::vector<double> input;  // in_len x 2
  std::array<double, 2> target{};
};

EncodedSample encode_window(const WindowSample& w, const NormStats& stats);

struct TrainConfig {
  std::size_t batch_size = 64;
  std::size_t epochs = 100;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  std::size_t patience = 10;
  int hidden = 64;

  void validate() const;  // throws std::invalid_argument
};

struct EpochStats {
  std::size_t epoch = 0;  // 0 = before any update
  double train_loss = 0.0;
  double val_loss = 0.0;
};

struct TrainResult {
  LstmParams params;  // best validation loss
  std::vector<EpochStats> curve;
  std::size_t best_epoch = 0;
};

// Mean MSE of a model over encoded samples.
double mean_loss(const LstmParams& params, std::span<const EncodedSample> samples);

// Mini-batch Adam/MSE training, reshuffled every epoch with config.seed,
// early-stopped on validation loss. Throws std::invalid_argument on an empty
// training or validation set.
TrainResult train(std::span<const WindowSample> train_set,
                  std::span<const WindowSample> validation_set, const NormStats& stats,
                  const TrainConfig& config);

}  // namespace ristpc

#endif  // RISTPC_LSTM_HPP_
