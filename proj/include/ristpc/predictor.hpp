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

#ifndef RISTPC_PREDICTOR_HPP_
#define RISTPC_PREDICTOR_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ristpc/lstm.hpp"
#include "ristpc/trajectory.hpp"

namespace ristpc {

// Recursive one-step rollout: each prediction is appended to the window,
// which slides by one. Outputs carry timestamps last.t + k * dt. Throws
// std::invalid_argument if history has fewer than 8 points or steps == 0.
std::vector<GeoPoint> predict_horizon(const LstmParams& params, const NormStats& stats,
                                      std::span<const GeoPoint> history, std::size_t steps,
                                      double dt);

// Constant-velocity extrapolation of the last displacement:
// out[k-1] = last + k * (last - second_last). Throws std::invalid_argument
// with fewer than two history points.
std::vector<GeoPoint> linear_baseline(std::span<const GeoPoint> history, std::size_t steps);

class TrajectoryPredictor {
 public:
  virtual ~TrajectoryPredictor() = default;
  virtual std::string name() const = 0;
  virtual std::size_t min_history() const = 0;
  virtual std::vector<GeoPoint> predict(std::span<const GeoPoint> history, std::size_t steps,
                                        double dt) const = 0;
};

class LstmPredictor final : public TrajectoryPredictor {
 public:
  LstmPredictor(LstmParams params, NormStats stats)
      : params_(std::move(params)), stats_(stats) {}
  std::string name() const override { return "lstm"; }
  std::size_t min_history() const override { return kWindowLength; }
  std::vector<GeoPoint> predict(std::span<const GeoPoint> history, std::size_t steps,
                                double dt) const override {
    return predict_horizon(params_, stats_, history, steps, dt);
  }

 private:
  LstmParams params_;
  NormStats stats_;
};

class LinearPredictor final : public TrajectoryPredictor {
 public:
  std::string name() const override { return "linear"; }
  std::size_t min_history() const override { return 2; }
  std::vector<GeoPoint> predict(std::span<const GeoPoint> history, std::size_t steps,
                                double) const override {
    return linear_baseline(history, steps);
  }
};

// True when the net heading over the horizon (now -> future) differs from the
// last observed heading (previous -> now) by more than threshold_deg. Both
// displacements must exceed min_move_m, otherwise the track is treated as
// not curved.
bool heading_change_exceeds(const GeoPoint& previous, const GeoPoint& now, const GeoPoint& future,
                            double threshold_deg = 30.0, double min_move_m = 1.0);

struct HorizonSample {
  std::size_t segment = 0;
  std::size_t index = 0;  // index of the last observed point in the segment
  double model_error_m = 0.0;
  double baseline_error_m = 0.0;
  bool curved = false;
};

struct HorizonReport {
  std::vector<HorizonSample> samples;
  std::size_t trajectories = 0;  // segments that produced at least one sample
  double model_mean_m = 0.0;
  double baseline_mean_m = 0.0;
  std::size_t curved = 0;
  double model_curved_mean_m = 0.0;
  double baseline_curved_mean_m = 0.0;
};

// Haversine error of the final (steps-th) prediction for every window of
// every segment, stride `stride`, for a model and a baseline.
HorizonReport evaluate_horizon(const TrajectoryPredictor& model,
                               const TrajectoryPredictor& baseline,
                               std::span<const Trajectory> segments, std::size_t steps,
                               double dt, std::size_t stride = 1);

// ---------------------------------------------------------------------------
// Checkpoints: versioned JSON with shapes, weights, normalization statistics,
// resample step and a hash of the training configuration.

inline constexpr const char* kCheckpointFormat = "ristpc-lstm";
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  LstmParams params;
  NormStats stats;
  double dt = 5.0;
  TrainConfig config;
  std::string dataset_hash;  // of the dataset manifest
};

std::string train_config_hash(const TrainConfig& config);
std::string norm_stats_hash(const NormStats& stats);

std::string checkpoint_json(const Checkpoint& ckpt);
// Throws std::runtime_error on a wrong format or version, or inconsistent
// shapes.
Checkpoint parse_checkpoint(std::string_view text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace ristpc

#endif  // RISTPC_PREDICTOR_HPP_
