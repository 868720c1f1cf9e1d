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

#ifndef RISTPC_SIM_HPP_
#define RISTPC_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ristpc/channel.hpp"
#include "ristpc/control.hpp"
#include "ristpc/geom.hpp"
#include "ristpc/link.hpp"
#include "ristpc/predictor.hpp"
#include "ristpc/ris.hpp"
#include "ristpc/trajectory.hpp"

namespace ristpc {

struct ScenarioConfig {
  std::size_t ris_count = 10;
  double ris_radius_m = 10.0;
  std::size_t elements = 600;
  double p_tx = 1.0;     // W
  double noise = 1e-12;  // W
  std::size_t interferers = 10;
  int bits = 2;
  double dt = 5.0;           // s
  double horizon_s = 50.0;   // s
  double lambda0 = 5.0 * kPi / 180.0;
  std::uint64_t seed = 1;
  double region_min_m = 50.0;
  double region_max_m = 500.0;
  std::size_t frames = 50;
  PathLossParams direct_pathloss;
  PathLossParams reflected_pathloss;
  // Sequential by default: the isolated rule almost never switches a RIS
  // OFF in this scenario and then tracks always-on.
  TpcVariant tpc_variant = TpcVariant::kSequential;

  std::size_t horizon_steps() const;
  // Throws std::invalid_argument listing the first violated constraint.
  void validate() const;
};

// One user's track replayed in the scenario plane. Sample k of `track` is the
// user's position at simulation time k * dt.
struct UserTrack {
  Trajectory track;
  GeoPoint geo_origin;     // centroid of the replayed part
  double scale = 1.0;      // applied to local meters
  LocalPoint offset;       // placement of geo_origin in the plane

  LocalPoint place(const GeoPoint& p) const;
};

struct Scenario {
  ScenarioConfig config;
  LocalPoint bs{0.0, 0.0};
  std::vector<LocalPoint> ris;
  std::vector<UserTrack> users;  // [0] desired, then interferers
};

// BS at the origin, RIS i at bearing 2 pi i / R on the configured circle.
// trajectories[0] is the desired user, the next `interferers` entries are
// interferers; each is resampled at dt (longest gap-free piece kept), then
// scaled and translated so the replayed part lies inside the
// [region_min_m, region_max_m] annulus. Throws std::invalid_argument if a
// trajectory cannot cover a single frame (8 history points + horizon).
Scenario build_scenario(const ScenarioConfig& config, std::span<const Trajectory> trajectories);

// Fading of one frame, shared by every method.
struct FrameChannels {
  std::vector<ComplexGain> direct;                          // [user]
  std::vector<std::vector<ComplexGain>> to_bs;              // [ris][n]
  std::vector<std::vector<std::vector<ComplexGain>>> from_user;  // [user][ris][n]
};

FrameChannels draw_channels(const ScenarioConfig& config, std::size_t users, std::size_t frame,
                            std::size_t elements);

// Link budget for the given user positions (index 0 = desired user).
LinkBudget make_budget(const Scenario& scenario, const FrameChannels& channels,
                       std::span<const LocalPoint> positions, double p_tx, std::size_t elements);

// Stages 1 and 2 of a frame that do not depend on RF settings: observed
// history, predicted and true positions at t + horizon.
struct FrameInputs {
  std::size_t frame = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<GeoPoint> current;    // at t
  std::vector<GeoPoint> predicted;  // for t + horizon
  std::vector<GeoPoint> truth;      // at t + horizon
  double pred_err_m = 0.0;          // mean over users, geographic meters
};

FrameInputs prepare_frame(const Scenario& scenario, std::size_t frame,
                          const TrajectoryPredictor& predictor);

struct MethodOutcome {
  Method method = Method::kDirect;
  ControlDecision decision;  // gamma as seen by the deciding budget
  double gamma = 0.0;        // achieved on the true t + horizon geometry
};

struct FrameResult {
  std::size_t frame = 0;
  bool skipped = false;
  std::string skip_reason;
  std::vector<LocalPoint> true_positions;
  std::vector<LocalPoint> predicted_positions;
  std::vector<LocalPoint> current_positions;
  double pred_err_m = 0.0;
  std::vector<MethodOutcome> outcomes;  // in the order of `methods`

  const MethodOutcome& outcome(Method m) const;
};

// Stage 3: every method decides on its own view of the geometry (TPC on the
// predicted positions, reactive on the positions at t, the rest on the true
// ones) and is scored on the true t + horizon geometry with the same fading.
FrameResult evaluate_frame(const Scenario& scenario, const FrameInputs& inputs,
                           std::span<const Method> methods, double p_tx, std::size_t elements);

FrameResult run_frame(const Scenario& scenario, std::size_t frame, std::span<const Method> methods,
                      const TrajectoryPredictor& predictor);

enum class SweepKind { kPower, kElements };

struct SweepRow {
  Method method = Method::kDirect;
  double param = 0.0;
  std::size_t frame = 0;
  double gamma_db = 0.0;
  double pred_err_m = 0.0;
  std::string v_bits;
};

struct SweepSummary {
  Method method = Method::kDirect;
  double param = 0.0;
  double mean_gamma_db = 0.0;  // mean of per-frame dB values
  std::size_t frames = 0;      // evaluated frames
};

struct SweepResult {
  SweepKind kind = SweepKind::kPower;
  std::vector<double> params;
  std::vector<Method> methods;
  std::vector<SweepRow> rows;          // ordered by (param, frame, method)
  std::vector<SweepSummary> summary;   // ordered by (param, method)
  std::vector<std::string> skipped;    // "frame N: reason"
  std::vector<FrameResult> frames;     // last param only, for inspection

  double mean_db(Method m, double param) const;
};

// Mean SINR per method per transmit power over frames [0, frames).
SweepResult sweep_power(const Scenario& scenario, std::span<const double> powers,
                        std::size_t frames, std::span<const Method> methods,
                        const TrajectoryPredictor& predictor, std::size_t threads = 1);

// Same, varying the element count of every RIS.
SweepResult sweep_elements(const Scenario& scenario, std::span<const std::size_t> element_counts,
                           std::size_t frames, std::span<const Method> methods,
                           const TrajectoryPredictor& predictor, std::size_t threads = 1);

// "method,param,frame,gamma_db,pred_err_m,v_bits" with RFC 4180 quoting.
std::string sweep_csv(const SweepResult& result);

std::string csv_field(std::string_view s);
std::string format_double(double v);  // shortest round-trip representation

}  // namespace ristpc

#endif  // RISTPC_SIM_HPP_
