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

#include "ristpc/predictor.hpp"

#include <cmath>
#include <stdexcept>

#include "ristpc/geom.hpp"

namespace ristpc {

std::vector<GeoPoint> predict_horizon(const LstmParams& params, const NormStats& stats,
                                      std::span<const GeoPoint> history, std::size_t steps,
                                      double dt) {
  if (history.size() < kWindowLength) {
    throw std::invalid_argument("predict_horizon: need at least 8 history points");
  }
  if (steps == 0) throw std::invalid_argument("predict_horizon: steps must be >= 1");
  WindowSample window;
  window.input.assign(history.end() - static_cast<std::ptrdiff_t>(kWindowLength), history.end());
  const double t0 = history.back().t;
  LstmCache cache;
  std::vector<GeoPoint> out;
  out.reserve(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    window.target = window.input.back();  // unused by the encoder's input half
    const EncodedSample enc = encode_window(window, stats);
    const auto y = lstm_forward(params, enc.input, cache);
    const GeoPoint& anchor = window.input.back();
    GeoPoint next{anchor.lat + (y[0] * stats.std_lat + stats.mean_lat),
                  anchor.lon + (y[1] * stats.std_lon + stats.mean_lon),
                  t0 + static_cast<double>(k) * dt};
    out.push_back(next);
    window.input.erase(window.input.begin());
    window.input.push_back(next);
  }
  return out;
}

std::vector<GeoPoint> linear_baseline(std::span<const GeoPoint> history, std::size_t steps) {
  if (history.size() < 2) throw std::invalid_argument("linear_baseline: need 2 history points");
  const GeoPoint& last = history[history.size() - 1];
  const GeoPoint& prev = history[history.size() - 2];
  const double dlat = last.lat - prev.lat;
  const double dlon = last.lon - prev.lon;
  const double dt = last.t - prev.t;
  std::vector<GeoPoint> out;
  out.reserve(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double kk = static_cast<double>(k);
    out.push_back({last.lat + kk * dlat, last.lon + kk * dlon, last.t + kk * dt});
  }
  return out;
}

bool heading_change_exceeds(const GeoPoint& previous, const GeoPoint& now, const GeoPoint& future,
                            double threshold_deg, double min_move_m) {
  const LocalPoint a = to_local(now, previous);
  const LocalPoint b = to_local(now, future);
  if (std::hypot(a.x, a.y) < min_move_m || std::hypot(b.x, b.y) < min_move_m) return false;
  // Heading in is (now - previous) = -a; heading out is b.
  const LocalPoint in{-a.x, -a.y};
  const double angle = separation_angle({0.0, 0.0}, in, b);
  return rad_to_deg(angle) > threshold_deg;
}

HorizonReport evaluate_horizon(const TrajectoryPredictor& model,
                               const TrajectoryPredictor& baseline,
                               std::span<const Trajectory> segments, std::size_t steps,
                               double dt, std::size_t stride) {
  if (steps == 0 || stride == 0) throw std::invalid_argument("evaluate_horizon: bad steps/stride");
  HorizonReport rep;
  const std::size_t need = std::max(model.min_history(), baseline.min_history());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& pts = segments[s].points;
    if (pts.size() < need + steps) continue;
    bool used = false;
    for (std::size_t last = need - 1; last + steps < pts.size(); last += stride) {
      const std::span<const GeoPoint> hist(pts.data(), last + 1);
      const GeoPoint& truth = pts[last + steps];
      HorizonSample hs;
      hs.segment = s;
      hs.index = last;
      hs.model_error_m = haversine_m(model.predict(hist, steps, dt).back(), truth);
      hs.baseline_error_m = haversine_m(baseline.predict(hist, steps, dt).back(), truth);
      hs.curved = heading_change_exceeds(pts[last - 1], pts[last], truth);
      rep.samples.push_back(hs);
      used = true;
    }
    rep.trajectories += used ? 1 : 0;
  }
  double sm = 0.0, sb = 0.0, cm = 0.0, cb = 0.0;
  for (const auto& hs : rep.samples) {
    sm += hs.model_error_m;
    sb += hs.baseline_error_m;
    if (hs.curved) {
      ++rep.curved;
      cm += hs.model_error_m;
      cb += hs.baseline_error_m;
    }
  }
  if (!rep.samples.empty()) {
    rep.model_mean_m = sm / static_cast<double>(rep.samples.size());
    rep.baseline_mean_m = sb / static_cast<double>(rep.samples.size());
  }
  if (rep.curved > 0) {
    rep.model_curved_mean_m = cm / static_cast<double>(rep.curved);
    rep.baseline_curved_mean_m = cb / static_cast<double>(rep.curved);
  }
  return rep;
}

}  // namespace ristpc
