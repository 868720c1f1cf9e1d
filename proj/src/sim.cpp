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

#include "ristpc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>

namespace ristpc {
namespace {

constexpr std::uint64_t kPlacementStream = 0x9A1ACE;

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are written
// by index, so the output does not depend on scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::size_t longest_segment(const std::vector<Trajectory>& segs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].points.size() > segs[best].points.size()) best = i;
  }
  return best;
}

double interferer_attenuation(const Scenario& sc, std::size_t ris, const LocalPoint& desired,
                              const LocalPoint& interferer) {
  const LocalPoint& at = sc.ris[ris];
  const bool same = desired.x == interferer.x && desired.y == interferer.y;
  const double lambda = same ? 0.0 : separation_angle(at, desired, interferer);
  return angle_attenuation(AngleAttenuation{sc.config.lambda0}, lambda);
}

template <typename Param>
SweepResult run_sweep(const Scenario& scenario, SweepKind kind, std::span<const Param> params,
                      std::size_t frames, std::span<const Method> methods,
                      const TrajectoryPredictor& predictor, std::size_t threads) {
  if (params.empty()) throw std::invalid_argument("sweep: at least one sweep point required");
  if (methods.empty()) throw std::invalid_argument("sweep: at least one method required");
  SweepResult result;
  result.kind = kind;
  result.methods.assign(methods.begin(), methods.end());
  for (Param p : params) result.params.push_back(static_cast<double>(p));

  std::vector<FrameInputs> inputs(frames);
  parallel_for(frames, threads,
               [&](std::size_t f) { inputs[f] = prepare_frame(scenario, f, predictor); });
  for (const FrameInputs& in : inputs) {
    if (in.skipped) result.skipped.push_back("frame " + std::to_string(in.frame) + ": " + in.skip_reason);
  }

  for (Param p : params) {
    const double p_tx = kind == SweepKind::kPower ? static_cast<double>(p) : scenario.config.p_tx;
    const std::size_t n =
        kind == SweepKind::kElements ? static_cast<std::size_t>(p) : scenario.config.elements;
    std::vector<FrameResult> results(frames);
    parallel_for(frames, threads, [&](std::size_t f) {
      results[f] = evaluate_frame(scenario, inputs[f], methods, p_tx, n);
    });
    std::vector<double> sum(methods.size(), 0.0);
    std::size_t evaluated = 0;
    for (const FrameResult& fr : results) {
      if (fr.skipped) continue;
      ++evaluated;
      for (std::size_t k = 0; k < methods.size(); ++k) {
        const MethodOutcome& o = fr.outcomes[k];
        const double db = to_db(o.gamma);
        sum[k] += db;
        result.rows.push_back({o.method, static_cast<double>(p), fr.frame, db, fr.pred_err_m,
                               v_bits(o.decision.v)});
      }
    }
    for (std::size_t k = 0; k < methods.size(); ++k) {
      result.summary.push_back({methods[k], static_cast<double>(p),
                                evaluated > 0 ? sum[k] / static_cast<double>(evaluated) : 0.0,
                                evaluated});
    }
    result.frames = std::move(results);
  }
  return result;
}

}  // namespace

std::size_t ScenarioConfig::horizon_steps() const {
  return static_cast<std::size_t>(std::llround(horizon_s / dt));
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("scenario: " + m); };
  if (ris_count < 1) fail("ris_count must be >= 1");
  if (!(ris_radius_m > 0.0)) fail("ris_radius_m must be > 0");
  if (elements < 1) fail("elements must be >= 1");
  if (!(p_tx > 0.0)) fail("p_tx must be > 0");
  if (!(noise > 0.0)) fail("noise must be > 0");
  if (bits < 1 || bits > 8) fail("bits must be in [1, 8]");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (!(horizon_s > 0.0)) fail("horizon_s must be > 0");
  if (std::abs(horizon_s / dt - std::round(horizon_s / dt)) > 1e-9) {
    fail("horizon_s must be a multiple of dt");
  }
  if (!(lambda0 > 0.0 && lambda0 <= kPi)) fail("lambda0 must be in (0, pi]");
  if (!(region_min_m > ris_radius_m) || !(region_max_m > region_min_m)) {
    fail("user region must satisfy ris_radius_m < region_min_m < region_max_m");
  }
  if (ris_count > kMaxExhaustiveRis) fail("ris_count must be <= 20 (oracle enumeration)");
  direct_pathloss.validate();
  reflected_pathloss.validate();
}

LocalPoint UserTrack::place(const GeoPoint& p) const {
  const LocalPoint l = to_local(geo_origin, p);
  return {offset.x + scale * l.x, offset.y + scale * l.y};
}

Scenario build_scenario(const ScenarioConfig& config, std::span<const Trajectory> trajectories) {
  config.validate();
  if (trajectories.size() < 1 + config.interferers) {
    throw std::invalid_argument("scenario: need 1 desired + " + std::to_string(config.interferers) +
                                " interferer trajectories, got " +
                                std::to_string(trajectories.size()));
  }
  Scenario sc;
  sc.config = config;
  for (std::size_t i = 0; i < config.ris_count; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(config.ris_count);
    sc.ris.push_back({config.ris_radius_m * std::cos(a), config.ris_radius_m * std::sin(a)});
  }
  const std::size_t h = config.horizon_steps();
  const std::size_t needed = kWindowLength + h;
  const std::size_t replay = kWindowLength + h + config.frames - 1;
  for (std::size_t u = 0; u <= config.interferers; ++u) {
    std::vector<Trajectory> segs;
    try {
      segs = resample(trajectories[u], config.dt);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("scenario: user " + std::to_string(u) + ": " + e.what());
    }
    if (segs.empty() || segs[longest_segment(segs)].points.size() < needed) {
      throw std::invalid_argument("scenario: user " + std::to_string(u) +
                                  " trajectory too short for one frame");
    }
    UserTrack ut;
    ut.track = std::move(segs[longest_segment(segs)]);
    const std::size_t used = std::min(replay, ut.track.points.size());
    double clat = 0.0, clon = 0.0;
    for (std::size_t k = 0; k < used; ++k) {
      clat += ut.track.points[k].lat;
      clon += ut.track.points[k].lon;
    }
    ut.geo_origin = {clat / static_cast<double>(used), clon / static_cast<double>(used), 0.0};
    double extent = 0.0;
    for (std::size_t k = 0; k < used; ++k) {
      const LocalPoint l = to_local(ut.geo_origin, ut.track.points[k]);
      extent = std::max(extent, std::hypot(l.x, l.y));
    }
    const double max_extent = (config.region_max_m - config.region_min_m) / 4.0;
    ut.scale = extent > max_extent ? max_extent / extent : 1.0;
    const double r_extent = ut.scale * extent;
    std::mt19937_64 rng(sub_seed(config.seed, u, kPlacementStream));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double angle = 2.0 * kPi * unif(rng);
    const double r_lo = config.region_min_m + r_extent;
    const double r_hi = config.region_max_m - r_extent;
    const double radius = r_lo + (r_hi - r_lo) * unif(rng);
    ut.offset = {radius * std::cos(angle), radius * std::sin(angle)};
    sc.users.push_back(std::move(ut));
  }
  return sc;
}

FrameChannels draw_channels(const ScenarioConfig& config, std::size_t users, std::size_t frame,
                            std::size_t elements) {
  FrameChannels ch;
  for (std::size_t u = 0; u < users; ++u) {
    std::mt19937_64 rng(sub_seed(config.seed, frame, link_id::direct(u)));
    ch.direct.push_back(sample_cn01(rng, 1)[0]);
  }
  for (std::size_t i = 0; i < config.ris_count; ++i) {
    std::mt19937_64 rng(sub_seed(config.seed, frame, link_id::ris_to_bs(i)));
    ch.to_bs.push_back(sample_cn01(rng, elements));
  }
  ch.from_user.resize(users);
  for (std::size_t u = 0; u < users; ++u) {
    for (std::size_t i = 0; i < config.ris_count; ++i) {
      std::mt19937_64 rng(sub_seed(config.seed, frame, link_id::user_to_ris(u, i)));
      ch.from_user[u].push_back(sample_cn01(rng, elements));
    }
  }
  return ch;
}

LinkBudget make_budget(const Scenario& sc, const FrameChannels& ch,
                       std::span<const LocalPoint> positions, double p_tx, std::size_t elements) {
  const ScenarioConfig& cfg = sc.config;
  const double c_direct = unit_pathloss(cfg.direct_pathloss);
  const double c_refl = unit_pathloss(cfg.reflected_pathloss);
  LinkBudget b;
  b.p_tx = p_tx;
  b.noise = cfg.noise;
  b.cascades.resize(positions.size());
  for (std::size_t u = 0; u < positions.size(); ++u) {
    const double d_u = distance(sc.bs, positions[u]);
    b.direct.push_back(std::sqrt(pathloss_direct(c_direct, d_u, cfg.direct_pathloss.exponent)) *
                       ch.direct[u]);
    for (std::size_t i = 0; i < sc.ris.size(); ++i) {
      CascadeLink link;
      link.chan.to_bs.assign(ch.to_bs[i].begin(),
                             ch.to_bs[i].begin() + static_cast<std::ptrdiff_t>(elements));
      link.chan.from_user.assign(ch.from_user[u][i].begin(),
                                 ch.from_user[u][i].begin() + static_cast<std::ptrdiff_t>(elements));
      link.amplitude = std::sqrt(pathloss_reflected(c_refl, distance(sc.bs, sc.ris[i]),
                                                    distance(positions[u], sc.ris[i]),
                                                    cfg.reflected_pathloss.exponent));
      link.attenuation =
          u == 0 ? 1.0 : interferer_attenuation(sc, i, positions[0], positions[u]);
      b.cascades[u].push_back(std::move(link));
    }
  }
  return b;
}

FrameInputs prepare_frame(const Scenario& sc, std::size_t frame,
                          const TrajectoryPredictor& predictor) {
  FrameInputs in;
  in.frame = frame;
  const std::size_t h = sc.config.horizon_steps();
  const std::size_t now = frame + kWindowLength - 1;
  for (std::size_t u = 0; u < sc.users.size(); ++u) {
    const auto& pts = sc.users[u].track.points;
    if (now + h >= pts.size()) {
      in.skipped = true;
      in.skip_reason = "user " + std::to_string(u) + " trajectory ends before t + horizon";
      return in;
    }
  }
  double err = 0.0;
  for (const UserTrack& ut : sc.users) {
    const auto& pts = ut.track.points;
    const std::span<const GeoPoint> hist(pts.data(), now + 1);
    in.current.push_back(pts[now]);
    in.truth.push_back(pts[now + h]);
    in.predicted.push_back(predictor.predict(hist, h, sc.config.dt).back());
    err += haversine_m(in.predicted.back(), in.truth.back());
  }
  in.pred_err_m = err / static_cast<double>(sc.users.size());
  return in;
}

const MethodOutcome& FrameResult::outcome(Method m) const {
  for (const auto& o : outcomes) {
    if (o.method == m) return o;
  }
  throw std::out_of_range("frame result has no outcome for method " + std::string(method_name(m)));
}

FrameResult evaluate_frame(const Scenario& sc, const FrameInputs& in,
                           std::span<const Method> methods, double p_tx, std::size_t elements) {
  FrameResult fr;
  fr.frame = in.frame;
  fr.pred_err_m = in.pred_err_m;
  if (in.skipped) {
    fr.skipped = true;
    fr.skip_reason = in.skip_reason;
    return fr;
  }
  for (std::size_t u = 0; u < sc.users.size(); ++u) {
    fr.true_positions.push_back(sc.users[u].place(in.truth[u]));
    fr.predicted_positions.push_back(sc.users[u].place(in.predicted[u]));
    fr.current_positions.push_back(sc.users[u].place(in.current[u]));
  }
  const FrameChannels ch = draw_channels(sc.config, sc.users.size(), in.frame, elements);
  const LinkBudget truth = make_budget(sc, ch, fr.true_positions, p_tx, elements);
  const PhaseCodebook codebook(sc.config.bits);
  // Phases follow the CSI at transmission time for every method; the
  // predicted or stale geometry only drives the ON-OFF vector.
  const std::vector<PhaseConfig> phases = select_all_phases(truth, codebook);

  for (Method m : methods) {
    MethodOutcome o;
    o.method = m;
    switch (m) {
      case Method::kTpc:
        o.decision = tpc_onoff(make_budget(sc, ch, fr.predicted_positions, p_tx, elements),
                               codebook, sc.config.tpc_variant);
        break;
      case Method::kReactive:
        o.decision =
            reactive_onoff(make_budget(sc, ch, fr.current_positions, p_tx, elements), codebook,
                           sc.config.tpc_variant);
        break;
      case Method::kAlwaysOn:
        o.decision = always_on(truth, codebook);
        break;
      case Method::kOracle:
        o.decision = exhaustive_onoff(truth, codebook);
        break;
      case Method::kDirect:
        o.decision = direct_only(truth, codebook);
        break;
    }
    o.decision.configs = phases;
    o.gamma = rescore(o.decision, truth);
    fr.outcomes.push_back(std::move(o));
  }
  return fr;
}

FrameResult run_frame(const Scenario& scenario, std::size_t frame, std::span<const Method> methods,
                      const TrajectoryPredictor& predictor) {
  return evaluate_frame(scenario, prepare_frame(scenario, frame, predictor), methods,
                        scenario.config.p_tx, scenario.config.elements);
}

double SweepResult::mean_db(Method m, double param) const {
  for (const auto& s : summary) {
    if (s.method == m && s.param == param) return s.mean_gamma_db;
  }
  throw std::out_of_range("sweep result: no summary for " + std::string(method_name(m)));
}

SweepResult sweep_power(const Scenario& scenario, std::span<const double> powers,
                        std::size_t frames, std::span<const Method> methods,
                        const TrajectoryPredictor& predictor, std::size_t threads) {
  for (double p : powers) {
    if (!(p > 0.0)) throw std::invalid_argument("sweep_power: powers must be > 0");
  }
  return run_sweep(scenario, SweepKind::kPower, powers, frames, methods, predictor, threads);
}

SweepResult sweep_elements(const Scenario& scenario, std::span<const std::size_t> element_counts,
                           std::size_t frames, std::span<const Method> methods,
                           const TrajectoryPredictor& predictor, std::size_t threads) {
  for (std::size_t n : element_counts) {
    if (n < 1) throw std::invalid_argument("sweep_elements: element counts must be >= 1");
  }
  return run_sweep(scenario, SweepKind::kElements, element_counts, frames, methods, predictor,
                   threads);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "method,param,frame,gamma_db,pred_err_m,v_bits\r\n";
  for (const SweepRow& r : result.rows) {
    out += csv_field(method_name(r.method));
    out += ',';
    out += csv_field(format_double(r.param));
    out += ',';
    out += std::to_string(r.frame);
    out += ',';
    out += csv_field(format_double(r.gamma_db));
    out += ',';
    out += csv_field(format_double(r.pred_err_m));
    out += ',';
    out += csv_field(r.v_bits);
    out += "\r\n";
  }
  return out;
}

}  // namespace ristpc
