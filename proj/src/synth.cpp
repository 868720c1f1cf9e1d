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

#include "ristpc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

#include "ristpc/channel.hpp"
#include "ristpc/geom.hpp"

namespace ristpc {
namespace {

constexpr double kDay0 = 39744.0;  // 2008-10-23 as days since 1899-12-30
constexpr double kUnixDay0 = 14175.0;  // same date, days since 1970-01-01

const char* kHeader =
    "Geolife trajectory\n"
    "WGS 84\n"
    "Altitude is in Feet\n"
    "Reserved 3\n"
    "0,2,255,My Track,0,0,2,8421376\n"
    "0\n";

void append_record(std::string& out, const GeoPoint& p, double altitude_ft, int digits = 6) {
  const double days_since_1970 = p.t / 86400.0;
  const double days = days_since_1970 - kUnixDay0 + kDay0;
  const auto secs = static_cast<long long>(std::llround(p.t));
  const long long day = secs / 86400;
  const long long sod = secs % 86400;
  // Civil date from a day count (Howard Hinnant's algorithm).
  long long z = day + 719468;
  const long long era = (z >= 0 ? z : z - 146096) / 146097;
  const long long doe = z - era * 146097;
  const long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  long long y = yoe + era * 400;
  const long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const long long mp = (5 * doy + 2) / 153;
  const long long d = doy - (153 * mp + 2) / 5 + 1;
  const long long m = mp < 10 ? mp + 3 : mp - 9;
  if (m <= 2) ++y;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%.*f,%.*f,0,%d,%.10f,%04lld-%02lld-%02lld,%02lld:%02lld:%02lld\n", digits,
                p.lat, digits, p.lon, static_cast<int>(std::lround(altitude_ft)), days, y, m, d, sod / 3600,
                (sod / 60) % 60, sod % 60);
  out += buf;
}

double wrap_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

}  // namespace

std::string synth_plt(const SynthOptions& o, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const GeoPoint origin{o.origin_lat, o.origin_lon, 0.0};
  LocalPoint pos{(unif(rng) - 0.5) * 2.0 * o.start_spread_m,
                 (unif(rng) - 0.5) * 2.0 * o.start_spread_m};
  const bool cyclist = unif(rng) < o.cyclist_fraction;
  const double cruise = cyclist ? 3.5 + 1.5 * unif(rng) : 1.1 + 0.4 * unif(rng);
  // Streets run along a grid rotated by a per-file angle.
  const double grid = unif(rng) * kPi / 2.0;
  double heading = grid + kPi / 2.0 * std::floor(unif(rng) * 4.0);
  double target_heading = heading;
  double turn_rate = 0.0;  // rad/s bias of a slow bend
  double speed = cruise;
  double stop_left = 0.0;
  double next_turn = 60.0 + 240.0 * unif(rng);
  double noise_x = 0.0, noise_y = 0.0;
  const double duration = o.min_duration_s + (o.max_duration_s - o.min_duration_s) * unif(rng);

  const double t0 = (kUnixDay0 + static_cast<double>(seed % 200)) * 86400.0 +
                    std::floor(6.0 * 3600.0 + unif(rng) * 10.0 * 3600.0);
  double altitude = 150.0 + 100.0 * unif(rng);

  std::string out = kHeader;
  double next_sample = 0.0;
  for (double t = 0.0; t <= duration; t += 1.0) {
    // Manoeuvres: right-angle turns at "intersections", slow bends between.
    next_turn -= 1.0;
    if (next_turn <= 0.0) {
      const double r = unif(rng);
      if (r < 0.35) {
        target_heading = heading + kPi / 2.0;
      } else if (r < 0.7) {
        target_heading = heading - kPi / 2.0;
      } else if (r < 0.85) {
        turn_rate = (unif(rng) - 0.5) * 0.02;
      } else {
        stop_left = 10.0 + 50.0 * unif(rng);
      }
      next_turn = (cyclist ? 40.0 : 80.0) + 200.0 * unif(rng);
    }
    const double diff = wrap_pi(target_heading - heading);
    const double max_step = cyclist ? 0.25 : 0.35;
    heading += std::clamp(diff, -max_step, max_step);
    target_heading += turn_rate;
    heading += turn_rate;
    turn_rate *= 0.995;

    if (stop_left > 0.0) {
      stop_left -= 1.0;
      speed *= 0.5;
    } else {
      speed += 0.2 * (cruise - speed) + 0.05 * cruise * gauss(rng);
      speed = std::max(0.0, speed);
    }
    pos.x += speed * std::cos(heading);
    pos.y += speed * std::sin(heading);

    noise_x = 0.9 * noise_x + std::sqrt(1.0 - 0.81) * o.gps_noise_m * gauss(rng);
    noise_y = 0.9 * noise_y + std::sqrt(1.0 - 0.81) * o.gps_noise_m * gauss(rng);
    altitude += 0.2 * gauss(rng);

    if (t >= next_sample) {
      GeoPoint p = from_local(origin, {pos.x + noise_x, pos.y + noise_y});
      p.t = t0 + t;
      append_record(out, p, altitude);
      static constexpr double kIntervals[] = {1.0, 2.0, 2.0, 3.0, 5.0, 5.0};
      next_sample = t + kIntervals[static_cast<std::size_t>(unif(rng) * 6.0) % 6];
      if (unif(rng) < o.gap_rate_per_hour / 3600.0 * 3.0) {
        next_sample += 90.0 + 180.0 * unif(rng);
      }
    }
  }
  return out;
}

std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::size_t count,
                                                          std::uint64_t seed,
                                                          const SynthOptions& options) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (std::size_t i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "synth_%03zu.plt", i);
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << synth_plt(options, sub_seed(seed, i, 0x5EED));
    paths.push_back(path);
  }
  return paths;
}

std::string straight_line_plt(double lat0, double lon0, double heading_deg, double speed_mps,
                              double dt, std::size_t points) {
  const GeoPoint origin{lat0, lon0, 0.0};
  const double h = deg_to_rad(heading_deg);
  const double t0 = kUnixDay0 * 86400.0 + 8.0 * 3600.0;
  std::string out = kHeader;
  for (std::size_t k = 0; k < points; ++k) {
    const double s = speed_mps * dt * static_cast<double>(k);
    GeoPoint p = from_local(origin, {s * std::cos(h), s * std::sin(h)});
    p.t = t0 + dt * static_cast<double>(k);
    append_record(out, p, 100.0, 10);
  }
  return out;
}

}  // namespace ristpc
