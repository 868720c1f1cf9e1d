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

#include "ristpc/geom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ristpc {

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 &&
         p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0;
}

double distance(const LocalPoint& a, const LocalPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = deg_to_rad(a.lat);
  const double phi2 = deg_to_rad(b.lat);
  const double sdphi = std::sin((phi2 - phi1) / 2.0);
  const double sdlam = std::sin(deg_to_rad(b.lon - a.lon) / 2.0);
  const double h = sdphi * sdphi + std::cos(phi1) * std::cos(phi2) * sdlam * sdlam;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::min(1.0, h)));
}

LocalPoint to_local(const GeoPoint& origin, const GeoPoint& p) {
  if (std::abs(p.lat - origin.lat) >= 1.0 || std::abs(p.lon - origin.lon) >= 1.0) {
    throw std::domain_error("to_local: point is 1 degree or more from origin");
  }
  const double x = kEarthRadiusM * std::cos(deg_to_rad(origin.lat)) *
                   deg_to_rad(p.lon - origin.lon);
  const double y = kEarthRadiusM * deg_to_rad(p.lat - origin.lat);
  return {x, y};
}

GeoPoint from_local(const GeoPoint& origin, const LocalPoint& p) {
  const double lat = origin.lat + rad_to_deg(p.y / kEarthRadiusM);
  const double lon =
      origin.lon +
      rad_to_deg(p.x / (kEarthRadiusM * std::cos(deg_to_rad(origin.lat))));
  return {lat, lon, 0.0};
}

double separation_angle(const LocalPoint& vertex, const LocalPoint& a,
                        const LocalPoint& b) {
  const double ax = a.x - vertex.x;
  const double ay = a.y - vertex.y;
  const double bx = b.x - vertex.x;
  const double by = b.y - vertex.y;
  if ((ax == 0.0 && ay == 0.0) || (bx == 0.0 && by == 0.0)) {
    throw std::domain_error("separation_angle: point coincides with vertex");
  }
  // atan2(|cross|, dot) stays accurate near 0 and pi where acos does not.
  return std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by);
}

}  // namespace ristpc
