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

#ifndef RISTPC_GEOM_HPP_
#define RISTPC_GEOM_HPP_

// Geographic and planar geometry. All scenario geometry is 2-D: antenna and
// user heights are ignored.

namespace ristpc {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// WGS-84 latitude/longitude in degrees; t is a timestamp in seconds (0 for
// static points).
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
  double t = 0.0;
};

bool is_valid(const GeoPoint& p);

// Meters east (x) and north (y) of a scenario origin.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;
};

double distance(const LocalPoint& a, const LocalPoint& b);

// Great-circle distance on a sphere of radius kEarthRadiusM.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

// Equirectangular projection around `origin`. Throws std::domain_error when
// p is 1 degree or more away from origin in either coordinate.
LocalPoint to_local(const GeoPoint& origin, const GeoPoint& p);

// Inverse of to_local. The returned point carries t = 0.
GeoPoint from_local(const GeoPoint& origin, const LocalPoint& p);

// Angle in [0, pi] between (a - vertex) and (b - vertex). Throws
// std::domain_error if a or b coincides with the vertex.
double separation_angle(const LocalPoint& vertex, const LocalPoint& a,
                        const LocalPoint& b);

}  // namespace ristpc

#endif  // RISTPC_GEOM_HPP_
