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

#include "ristpc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "ristpc/geom.hpp"

namespace ristpc {

void PathLossParams::validate() const {
  if (!(frequency_hz > 0.0)) throw std::invalid_argument("path loss: frequency must be > 0");
  if (!(gain_tx > 0.0) || !(gain_rx > 0.0)) {
    throw std::invalid_argument("path loss: antenna gains must be > 0");
  }
  if (!(exponent >= 2.0)) throw std::invalid_argument("path loss: exponent must be >= 2");
}

double unit_pathloss(const PathLossParams& params) {
  params.validate();
  const double a = kSpeedOfLight * std::sqrt(params.gain_tx * params.gain_rx) /
                   (4.0 * kPi * params.frequency_hz);
  return a * a;
}

double pathloss_direct(double c, double d, double alpha) {
  if (!(d > 0.0)) throw std::domain_error("pathloss_direct: distance must be > 0");
  return c * std::pow(d, -alpha);
}

double pathloss_reflected(double c, double d_i, double d_ui, double alpha) {
  if (!(d_i > 0.0) || !(d_ui > 0.0)) {
    throw std::domain_error("pathloss_reflected: distances must be > 0");
  }
  return pathloss_direct(c, d_i * d_ui, alpha);
}

void CascadeChannel::validate() const {
  if (to_bs.empty() || to_bs.size() != from_user.size()) {
    throw std::invalid_argument("cascade channel: legs must have equal length >= 1");
  }
}

std::vector<ComplexGain> sample_cn01(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::vector<ComplexGain> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    out.emplace_back(re, im);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t frame,
                       std::uint64_t link) {
  return splitmix64(splitmix64(splitmix64(master) ^ frame) ^ link);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace ristpc
