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

#ifndef RISTPC_CHANNEL_HPP_
#define RISTPC_CHANNEL_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ristpc {

using ComplexGain = std::complex<double>;

inline constexpr double kSpeedOfLight = 2.998e8;  // m/s

// Large-scale model parameters for one link class.
struct PathLossParams {
  double frequency_hz = 2.4e9;
  double gain_tx = 1.0;  // linear
  double gain_rx = 1.0;  // linear
  double exponent = 2.0;

  // Throws std::invalid_argument on f <= 0, gains <= 0 or exponent < 2.
  void validate() const;
};

// Unit-distance free-space path loss (c * sqrt(Gt * Gr) / (4 pi f))^2.
double unit_pathloss(const PathLossParams& params);

// C * d^-alpha. Throws std::domain_error if d <= 0.
double pathloss_direct(double c, double d, double alpha);

// Product-distance loss C * (d_i * d_ui)^-alpha for the user -> RIS -> BS
// path. Throws std::domain_error on a non-positive distance.
double pathloss_reflected(double c, double d_i, double d_ui, double alpha);

// Per-element small-scale fading of one RIS: to_bs[n] is RIS -> BS, from_user[n]
// is user -> RIS.
struct CascadeChannel {
  std::vector<ComplexGain> to_bs;
  std::vector<ComplexGain> from_user;

  std::size_t size() const { return to_bs.size(); }
  // Throws std::invalid_argument unless both vectors have the same length >= 1.
  void validate() const;
};

// n i.i.d. CN(0, 1) draws: real and imaginary parts each N(0, 1/2). Draws
// are consumed in order, so the first k values do not depend on n.
std::vector<ComplexGain> sample_cn01(std::mt19937_64& rng, std::size_t n);

// Seeding helpers. Every fading vector is drawn from its own stream keyed by
// (master seed, frame, link), so adding or removing draws elsewhere never
// shifts another link's values.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t sub_seed(std::uint64_t master, std::uint64_t frame,
                       std::uint64_t link);

// Stable 64-bit FNV-1a, used for manifests and config hashes.
std::uint64_t fnv1a64(std::string_view bytes);

// Link identifiers for sub_seed().
namespace link_id {
inline std::uint64_t direct(std::size_t user) { return 0x1000000ull + user; }
inline std::uint64_t ris_to_bs(std::size_t ris) { return 0x2000000ull + ris; }
inline std::uint64_t user_to_ris(std::size_t user, std::size_t ris) {
  return 0x3000000ull + (static_cast<std::uint64_t>(user) << 12) + ris;
}
}  // namespace link_id

}  // namespace ristpc

#endif  // RISTPC_CHANNEL_HPP_
