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

#ifndef RISTPC_SYNTH_HPP_
#define RISTPC_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

// Synthetic GPS tracks written in the Geolife PLT layout. Used by tests and
// as a stand-in corpus where the real dataset is not available: walkers and
// cyclists on a street grid with gradual bends, stops, correlated GPS noise,
// irregular 1-5 s sampling and occasional logging gaps.

namespace ristpc {

struct SynthOptions {
  double origin_lat = 39.984;
  double origin_lon = 116.318;
  double start_spread_m = 3000.0;
  double min_duration_s = 1200.0;
  double max_duration_s = 2400.0;
  double cyclist_fraction = 0.2;
  double gps_noise_m = 2.0;
  double gap_rate_per_hour = 0.5;
};

// One PLT file's text. Deterministic in (options, seed).
std::string synth_plt(const SynthOptions& options, std::uint64_t seed);

// Writes `count` files named synth_000.plt, ... into dir (created if needed).
// Returns the written paths.
std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& dir,
                                                          std::size_t count,
                                                          std::uint64_t seed,
                                                          const SynthOptions& options = {});

// A straight, constant-speed, noise-free track sampled exactly every dt.
std::string straight_line_plt(double lat0, double lon0, double heading_deg, double speed_mps,
                              double dt, std::size_t points);

}  // namespace ristpc

#endif  // RISTPC_SYNTH_HPP_
