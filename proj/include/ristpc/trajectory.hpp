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

#ifndef RISTPC_TRAJECTORY_HPP_
#define RISTPC_TRAJECTORY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ristpc/geom.hpp"

namespace ristpc {

// Time-ordered track with strictly increasing timestamps.
struct Trajectory {
  std::vector<GeoPoint> points;

  double duration() const {
    return points.size() < 2 ? 0.0 : points.back().t - points.front().t;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct PltParseResult {
  Trajectory trajectory;
  std::size_t dropped = 0;  // out-of-order or duplicate timestamps
};

// Geolife PLT: six header lines, then "lat,lon,0,altitude,days,date,time"
// records with date YYYY-MM-DD and time HH:MM:SS (UTC). Timestamps become
// seconds since the Unix epoch. Throws ParseError naming the offending line,
// or when fewer than two valid points remain.
PltParseResult parse_plt(std::string_view text);

inline constexpr double kDefaultMaxGapS = 60.0;

// Linear interpolation onto t0, t0 + dt, ... within each gap-free piece. The
// source is split wherever consecutive samples are more than max_gap_s apart;
// pieces shorter than dt are dropped. Throws std::invalid_argument if dt <= 0
// or the whole trajectory lasts less than dt.
std::vector<Trajectory> resample(const Trajectory& traj, double dt,
                                 double max_gap_s = kDefaultMaxGapS);

inline constexpr std::size_t kWindowLength = 8;

struct WindowSample {
  std::vector<GeoPoint> input;  // in_len consecutive points
  GeoPoint target;
};

// Stride-1 windows; the target lies `horizon` steps after the last input.
// Returns an empty vector when the trajectory is too short.
std::vector<WindowSample> make_windows(const Trajectory& traj,
                                       std::size_t in_len = kWindowLength,
                                       std::size_t horizon = 1);

// Per-coordinate z-score statistics, in degrees.
struct NormStats {
  double mean_lat = 0.0;
  double mean_lon = 0.0;
  double std_lat = 1.0;
  double std_lon = 1.0;

  // Throws std::invalid_argument on a non-positive or non-finite std.
  void validate() const;
  friend bool operator==(const NormStats&, const NormStats&) = default;
};

using NormPair = std::array<double, 2>;

NormPair normalize(double lat, double lon, const NormStats& stats);
std::vector<NormPair> normalize(std::span<const GeoPoint> points, const NormStats& stats);
// Exact inverse of normalize up to rounding; the result carries t = 0.
GeoPoint denormalize(const NormPair& z, const NormStats& stats);

// Windows are expressed relative to their last input point before
// normalization: input[k] - anchor and target - anchor, in degrees.
struct AnchoredWindow {
  GeoPoint anchor;
  std::vector<std::array<double, 2>> input;
  std::array<double, 2> target{};
};

AnchoredWindow anchor_window(const WindowSample& w);

// Statistics of the anchored offsets (targets and all inputs except the
// anchor itself). Fit on the training split only. Throws
// std::invalid_argument on an empty span or zero spread.
NormStats fit_norm_stats(std::span<const WindowSample> train);

// Mean pointwise haversine distance. Throws std::invalid_argument on empty or
// mismatched inputs.
double mean_haversine_error(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth);

// ---------------------------------------------------------------------------
// Dataset assembly from a directory of PLT files.

enum class Split { kTrain = 0, kValidation = 1, kTest = 2 };

std::string_view split_name(Split s);
Split parse_split(std::string_view name);  // throws std::invalid_argument

struct DatasetOptions {
  double dt = 5.0;
  double max_gap_s = kDefaultMaxGapS;
  std::size_t in_len = kWindowLength;
  std::size_t horizon = 1;
  std::uint64_t split_seed = 20240101;
  double train_fraction = 0.8;
  double validation_fraction = 0.1;
  std::size_t max_files = 0;  // 0 = every PLT file found
};

struct FileRecord {
  std::string name;  // path relative to the data directory, '/' separated
  std::uint64_t content_hash = 0;
  Split split = Split::kTrain;
  std::size_t points = 0;
  std::size_t dropped = 0;
  std::size_t segments = 0;
  std::size_t windows = 0;
};

struct Dataset {
  DatasetOptions options;
  std::string data_dir;
  std::vector<FileRecord> files;
  std::vector<std::string> unreadable;  // "name: reason"
  NormStats stats;
  std::array<std::vector<Trajectory>, 3> segments;     // resampled, by split
  std::array<std::vector<WindowSample>, 3> windows;    // by split

  const std::vector<WindowSample>& split_windows(Split s) const {
    return windows[static_cast<std::size_t>(s)];
  }
  const std::vector<Trajectory>& split_segments(Split s) const {
    return segments[static_cast<std::size_t>(s)];
  }
};

// Lists *.plt files under `dir` recursively, sorted by relative path.
std::vector<std::string> list_plt_files(const std::filesystem::path& dir);

// Parses, resamples, splits by file and windows every PLT file under `dir`.
// Unreadable or malformed files are recorded and skipped. Throws
// std::runtime_error("no trajectories") if nothing usable remains.
Dataset prepare_dataset(const std::filesystem::path& dir, const DatasetOptions& options);

// Deterministic JSON manifest: options, per-file hashes and split
// assignment, window counts, and the normalization statistics.
std::string manifest_json(const Dataset& dataset);

// Rebuilds the dataset a manifest describes and checks file hashes and
// statistics against it. Throws std::runtime_error on any mismatch.
Dataset load_dataset(std::string_view manifest_text);

}  // namespace ristpc

#endif  // RISTPC_TRAJECTORY_HPP_
