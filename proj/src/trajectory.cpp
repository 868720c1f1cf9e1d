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

#include "ristpc/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "ristpc/channel.hpp"

namespace ristpc {
namespace {

using nlohmann::json;

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

// "YYYY-MM-DD", "HH:MM:SS" -> seconds since the Unix epoch.
bool parse_timestamp(std::string_view date, std::string_view time, double& out) {
  const auto d = split_fields(date, '-');
  const auto t = split_fields(time, ':');
  if (d.size() != 3 || t.size() != 3) return false;
  int y = 0, mo = 0, da = 0, h = 0, mi = 0, s = 0;
  if (!parse_int(d[0], y) || !parse_int(d[1], mo) || !parse_int(d[2], da) ||
      !parse_int(t[0], h) || !parse_int(t[1], mi) || !parse_int(t[2], s)) {
    return false;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(da)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) return false;
  const auto days = sys_days{ymd}.time_since_epoch().count();
  out = static_cast<double>(days) * 86400.0 + h * 3600.0 + mi * 60.0 + s;
  return true;
}

GeoPoint lerp(const GeoPoint& a, const GeoPoint& b, double t) {
  const double f = (t - a.t) / (b.t - a.t);
  return {a.lat + f * (b.lat - a.lat), a.lon + f * (b.lon - a.lon), t};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json options_json(const DatasetOptions& o) {
  return json{{"dt", o.dt},
              {"max_gap_s", o.max_gap_s},
              {"in_len", o.in_len},
              {"horizon", o.horizon},
              {"split_seed", o.split_seed},
              {"train_fraction", o.train_fraction},
              {"validation_fraction", o.validation_fraction},
              {"max_files", o.max_files}};
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

PltParseResult parse_plt(std::string_view text) {
  PltParseResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto& pts = result.trajectory.points;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no <= 6) continue;
    if (line.empty()) continue;

    const auto f = split_fields(line, ',');
    if (f.size() != 7) {
      throw ParseError(line_no, "expected 7 comma-separated fields, got " +
                                    std::to_string(f.size()));
    }
    GeoPoint p;
    double unused = 0.0;
    if (!parse_double(f[0], p.lat) || !parse_double(f[1], p.lon) ||
        !parse_double(f[2], unused) || !parse_double(f[3], unused) ||
        !parse_double(f[4], unused)) {
      throw ParseError(line_no, "non-numeric field");
    }
    if (!is_valid(p)) throw ParseError(line_no, "latitude/longitude out of range");
    if (!parse_timestamp(f[5], f[6], p.t)) throw ParseError(line_no, "bad date/time");
    if (!pts.empty() && p.t <= pts.back().t) {
      ++result.dropped;
      continue;
    }
    pts.push_back(p);
  }
  if (line_no < 6) throw ParseError(line_no, "missing PLT header (6 lines)");
  if (pts.size() < 2) throw ParseError(line_no, "fewer than 2 valid points");
  return result;
}

std::vector<Trajectory> resample(const Trajectory& traj, double dt, double max_gap_s) {
  if (!(dt > 0.0)) throw std::invalid_argument("resample: dt must be > 0");
  if (traj.points.size() < 2 || traj.duration() < dt) {
    throw std::invalid_argument("resample: trajectory shorter than dt");
  }
  std::vector<Trajectory> out;
  const auto& src = traj.points;
  std::size_t begin = 0;
  while (begin < src.size()) {
    std::size_t end = begin + 1;
    while (end < src.size() && src[end].t - src[end - 1].t <= max_gap_s) ++end;
    // piece is [begin, end)
    const double t0 = src[begin].t;
    const double t_end = src[end - 1].t;
    if (t_end - t0 >= dt) {
      Trajectory piece;
      std::size_t j = begin;
      for (std::size_t k = 0;; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        if (t > t_end) break;
        while (j + 1 < end && src[j + 1].t <= t) ++j;
        piece.points.push_back(src[j].t == t || j + 1 >= end ? GeoPoint{src[j].lat, src[j].lon, t}
                                                             : lerp(src[j], src[j + 1], t));
      }
      out.push_back(std::move(piece));
    }
    begin = end;
  }
  return out;
}

std::vector<WindowSample> make_windows(const Trajectory& traj, std::size_t in_len,
                                       std::size_t horizon) {
  std::vector<WindowSample> out;
  const std::size_t len = traj.points.size();
  if (in_len == 0 || horizon == 0 || len < in_len + horizon) return out;
  out.reserve(len - in_len - horizon + 1);
  for (std::size_t s = 0; s + in_len + horizon <= len; ++s) {
    WindowSample w;
    w.input.assign(traj.points.begin() + static_cast<std::ptrdiff_t>(s),
                   traj.points.begin() + static_cast<std::ptrdiff_t>(s + in_len));
    w.target = traj.points[s + in_len + horizon - 1];
    out.push_back(std::move(w));
  }
  return out;
}

void NormStats::validate() const {
  if (!(std_lat > 0.0) || !(std_lon > 0.0) || !std::isfinite(std_lat) ||
      !std::isfinite(std_lon) || !std::isfinite(mean_lat) || !std::isfinite(mean_lon)) {
    throw std::invalid_argument("normalization: std must be finite and > 0");
  }
}

NormPair normalize(double lat, double lon, const NormStats& stats) {
  stats.validate();
  return {(lat - stats.mean_lat) / stats.std_lat, (lon - stats.mean_lon) / stats.std_lon};
}

std::vector<NormPair> normalize(std::span<const GeoPoint> points, const NormStats& stats) {
  std::vector<NormPair> out;
  out.reserve(points.size());
  for (const GeoPoint& p : points) out.push_back(normalize(p.lat, p.lon, stats));
  return out;
}

GeoPoint denormalize(const NormPair& z, const NormStats& stats) {
  stats.validate();
  return {z[0] * stats.std_lat + stats.mean_lat, z[1] * stats.std_lon + stats.mean_lon, 0.0};
}

AnchoredWindow anchor_window(const WindowSample& w) {
  if (w.input.empty()) throw std::invalid_argument("anchor_window: empty input");
  AnchoredWindow a;
  a.anchor = w.input.back();
  a.input.reserve(w.input.size());
  for (const GeoPoint& p : w.input) {
    a.input.push_back({p.lat - a.anchor.lat, p.lon - a.anchor.lon});
  }
  a.target = {w.target.lat - a.anchor.lat, w.target.lon - a.anchor.lon};
  return a;
}

NormStats fit_norm_stats(std::span<const WindowSample> train) {
  if (train.empty()) throw std::invalid_argument("fit_norm_stats: no training windows");
  double n = 0.0, s_lat = 0.0, s_lon = 0.0, q_lat = 0.0, q_lon = 0.0;
  auto add = [&](const std::array<double, 2>& v) {
    n += 1.0;
    s_lat += v[0];
    s_lon += v[1];
    q_lat += v[0] * v[0];
    q_lon += v[1] * v[1];
  };
  for (const WindowSample& w : train) {
    const AnchoredWindow a = anchor_window(w);
    for (std::size_t k = 0; k + 1 < a.input.size(); ++k) add(a.input[k]);
    add(a.target);
  }
  NormStats st;
  st.mean_lat = s_lat / n;
  st.mean_lon = s_lon / n;
  st.std_lat = std::sqrt(std::max(0.0, q_lat / n - st.mean_lat * st.mean_lat));
  st.std_lon = std::sqrt(std::max(0.0, q_lon / n - st.mean_lon * st.mean_lon));
  st.validate();
  return st;
}

double mean_haversine_error(std::span<const GeoPoint> pred, std::span<const GeoPoint> truth) {
  if (pred.empty() || pred.size() != truth.size()) {
    throw std::invalid_argument("mean_haversine_error: lengths must match and be >= 1");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += haversine_m(pred[i], truth[i]);
  return sum / static_cast<double>(pred.size());
}

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "unknown";
}

Split parse_split(std::string_view name) {
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    if (split_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown split '" + std::string(name) +
                              "' (expected train, validation or test)");
}

std::vector<std::string> list_plt_files(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw std::runtime_error("not a directory: " + dir.string());
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext != ".plt") continue;
    names.push_back(fs::relative(entry.path(), dir).generic_string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Dataset prepare_dataset(const std::filesystem::path& dir, const DatasetOptions& options) {
  if (options.train_fraction <= 0.0 || options.validation_fraction < 0.0 ||
      options.train_fraction + options.validation_fraction > 1.0) {
    throw std::invalid_argument("dataset: invalid split fractions");
  }
  Dataset ds;
  ds.options = options;
  ds.data_dir = dir.generic_string();

  std::vector<std::string> names = list_plt_files(dir);
  if (options.max_files > 0 && names.size() > options.max_files) names.resize(options.max_files);

  struct Parsed {
    FileRecord record;
    std::vector<Trajectory> segments;
  };
  std::vector<Parsed> parsed;
  for (const std::string& name : names) {
    try {
      const std::string text = read_file(dir / name);
      PltParseResult r = parse_plt(text);
      Parsed p;
      p.record.name = name;
      p.record.content_hash = fnv1a64(text);
      p.record.points = r.trajectory.points.size();
      p.record.dropped = r.dropped;
      p.segments = resample(r.trajectory, options.dt, options.max_gap_s);
      p.record.segments = p.segments.size();
      parsed.push_back(std::move(p));
    } catch (const std::exception& e) {
      ds.unreadable.push_back(name + ": " + e.what());
    }
  }
  if (parsed.empty()) throw std::runtime_error("no trajectories");

  const std::size_t n = parsed.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.split_seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(options.train_fraction * static_cast<double>(n))));
  const auto n_val = std::min<std::size_t>(
      n - n_train,
      static_cast<std::size_t>(std::lround(options.validation_fraction * static_cast<double>(n))));
  for (std::size_t rank = 0; rank < n; ++rank) {
    const Split s = rank < n_train ? Split::kTrain
                    : rank < n_train + n_val ? Split::kValidation
                                             : Split::kTest;
    parsed[order[rank]].record.split = s;
  }

  for (Parsed& p : parsed) {
    const auto idx = static_cast<std::size_t>(p.record.split);
    for (Trajectory& seg : p.segments) {
      auto w = make_windows(seg, options.in_len, options.horizon);
      p.record.windows += w.size();
      std::move(w.begin(), w.end(), std::back_inserter(ds.windows[idx]));
      ds.segments[idx].push_back(std::move(seg));
    }
    ds.files.push_back(std::move(p.record));
  }
  ds.stats = fit_norm_stats(ds.split_windows(Split::kTrain));
  return ds;
}

std::string manifest_json(const Dataset& ds) {
  json files = json::array();
  for (const FileRecord& f : ds.files) {
    files.push_back(json{{"name", f.name},
                         {"fnv1a64", hex64(f.content_hash)},
                         {"split", split_name(f.split)},
                         {"points", f.points},
                         {"dropped", f.dropped},
                         {"segments", f.segments},
                         {"windows", f.windows}});
  }
  json counts;
  for (Split s : {Split::kTrain, Split::kValidation, Split::kTest}) {
    std::size_t nfiles = 0;
    for (const FileRecord& f : ds.files) nfiles += f.split == s ? 1 : 0;
    counts[std::string(split_name(s))] = json{{"files", nfiles},
                                              {"segments", ds.split_segments(s).size()},
                                              {"windows", ds.split_windows(s).size()}};
  }
  json m{{"format", "ristpc-dataset"},
         {"version", 1},
         {"data_dir", ds.data_dir},
         {"options", options_json(ds.options)},
         {"files", files},
         {"unreadable", ds.unreadable},
         {"counts", counts},
         {"norm_stats", json{{"mean_lat", ds.stats.mean_lat},
                             {"mean_lon", ds.stats.mean_lon},
                             {"std_lat", ds.stats.std_lat},
                             {"std_lon", ds.stats.std_lon}}}};
  return m.dump(2) + "\n";
}

Dataset load_dataset(std::string_view manifest_text) {
  json m;
  try {
    m = json::parse(manifest_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("dataset manifest: ") + e.what());
  }
  if (m.value("format", "") != "ristpc-dataset" || m.value("version", 0) != 1) {
    throw std::runtime_error("dataset manifest: unsupported format or version");
  }
  DatasetOptions o;
  const json& jo = m.at("options");
  o.dt = jo.at("dt").get<double>();
  o.max_gap_s = jo.at("max_gap_s").get<double>();
  o.in_len = jo.at("in_len").get<std::size_t>();
  o.horizon = jo.at("horizon").get<std::size_t>();
  o.split_seed = jo.at("split_seed").get<std::uint64_t>();
  o.train_fraction = jo.at("train_fraction").get<double>();
  o.validation_fraction = jo.at("validation_fraction").get<double>();
  o.max_files = jo.at("max_files").get<std::size_t>();
  Dataset ds = prepare_dataset(m.at("data_dir").get<std::string>(), o);
  if (json::parse(manifest_json(ds)) != m) {
    throw std::runtime_error("dataset manifest: files on disk no longer match the manifest");
  }
  return ds;
}

}  // namespace ristpc
