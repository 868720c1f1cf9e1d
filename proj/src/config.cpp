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

#include "ristpc/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace ristpc {
namespace {

using nlohmann::json;
using Setter = std::function<void(const json&)>;

// Applies `setters` to the members of `obj`; unknown keys and type errors are
// appended to `errors` as "section.key: message".
void apply(const json& obj, const std::string& section, const std::map<std::string, Setter>& setters,
           std::vector<std::string>& errors) {
  if (!obj.is_object()) {
    errors.push_back(section + ": expected an object");
    return;
  }
  for (const auto& [key, value] : obj.items()) {
    const std::string where = section.empty() ? key : section + "." + key;
    const auto it = setters.find(key);
    if (it == setters.end()) {
      errors.push_back(where + ": unknown key");
      continue;
    }
    try {
      it->second(value);
    } catch (const json::exception& e) {
      errors.push_back(where + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      errors.push_back(where + ": " + e.what());
    }
  }
}

template <typename T>
Setter set(T& field) {
  return [&field](const json& v) {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw std::invalid_argument("expected a number");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) throw std::invalid_argument("expected a non-negative integer");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw std::invalid_argument("expected an integer");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw std::invalid_argument("expected a string");
    }
    field = v.get<T>();
  };
}

Setter set_pathloss(PathLossParams& p, const std::string& section,
                    std::vector<std::string>& errors) {
  return [&p, section, &errors](const json& v) {
    apply(v, section,
          {{"frequency_hz", set(p.frequency_hz)},
           {"gain_tx", set(p.gain_tx)},
           {"gain_rx", set(p.gain_rx)},
           {"exponent", set(p.exponent)}},
          errors);
  };
}

std::string variant_name(TpcVariant v) {
  return v == TpcVariant::kIsolated ? "isolated" : "sequential";
}

json pathloss_json(const PathLossParams& p) {
  return {{"frequency_hz", p.frequency_hz},
          {"gain_tx", p.gain_tx},
          {"gain_rx", p.gain_rx},
          {"exponent", p.exponent}};
}

}  // namespace

std::vector<Method> parse_method_list(std::string_view list) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view name = list.substr(start, end - start);
    const auto m = parse_method(name);
    if (!m) {
      throw std::invalid_argument("unknown method '" + std::string(name) +
                                  "'; valid methods: " + valid_method_names());
    }
    for (Method seen : out) {
      if (seen == *m) throw std::invalid_argument("duplicate method '" + std::string(name) + "'");
    }
    out.push_back(*m);
    start = end + 1;
  }
  return out;
}

void RunConfig::validate() const {
  std::vector<std::string> errors;
  auto guard = [&errors](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  };
  guard([&] { scenario.validate(); });
  guard([&] { train.validate(); });
  if (!(dataset.dt > 0.0)) errors.push_back("dataset.dt must be > 0");
  if (!(dataset.max_gap_s >= dataset.dt)) errors.push_back("dataset.max_gap_s must be >= dt");
  if (dataset.in_len < 2) errors.push_back("dataset.in_len must be >= 2");
  if (dataset.horizon < 1) errors.push_back("dataset.horizon must be >= 1");
  if (!(dataset.train_fraction > 0.0) || !(dataset.validation_fraction >= 0.0) ||
      !(dataset.train_fraction + dataset.validation_fraction <= 1.0)) {
    errors.push_back("dataset: fractions must satisfy 0 < train, 0 <= val, train + val <= 1");
  }
  if (sweep.kind != "power" && sweep.kind != "elements") {
    errors.push_back("sweep.kind must be \"power\" or \"elements\"");
  }
  if (sweep.powers.empty()) errors.push_back("sweep.powers must not be empty");
  for (double p : sweep.powers) {
    if (!(p > 0.0)) errors.push_back("sweep.powers must be > 0");
  }
  if (sweep.elements.empty()) errors.push_back("sweep.elements must not be empty");
  for (std::size_t n : sweep.elements) {
    if (n < 1) errors.push_back("sweep.elements must be >= 1");
  }
  if (sweep.methods.empty()) errors.push_back("sweep.methods must not be empty");
  if (sweep.predictor != "lstm" && sweep.predictor != "linear") {
    errors.push_back("sweep.predictor must be \"lstm\" or \"linear\"");
  }
  if (std::abs(scenario.dt - dataset.dt) > 1e-12) {
    errors.push_back("scenario.dt must equal dataset.dt");
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
}

std::size_t RunConfig::effective_threads() const {
  if (threads > 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig parse_run_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  RunConfig c;
  std::vector<std::string> errors;
  auto& p = c.paths;
  auto& d = c.dataset;
  auto& t = c.train;
  auto& s = c.scenario;
  auto& w = c.sweep;

  const std::map<std::string, Setter> top{
      {"threads", set(c.threads)},
      {"paths",
       [&](const json& v) {
         apply(v, "paths",
               {{"data_dir", set(p.data_dir)},
                {"manifest", set(p.manifest)},
                {"checkpoint", set(p.checkpoint)},
                {"out_dir", set(p.out_dir)},
                {"trajectories",
                 [&](const json& x) { p.trajectories = x.get<std::vector<std::string>>(); }}},
               errors);
       }},
      {"dataset",
       [&](const json& v) {
         apply(v, "dataset",
               {{"dt", set(d.dt)},
                {"max_gap_s", set(d.max_gap_s)},
                {"in_len", set(d.in_len)},
                {"horizon", set(d.horizon)},
                {"split_seed", set(d.split_seed)},
                {"train_fraction", set(d.train_fraction)},
                {"validation_fraction", set(d.validation_fraction)},
                {"max_files", set(d.max_files)}},
               errors);
       }},
      {"train",
       [&](const json& v) {
         apply(v, "train",
               {{"batch_size", set(t.batch_size)},
                {"epochs", set(t.epochs)},
                {"lr", set(t.lr)},
                {"seed", set(t.seed)},
                {"patience", set(t.patience)},
                {"hidden", set(t.hidden)}},
               errors);
       }},
      {"scenario",
       [&](const json& v) {
         apply(v, "scenario",
               {{"ris_count", set(s.ris_count)},
                {"ris_radius_m", set(s.ris_radius_m)},
                {"elements", set(s.elements)},
                {"p_tx", set(s.p_tx)},
                {"noise", set(s.noise)},
                {"interferers", set(s.interferers)},
                {"bits", set(s.bits)},
                {"dt", set(s.dt)},
                {"horizon_s", set(s.horizon_s)},
                {"lambda0_deg",
                 [&](const json& x) {
                   if (!x.is_number()) throw std::invalid_argument("expected a number");
                   s.lambda0 = deg_to_rad(x.get<double>());
                 }},
                {"seed", set(s.seed)},
                {"region_min_m", set(s.region_min_m)},
                {"region_max_m", set(s.region_max_m)},
                {"frames", set(s.frames)},
                {"direct_pathloss", set_pathloss(s.direct_pathloss, "scenario.direct_pathloss", errors)},
                {"reflected_pathloss",
                 set_pathloss(s.reflected_pathloss, "scenario.reflected_pathloss", errors)},
                {"tpc_variant",
                 [&](const json& x) {
                   const auto name = x.get<std::string>();
                   if (name == "isolated") {
                     s.tpc_variant = TpcVariant::kIsolated;
                   } else if (name == "sequential") {
                     s.tpc_variant = TpcVariant::kSequential;
                   } else {
                     throw std::invalid_argument("expected \"isolated\" or \"sequential\"");
                   }
                 }}},
               errors);
       }},
      {"sweep",
       [&](const json& v) {
         apply(v, "sweep",
               {{"kind", set(w.kind)},
                {"powers", [&](const json& x) { w.powers = x.get<std::vector<double>>(); }},
                {"elements",
                 [&](const json& x) { w.elements = x.get<std::vector<std::size_t>>(); }},
                {"methods",
                 [&](const json& x) {
                   std::string joined;
                   for (const auto& m : x.get<std::vector<std::string>>()) {
                     joined += (joined.empty() ? "" : ",") + m;
                   }
                   w.methods = parse_method_list(joined);
                 }},
                {"predictor", set(w.predictor)}},
               errors);
       }},
  };
  apply(root, "", top, errors);
  if (!errors.empty()) {
    std::string msg = "config:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw std::invalid_argument(msg);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("config: cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string run_config_json(const RunConfig& c) {
  json methods = json::array();
  for (Method m : c.sweep.methods) methods.push_back(std::string(method_name(m)));
  const json root = {
      {"threads", c.threads},
      {"paths",
       {{"data_dir", c.paths.data_dir},
        {"manifest", c.paths.manifest},
        {"checkpoint", c.paths.checkpoint},
        {"out_dir", c.paths.out_dir},
        {"trajectories", c.paths.trajectories}}},
      {"dataset",
       {{"dt", c.dataset.dt},
        {"max_gap_s", c.dataset.max_gap_s},
        {"in_len", c.dataset.in_len},
        {"horizon", c.dataset.horizon},
        {"split_seed", c.dataset.split_seed},
        {"train_fraction", c.dataset.train_fraction},
        {"validation_fraction", c.dataset.validation_fraction},
        {"max_files", c.dataset.max_files}}},
      {"train",
       {{"batch_size", c.train.batch_size},
        {"epochs", c.train.epochs},
        {"lr", c.train.lr},
        {"seed", c.train.seed},
        {"patience", c.train.patience},
        {"hidden", c.train.hidden}}},
      {"scenario",
       {{"ris_count", c.scenario.ris_count},
        {"ris_radius_m", c.scenario.ris_radius_m},
        {"elements", c.scenario.elements},
        {"p_tx", c.scenario.p_tx},
        {"noise", c.scenario.noise},
        {"interferers", c.scenario.interferers},
        {"bits", c.scenario.bits},
        {"dt", c.scenario.dt},
        {"horizon_s", c.scenario.horizon_s},
        {"lambda0_deg", rad_to_deg(c.scenario.lambda0)},
        {"seed", c.scenario.seed},
        {"region_min_m", c.scenario.region_min_m},
        {"region_max_m", c.scenario.region_max_m},
        {"frames", c.scenario.frames},
        {"direct_pathloss", pathloss_json(c.scenario.direct_pathloss)},
        {"reflected_pathloss", pathloss_json(c.scenario.reflected_pathloss)},
        {"tpc_variant", variant_name(c.scenario.tpc_variant)}}},
      {"sweep",
       {{"kind", c.sweep.kind},
        {"powers", c.sweep.powers},
        {"elements", c.sweep.elements},
        {"methods", methods},
        {"predictor", c.sweep.predictor}}},
  };
  return root.dump(2);
}

}  // namespace ristpc
