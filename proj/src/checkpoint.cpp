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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ristpc/channel.hpp"
#include "ristpc/predictor.hpp"

namespace ristpc {
namespace {

using nlohmann::json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json config_json(const TrainConfig& c) {
  return json{{"batch_size", c.batch_size}, {"epochs", c.epochs}, {"lr", c.lr},
              {"seed", c.seed},             {"patience", c.patience}, {"hidden", c.hidden}};
}

json stats_json(const NormStats& s) {
  return json{{"mean_lat", s.mean_lat},
              {"mean_lon", s.mean_lon},
              {"std_lat", s.std_lat},
              {"std_lon", s.std_lon}};
}

}  // namespace

std::string train_config_hash(const TrainConfig& config) {
  return hex64(fnv1a64(config_json(config).dump()));
}

std::string norm_stats_hash(const NormStats& stats) {
  return hex64(fnv1a64(stats_json(stats).dump()));
}

std::string checkpoint_json(const Checkpoint& ckpt) {
  json groups = json::object();
  for (const ParamGroup& g : ckpt.params.groups()) {
    const auto d = ckpt.params.data().subspan(g.offset, g.size);
    groups[g.name] = std::vector<double>(d.begin(), d.end());
  }
  json j{{"format", kCheckpointFormat},
         {"version", kCheckpointVersion},
         {"hidden", ckpt.params.hidden()},
         {"layers", LstmParams::kLayers},
         {"dt", ckpt.dt},
         {"norm_stats", stats_json(ckpt.stats)},
         {"norm_stats_hash", norm_stats_hash(ckpt.stats)},
         {"train_config", config_json(ckpt.config)},
         {"train_config_hash", train_config_hash(ckpt.config)},
         {"dataset_hash", ckpt.dataset_hash},
         {"weights", groups}};
  return j.dump() + "\n";
}

Checkpoint parse_checkpoint(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("checkpoint: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != kCheckpointFormat) {
    throw std::runtime_error("checkpoint: not a ristpc-lstm checkpoint");
  }
  if (j.value("version", -1) != kCheckpointVersion) {
    throw std::runtime_error("checkpoint: unsupported version " +
                             j.value("version", json(-1)).dump());
  }
  try {
    if (j.at("layers").get<int>() != LstmParams::kLayers) {
      throw std::runtime_error("checkpoint: layer count mismatch");
    }
    Checkpoint c;
    c.params = LstmParams(j.at("hidden").get<int>());
    auto d = c.params.mutable_data();
    const json& w = j.at("weights");
    for (const ParamGroup& g : c.params.groups()) {
      const auto values = w.at(g.name).get<std::vector<double>>();
      if (values.size() != g.size) {
        throw std::runtime_error("checkpoint: group " + g.name + " has the wrong size");
      }
      std::copy(values.begin(), values.end(), d.begin() + static_cast<std::ptrdiff_t>(g.offset));
    }
    const json& s = j.at("norm_stats");
    c.stats = {s.at("mean_lat").get<double>(), s.at("mean_lon").get<double>(),
               s.at("std_lat").get<double>(), s.at("std_lon").get<double>()};
    c.stats.validate();
    c.dt = j.at("dt").get<double>();
    const json& tc = j.at("train_config");
    c.config.batch_size = tc.at("batch_size").get<std::size_t>();
    c.config.epochs = tc.at("epochs").get<std::size_t>();
    c.config.lr = tc.at("lr").get<double>();
    c.config.seed = tc.at("seed").get<std::uint64_t>();
    c.config.patience = tc.at("patience").get<std::size_t>();
    c.config.hidden = tc.at("hidden").get<int>();
    c.dataset_hash = j.at("dataset_hash").get<std::string>();
    if (j.at("train_config_hash").get<std::string>() != train_config_hash(c.config)) {
      throw std::runtime_error("checkpoint: train config hash mismatch");
    }
    return c;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << checkpoint_json(ckpt);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_checkpoint(ss.str());
}

}  // namespace ristpc
