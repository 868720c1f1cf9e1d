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

#ifndef RISTPC_CONFIG_HPP_
#define RISTPC_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ristpc/control.hpp"
#include "ristpc/lstm.hpp"
#include "ristpc/sim.hpp"
#include "ristpc/trajectory.hpp"

namespace ristpc {

struct PathsConfig {
  std::string data_dir;                   // PLT corpus
  std::string manifest;                   // dataset manifest (prepare output)
  std::string checkpoint;                 // LSTM checkpoint (train output)
  std::string out_dir = "out";
  std::vector<std::string> trajectories;  // desired user, then interferers
};

struct SweepConfig {
  std::string kind = "power";  // "power" or "elements"
  std::vector<double> powers{0.1, 0.25, 0.5, 1.0, 2.0};
  std::vector<std::size_t> elements{100, 200, 400, 600};
  std::vector<Method> methods{Method::kTpc, Method::kReactive, Method::kAlwaysOn,
                              Method::kOracle, Method::kDirect};
  std::string predictor = "lstm";  // "lstm" or "linear"
};

struct RunConfig {
  PathsConfig paths;
  DatasetOptions dataset;
  TrainConfig train;
  ScenarioConfig scenario;
  SweepConfig sweep;
  std::size_t threads = 0;  // 0 = hardware concurrency

  // Throws std::invalid_argument with every violated constraint, one per
  // line.
  void validate() const;
  std::size_t effective_threads() const;
};

// Parses a JSON config (comments allowed). Missing keys keep their defaults;
// unknown keys are errors. Throws std::invalid_argument.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

// Complete, normalized config as JSON (angles in degrees, as in the file).
std::string run_config_json(const RunConfig& config);

// "tpc,oracle" -> methods. Throws std::invalid_argument naming the valid
// choices on an unknown name.
std::vector<Method> parse_method_list(std::string_view list);

}  // namespace ristpc

#endif  // RISTPC_CONFIG_HPP_
