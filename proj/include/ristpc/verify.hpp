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

#ifndef RISTPC_VERIFY_HPP_
#define RISTPC_VERIFY_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ristpc/link.hpp"
#include "ristpc/lstm.hpp"

namespace ristpc {

// Random link budget with CN(0,1) fading and log-uniform path-loss
// amplitudes. Attenuations of interferers are drawn from (0, 1].
LinkBudget random_budget(std::mt19937_64& rng, std::size_t interferers, std::size_t ris,
                         std::size_t elements);

struct GradientCheck {
  std::string group;
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
};

// Central finite differences of the MSE loss of one random window against
// lstm_backward, per parameter group. Relative error per parameter is
// |analytic - numeric| / max(|analytic|, |numeric|, floor).
std::vector<GradientCheck> gradient_check(const LstmParams& params,
                                          std::span<const double> inputs,
                                          const std::array<double, 2>& target, double eps,
                                          double floor = 1e-6, bool flip_sign = false);

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t onoff_instances = 200;
  std::size_t codebook_instances = 200;
  // Negative control: flips the sign of the analytic gradient of one group.
  bool inject_backward_fault = false;
};

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;

  bool all_passed() const;
  std::string table() const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace ristpc

#endif  // RISTPC_VERIFY_HPP_
