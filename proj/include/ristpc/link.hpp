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

#ifndef RISTPC_LINK_HPP_
#define RISTPC_LINK_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ristpc/channel.hpp"
#include "ristpc/ris.hpp"

namespace ristpc {

// One user -> RIS -> BS path: fading, sqrt of the product-distance path loss,
// and the angle attenuation of the RIS toward this user.
struct CascadeLink {
  CascadeChannel chan;
  double amplitude = 1.0;    // sqrt(eta_ui)
  double attenuation = 1.0;  // in (0, 1]

  // amplitude * h_i[n] * h_ui[n]; the per-element input to select_phases.
  std::vector<ComplexGain> scaled_products() const;
};

// Everything the BS needs to evaluate the uplink SINR of user 0 (the desired
// user) against users 1 .. U-1 (interferers).
struct LinkBudget {
  double p_tx = 1.0;   // W
  double noise = 1e-12;  // W
  std::vector<ComplexGain> direct;              // [user] sqrt(eta_u) g_u
  std::vector<std::vector<CascadeLink>> cascades;  // [user][ris]

  std::size_t users() const { return direct.size(); }
  std::size_t interferers() const { return direct.empty() ? 0 : direct.size() - 1; }
  std::size_t ris_count() const { return cascades.empty() ? 0 : cascades.front().size(); }

  // Throws std::invalid_argument on non-positive powers, missing desired user
  // or ragged cascade tables.
  void validate() const;
};

// Binary per-RIS activation states, one byte per RIS (0 or 1).
using OnOffVector = std::vector<std::uint8_t>;

// Per-(user, RIS) reflected amplitudes for a fixed set of phase
// configurations. Evaluating a new ON-OFF vector against a table costs
// O(U * R), so the strategies in control.hpp score candidate vectors here.
struct ReflectionTable {
  double p_tx = 1.0;
  double noise = 1e-12;
  std::vector<ComplexGain> direct;               // [user]
  std::vector<std::vector<ComplexGain>> reflected;  // [user][ris]

  std::size_t ris_count() const { return reflected.empty() ? 0 : reflected.front().size(); }
};

// Throws std::invalid_argument if configs.size() != R or any config length
// does not match its RIS.
ReflectionTable build_reflection_table(const LinkBudget& budget,
                                       const std::vector<PhaseConfig>& configs);

// sqrt(eta_l) g_l + sum_i v_i * (reflected amplitude of RIS i).
ComplexGain desired_amplitude(const ReflectionTable& table, const OnOffVector& v);

// P * sum_m |direct_m + sum_i v_i reflected_mi|^2; interferers add in power.
double interference_power(const ReflectionTable& table, const OnOffVector& v);

// P |desired|^2 / (interference + noise).
double sinr(const ReflectionTable& table, const OnOffVector& v);

ComplexGain desired_amplitude(const LinkBudget& budget, const OnOffVector& v,
                              const std::vector<PhaseConfig>& configs);
double interference_power(const LinkBudget& budget, const OnOffVector& v,
                          const std::vector<PhaseConfig>& configs);
double sinr(const LinkBudget& budget, const OnOffVector& v,
            const std::vector<PhaseConfig>& configs);

// SINR with every RIS OFF. Bit-identical to sinr(., v = 0, .).
double sinr_direct(const LinkBudget& budget);

double to_db(double linear);

}  // namespace ristpc

#endif  // RISTPC_LINK_HPP_
