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

#include "ristpc/link.hpp"

#include <cmath>
#include <stdexcept>

namespace ristpc {
namespace {

void check_v(const OnOffVector& v, std::size_t r) {
  if (v.size() != r) throw std::invalid_argument("on-off vector length differs from RIS count");
  for (std::uint8_t x : v) {
    if (x > 1) throw std::invalid_argument("on-off vector entries must be 0 or 1");
  }
}

ComplexGain user_amplitude(const ReflectionTable& table, std::size_t user,
                           const OnOffVector& v) {
  ComplexGain a = table.direct[user];
  const auto& refl = table.reflected[user];
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) a += refl[i];
  }
  return a;
}

// Shared by sinr() and sinr_direct() so the all-OFF case matches bit for bit.
double interference_sum(double p_tx, std::size_t users, auto&& amplitude_of) {
  double total = 0.0;
  for (std::size_t m = 1; m < users; ++m) total += p_tx * std::norm(amplitude_of(m));
  return total;
}

double ratio(double p_tx, double noise, ComplexGain desired, double interference) {
  return p_tx * std::norm(desired) / (interference + noise);
}

}  // namespace

std::vector<ComplexGain> CascadeLink::scaled_products() const {
  std::vector<ComplexGain> out(chan.size());
  for (std::size_t n = 0; n < chan.size(); ++n) {
    out[n] = amplitude * (chan.to_bs[n] * chan.from_user[n]);
  }
  return out;
}

void LinkBudget::validate() const {
  if (!(p_tx > 0.0)) throw std::invalid_argument("link budget: p_tx must be > 0");
  if (!(noise > 0.0)) throw std::invalid_argument("link budget: noise must be > 0");
  if (direct.empty()) throw std::invalid_argument("link budget: no desired user");
  if (cascades.size() != direct.size()) {
    throw std::invalid_argument("link budget: cascade table must have one row per user");
  }
  for (const auto& row : cascades) {
    if (row.size() != ris_count()) throw std::invalid_argument("link budget: ragged cascade table");
    for (const auto& link : row) {
      link.chan.validate();
      if (!(link.attenuation > 0.0 && link.attenuation <= 1.0)) {
        throw std::invalid_argument("link budget: attenuation outside (0, 1]");
      }
    }
  }
}

ReflectionTable build_reflection_table(const LinkBudget& budget,
                                       const std::vector<PhaseConfig>& configs) {
  budget.validate();
  if (configs.size() != budget.ris_count()) {
    throw std::invalid_argument("reflection table: one phase config per RIS required");
  }
  ReflectionTable table;
  table.p_tx = budget.p_tx;
  table.noise = budget.noise;
  table.direct = budget.direct;
  table.reflected.resize(budget.users());
  for (std::size_t u = 0; u < budget.users(); ++u) {
    auto& row = table.reflected[u];
    row.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const CascadeLink& link = budget.cascades[u][i];
      row.push_back(link.amplitude * reflect_gain(configs[i], link.chan, link.attenuation));
    }
  }
  return table;
}

ComplexGain desired_amplitude(const ReflectionTable& table, const OnOffVector& v) {
  check_v(v, table.ris_count());
  return user_amplitude(table, 0, v);
}

double interference_power(const ReflectionTable& table, const OnOffVector& v) {
  check_v(v, table.ris_count());
  return interference_sum(table.p_tx, table.direct.size(),
                          [&](std::size_t m) { return user_amplitude(table, m, v); });
}

double sinr(const ReflectionTable& table, const OnOffVector& v) {
  check_v(v, table.ris_count());
  return ratio(table.p_tx, table.noise, user_amplitude(table, 0, v),
               interference_power(table, v));
}

ComplexGain desired_amplitude(const LinkBudget& budget, const OnOffVector& v,
                              const std::vector<PhaseConfig>& configs) {
  return desired_amplitude(build_reflection_table(budget, configs), v);
}

double interference_power(const LinkBudget& budget, const OnOffVector& v,
                          const std::vector<PhaseConfig>& configs) {
  return interference_power(build_reflection_table(budget, configs), v);
}

double sinr(const LinkBudget& budget, const OnOffVector& v,
            const std::vector<PhaseConfig>& configs) {
  return sinr(build_reflection_table(budget, configs), v);
}

double sinr_direct(const LinkBudget& budget) {
  budget.validate();
  const double interference = interference_sum(
      budget.p_tx, budget.users(), [&](std::size_t m) { return budget.direct[m]; });
  return ratio(budget.p_tx, budget.noise, budget.direct[0], interference);
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace ristpc
