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

#include "ristpc/control.hpp"

#include <stdexcept>

namespace ristpc {
namespace {

constexpr Method kAllMethods[] = {Method::kTpc, Method::kReactive, Method::kAlwaysOn,
                                  Method::kOracle, Method::kDirect};

ControlDecision threshold_rule(const LinkBudget& budget, const PhaseCodebook& codebook,
                               TpcVariant variant, Method tag) {
  ControlDecision d;
  d.method = tag;
  d.configs = select_all_phases(budget, codebook);
  const ReflectionTable table = build_reflection_table(budget, d.configs);
  const std::size_t r = table.ris_count();
  const OnOffVector off(r, 0);
  const double gamma_direct = sinr(table, off);

  d.v.assign(r, 0);
  if (variant == TpcVariant::kIsolated) {
    OnOffVector probe(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      probe[i] = 1;
      d.v[i] = sinr(table, probe) >= gamma_direct ? 1 : 0;
      probe[i] = 0;
    }
  } else {
    double reference = gamma_direct;
    for (std::size_t i = 0; i < r; ++i) {
      d.v[i] = 1;
      const double gamma = sinr(table, d.v);
      if (gamma >= reference) {
        reference = gamma;
      } else {
        d.v[i] = 0;
      }
    }
  }
  d.gamma = sinr(table, d.v);
  return d;
}

ControlDecision fixed_vector(const LinkBudget& budget, const PhaseCodebook& codebook,
                             std::uint8_t state, Method tag) {
  ControlDecision d;
  d.method = tag;
  d.configs = select_all_phases(budget, codebook);
  d.v.assign(budget.ris_count(), state);
  d.gamma = sinr(build_reflection_table(budget, d.configs), d.v);
  return d;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kTpc:
      return "tpc";
    case Method::kReactive:
      return "reactive";
    case Method::kAlwaysOn:
      return "always_on";
    case Method::kOracle:
      return "oracle";
    case Method::kDirect:
      return "direct";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string valid_method_names() {
  std::string out;
  for (Method m : kAllMethods) {
    if (!out.empty()) out += ',';
    out += method_name(m);
  }
  return out;
}

std::vector<PhaseConfig> select_all_phases(const LinkBudget& budget,
                                           const PhaseCodebook& codebook) {
  budget.validate();
  std::vector<PhaseConfig> configs;
  configs.reserve(budget.ris_count());
  for (const CascadeLink& link : budget.cascades[0]) {
    configs.push_back(select_phases(budget.direct[0], link.scaled_products(), codebook));
  }
  return configs;
}

ControlDecision tpc_onoff(const LinkBudget& budget, const PhaseCodebook& codebook,
                          TpcVariant variant) {
  return threshold_rule(budget, codebook, variant, Method::kTpc);
}

ControlDecision reactive_onoff(const LinkBudget& stale_budget, const PhaseCodebook& codebook,
                               TpcVariant variant) {
  return threshold_rule(stale_budget, codebook, variant, Method::kReactive);
}

ControlDecision exhaustive_onoff(const LinkBudget& budget, const PhaseCodebook& codebook) {
  const std::size_t r = budget.ris_count();
  if (r > kMaxExhaustiveRis) {
    throw std::invalid_argument("exhaustive_onoff: more than 20 RISs");
  }
  ControlDecision d;
  d.method = Method::kOracle;
  d.configs = select_all_phases(budget, codebook);
  const ReflectionTable table = build_reflection_table(budget, d.configs);

  OnOffVector v(r, 0);
  d.v = v;
  d.gamma = sinr(table, v);
  int best_count = 0;
  const std::uint64_t total = std::uint64_t{1} << r;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    int count = 0;
    for (std::size_t i = 0; i < r; ++i) {
      v[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
      count += v[i];
    }
    const double gamma = sinr(table, v);
    bool better = gamma > d.gamma;
    if (!better && gamma == d.gamma) {
      better = count < best_count || (count == best_count && v < d.v);
    }
    if (better) {
      d.gamma = gamma;
      d.v = v;
      best_count = count;
    }
  }
  return d;
}

ControlDecision always_on(const LinkBudget& budget, const PhaseCodebook& codebook) {
  return fixed_vector(budget, codebook, 1, Method::kAlwaysOn);
}

ControlDecision direct_only(const LinkBudget& budget, const PhaseCodebook& codebook) {
  return fixed_vector(budget, codebook, 0, Method::kDirect);
}

double rescore(const ControlDecision& decision, const LinkBudget& budget) {
  return sinr(build_reflection_table(budget, decision.configs), decision.v);
}

std::string v_bits(const OnOffVector& v) {
  std::string s;
  s.reserve(v.size());
  for (std::uint8_t x : v) s += x != 0 ? '1' : '0';
  return s;
}

}  // namespace ristpc
