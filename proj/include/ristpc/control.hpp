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

#ifndef RISTPC_CONTROL_HPP_
#define RISTPC_CONTROL_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ristpc/link.hpp"
#include "ristpc/ris.hpp"

namespace ristpc {

enum class Method { kTpc, kReactive, kAlwaysOn, kOracle, kDirect };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
// "tpc,reactive,always_on,oracle,direct"
std::string valid_method_names();

struct ControlDecision {
  OnOffVector v;
  std::vector<PhaseConfig> configs;  // one per RIS
  double gamma = 0.0;                // sinr at (v, configs) on the deciding budget
  Method method = Method::kDirect;
};

// Phi_i* for every RIS, each solved for the desired user as if RIS i were ON.
std::vector<PhaseConfig> select_all_phases(const LinkBudget& budget,
                                           const PhaseCodebook& codebook);

enum class TpcVariant {
  // RIS i alone vs all OFF; v_i = 1 iff gamma_i >= gamma_direct.
  kIsolated,
  // RIS i together with the RISs already switched ON, compared against the
  // SINR of that earlier set (the direct link for i = 0).
  kSequential,
};

// RIS ON-OFF control on a budget built from the positions the caller trusts
// (predicted ones for TPC).
ControlDecision tpc_onoff(const LinkBudget& budget, const PhaseCodebook& codebook,
                          TpcVariant variant = TpcVariant::kIsolated);

inline constexpr std::size_t kMaxExhaustiveRis = 20;

// Best of all 2^R ON-OFF vectors with the phases fixed at select_all_phases.
// Ties go to fewer active RISs, then to the lexicographically smallest v.
// Throws std::invalid_argument if R > kMaxExhaustiveRis.
ControlDecision exhaustive_onoff(const LinkBudget& budget, const PhaseCodebook& codebook);

ControlDecision always_on(const LinkBudget& budget, const PhaseCodebook& codebook);

// Every RIS OFF; gamma equals sinr_direct.
ControlDecision direct_only(const LinkBudget& budget, const PhaseCodebook& codebook);

// Same rule as tpc_onoff, applied to a budget built from the last observed
// (stale) positions. Score it on the current geometry with rescore().
ControlDecision reactive_onoff(const LinkBudget& stale_budget, const PhaseCodebook& codebook,
                               TpcVariant variant = TpcVariant::kIsolated);

// The decision's (v, configs) evaluated on another budget.
double rescore(const ControlDecision& decision, const LinkBudget& budget);

// "1011..." with v_1 first.
std::string v_bits(const OnOffVector& v);

}  // namespace ristpc

#endif  // RISTPC_CONTROL_HPP_
