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

#include "ristpc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ristpc/channel.hpp"
#include "ristpc/control.hpp"
#include "ristpc/ris.hpp"

namespace ristpc {
namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

VerifyCheck check_onoff(const VerifyOptions& opt) {
  std::mt19937_64 rng(sub_seed(opt.seed, 0, 1));
  std::uniform_int_distribution<std::size_t> ris_dist(1, 6);
  std::uniform_int_distribution<std::size_t> intf_dist(0, 3);
  const PhaseCodebook codebook(2);
  std::size_t violations = 0;
  for (std::size_t k = 0; k < opt.onoff_instances; ++k) {
    const LinkBudget b = random_budget(rng, intf_dist(rng), ris_dist(rng), 4);
    const double best = exhaustive_onoff(b, codebook).gamma;
    for (const ControlDecision& d :
         {tpc_onoff(b, codebook, TpcVariant::kIsolated),
          tpc_onoff(b, codebook, TpcVariant::kSequential), always_on(b, codebook),
          direct_only(b, codebook)}) {
      if (d.gamma > best) ++violations;
    }
  }
  return {"onoff_oracle_dominance", violations == 0, static_cast<double>(violations), 0.0,
          std::to_string(opt.onoff_instances) + " budgets, R in [1, 6]"};
}

VerifyCheck check_single_ris(const VerifyOptions& opt) {
  std::mt19937_64 rng(sub_seed(opt.seed, 0, 2));
  std::uniform_int_distribution<std::size_t> intf_dist(0, 3);
  const PhaseCodebook codebook(2);
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < opt.onoff_instances; ++k) {
    const LinkBudget b = random_budget(rng, intf_dist(rng), 1, 4);
    if (tpc_onoff(b, codebook).gamma != exhaustive_onoff(b, codebook).gamma) ++mismatches;
  }
  return {"onoff_single_ris_exact", mismatches == 0, static_cast<double>(mismatches), 0.0,
          "tpc gamma == oracle gamma for R = 1"};
}

void check_codebook(const VerifyOptions& opt, std::vector<VerifyCheck>& out) {
  std::mt19937_64 rng(sub_seed(opt.seed, 0, 3));
  std::uniform_int_distribution<std::size_t> n_dist(1, 3);
  const PhaseCodebook codebook(2);
  const double cos_half_step = std::cos(kPi / static_cast<double>(codebook.size()));
  double max_gap_db = 0.0;
  std::size_t sandwich_violations = 0;
  std::size_t exact = 0;
  for (std::size_t k = 0; k < opt.codebook_instances; ++k) {
    const std::size_t n = n_dist(rng);
    const ComplexGain a = sample_cn01(rng, 1)[0];
    const std::vector<ComplexGain> c = sample_cn01(rng, n);
    const double swept = phase_objective(a, c, sweep_phases(a, c, codebook));
    const double best = phase_objective(a, c, exhaustive_phases(a, c, codebook));
    max_gap_db = std::max(max_gap_db, 10.0 * std::log10(best / swept));
    if (swept == best) ++exact;
    double sum_c = 0.0;
    for (const auto& x : c) sum_c += std::abs(x);
    const double lo = std::abs(a) + cos_half_step * sum_c;
    const double hi = std::abs(a) + sum_c;
    // Slack for rounding in the magnitude sums only.
    const double slack = 1e-12 * hi;
    for (double value : {swept, phase_objective(a, c, align_phases(a, c, codebook))}) {
      const double mag = std::sqrt(value);
      if (mag < lo - slack || mag > hi + slack) ++sandwich_violations;
    }
  }
  const double exact_fraction =
      static_cast<double>(exact) / static_cast<double>(opt.codebook_instances);
  out.push_back({"codebook_alignment_gap_db", max_gap_db <= 0.5, max_gap_db, 0.5,
                 "max over instances, N <= 3, b = 2"});
  out.push_back({"codebook_exact_fraction", exact_fraction >= 0.9, exact_fraction, 0.9,
                 "share of instances equal to the exhaustive optimum (min)"});
  out.push_back({"codebook_sandwich", sandwich_violations == 0,
                 static_cast<double>(sandwich_violations), 0.0,
                 "|a| + cos(pi/2^b) sum|c| <= |result| <= |a| + sum|c|"});
}

void check_gradients(const VerifyOptions& opt, std::vector<VerifyCheck>& out) {
  constexpr double kEps = 1e-5;
  constexpr double kTol = 1e-4;
  const LstmParams params = LstmParams::init(4, sub_seed(opt.seed, 0, 4));
  std::mt19937_64 rng(sub_seed(opt.seed, 0, 5));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> inputs(kWindowLength * 2);
  for (double& x : inputs) x = normal(rng);
  const std::array<double, 2> target{normal(rng), normal(rng)};
  for (const GradientCheck& g :
       gradient_check(params, inputs, target, kEps, 1e-6, opt.inject_backward_fault)) {
    out.push_back({"gradient_" + g.group, g.max_rel_error < kTol, g.max_rel_error, kTol,
                   "H = 4, central differences, eps = 1e-5"});
  }
}

}  // namespace

LinkBudget random_budget(std::mt19937_64& rng, std::size_t interferers, std::size_t ris,
                         std::size_t elements) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinkBudget b;
  b.p_tx = 1.0;
  b.noise = 1e-12;
  const std::size_t users = interferers + 1;
  b.cascades.resize(users);
  std::vector<std::vector<ComplexGain>> to_bs;
  for (std::size_t i = 0; i < ris; ++i) to_bs.push_back(sample_cn01(rng, elements));
  for (std::size_t u = 0; u < users; ++u) {
    b.direct.push_back(log_uniform(rng, 1e-7, 1e-4) * sample_cn01(rng, 1)[0]);
    for (std::size_t i = 0; i < ris; ++i) {
      CascadeLink link;
      link.chan.to_bs = to_bs[i];
      link.chan.from_user = sample_cn01(rng, elements);
      link.amplitude = log_uniform(rng, 1e-9, 1e-6);
      link.attenuation = u == 0 ? 1.0 : std::max(1e-3, unit(rng));
      b.cascades[u].push_back(std::move(link));
    }
  }
  return b;
}

std::vector<GradientCheck> gradient_check(const LstmParams& params,
                                          std::span<const double> inputs,
                                          const std::array<double, 2>& target, double eps,
                                          double floor, bool flip_sign) {
  LstmCache cache;
  const auto pred = lstm_forward(params, inputs, cache);
  LstmParams grads = lstm_backward(params, cache, mse_loss(pred, target).grad);
  if (flip_sign) {
    const ParamGroup& g = grads.group("l0.U");
    auto data = grads.mutable_data();
    for (std::size_t k = 0; k < g.size; ++k) data[g.offset + k] = -data[g.offset + k];
  }

  LstmParams probe = params;
  auto loss_at = [&](std::size_t k, double value) {
    probe.mutable_data()[k] = value;
    LstmCache c;
    return mse_loss(lstm_forward(probe, inputs, c), target).loss;
  };
  std::vector<GradientCheck> out;
  for (const ParamGroup& g : params.groups()) {
    GradientCheck r;
    r.group = g.name;
    for (std::size_t k = g.offset; k < g.offset + g.size; ++k) {
      const double x = params.data()[k];
      const double numeric = (loss_at(k, x + eps) - loss_at(k, x - eps)) / (2.0 * eps);
      loss_at(k, x);
      const double analytic = grads.data()[k];
      const double abs_err = std::abs(analytic - numeric);
      const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
      r.max_abs_error = std::max(r.max_abs_error, abs_err);
      r.max_rel_error = std::max(r.max_rel_error, abs_err / denom);
    }
    out.push_back(r);
  }
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-28s %-6s %-14s %-10s %s\n", "check", "result", "measured",
                "tolerance", "detail");
  out += line;
  for (const VerifyCheck& c : checks) {
    std::snprintf(line, sizeof(line), "%-28s %-6s %-14.6g %-10.3g %s\n", c.name.c_str(),
                  c.pass ? "PASS" : "FAIL", c.measured, c.tolerance, c.detail.c_str());
    out += line;
  }
  return out;
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  report.checks.push_back(check_onoff(options));
  report.checks.push_back(check_single_ris(options));
  check_codebook(options, report.checks);
  check_gradients(options, report.checks);
  return report;
}

}  // namespace ristpc
