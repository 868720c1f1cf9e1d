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

#include "ristpc/ris.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ristpc/geom.hpp"
#include "ristpc/simd/kernels.hpp"

namespace ristpc {

PhaseCodebook::PhaseCodebook(int bits) : bits_(bits) {
  if (bits < 1 || bits > 8) {
    throw std::invalid_argument("codebook: bits must be in [1, 8], got " +
                                std::to_string(bits));
  }
  const std::size_t m = std::size_t{1} << bits;
  phases_.reserve(m);
  phasors_.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    phases_.push_back(theta);
    phasors_.push_back(std::polar(1.0, theta));
  }
  // Exact values on the axes keep b = 1, 2 free of 1e-16 residue.
  for (std::size_t k = 0; k < m; ++k) {
    if (4 * k % m == 0) {
      static const ComplexGain kAxis[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      phasors_[k] = kAxis[4 * k / m];
    }
  }
}

double PhaseCodebook::step() const { return 2.0 * kPi / static_cast<double>(size()); }

PhaseCodebook build_codebook(int bits) { return PhaseCodebook(bits); }

PhaseConfig::PhaseConfig(const PhaseCodebook& codebook,
                         std::vector<std::uint8_t> codes)
    : bits_(codebook.bits()), codes_(std::move(codes)) {
  phasors_.reserve(codes_.size());
  for (std::uint8_t c : codes_) {
    if (c >= codebook.size()) throw std::invalid_argument("phase config: code outside codebook");
    phasors_.push_back(codebook.phasors()[c]);
  }
}

std::vector<double> PhaseConfig::thetas() const {
  const double step = 2.0 * kPi / static_cast<double>(std::size_t{1} << bits_);
  std::vector<double> out;
  out.reserve(codes_.size());
  for (std::uint8_t c : codes_) out.push_back(step * c);
  return out;
}

double phase_objective(ComplexGain direct, std::span<const ComplexGain> cascade,
                       const PhaseConfig& config) {
  if (cascade.size() != config.size()) {
    throw std::invalid_argument("phase_objective: size mismatch");
  }
  ComplexGain sum = direct;
  for (std::size_t n = 0; n < cascade.size(); ++n) {
    sum += cascade[n] * config.phasors()[n];
  }
  return std::norm(sum);
}

PhaseConfig align_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                         const PhaseCodebook& codebook) {
  if (cascade.empty()) throw std::invalid_argument("align_phases: empty cascade");
  // Re(w e^{j theta}) = |c||d| cos(theta + arg c - arg d), so the codeword
  // with the largest real part is the nearest to arg d - arg c.
  const ComplexGain ref = direct == ComplexGain{0.0, 0.0} ? ComplexGain{1.0, 0.0}
                                                          : std::conj(direct);
  std::vector<ComplexGain> w(cascade.begin(), cascade.end());
  for (auto& x : w) x *= ref;
  std::vector<std::uint8_t> codes(cascade.size());
  simd::active_kernels().nearest_codeword(w.data(), w.size(),
                                          codebook.phasors().data(),
                                          codebook.size(), codes.data());
  return PhaseConfig(codebook, std::move(codes));
}

PhaseConfig exhaustive_phases(ComplexGain direct,
                              std::span<const ComplexGain> cascade,
                              const PhaseCodebook& codebook) {
  const std::size_t n = cascade.size();
  if (n == 0) throw std::invalid_argument("exhaustive_phases: empty cascade");
  if (static_cast<long>(n) * codebook.bits() > kExhaustivePhaseBudget) {
    throw std::invalid_argument("exhaustive_phases: N * bits exceeds the search budget");
  }
  const std::size_t m = codebook.size();
  std::vector<std::uint8_t> codes(n, 0);
  std::vector<std::uint8_t> best = codes;
  // Same summation order as phase_objective.
  const auto& ph = codebook.phasors();
  auto objective = [&] {
    ComplexGain sum = direct;
    for (std::size_t i = 0; i < n; ++i) sum += cascade[i] * ph[codes[i]];
    return std::norm(sum);
  };
  double best_value = objective();
  for (;;) {
    std::size_t pos = 0;
    while (pos < n && ++codes[pos] == m) codes[pos++] = 0;
    if (pos == n) break;
    const double value = objective();
    if (value > best_value) {
      best_value = value;
      best = codes;
    }
  }
  return PhaseConfig(codebook, std::move(best));
}

PhaseConfig sweep_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                         const PhaseCodebook& codebook) {
  const std::size_t n = cascade.size();
  if (n == 0) throw std::invalid_argument("sweep_phases: empty cascade");
  const std::size_t m = codebook.size();
  const double half = kPi / static_cast<double>(m);
  const double two_pi = 2.0 * kPi;

  // Element n switches from codeword k to k + 1 when the reference passes
  // arg(c_n) + theta_k + pi / M.
  struct Breakpoint {
    double angle;
    std::uint32_t element;
    std::uint32_t code;
  };
  std::vector<Breakpoint> bps;
  bps.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    if (cascade[i] == ComplexGain{0.0, 0.0}) continue;
    const double base = std::arg(cascade[i]);
    for (std::size_t k = 0; k < m; ++k) {
      double a = std::fmod(base + codebook.phases()[k] + half, two_pi);
      if (a < 0.0) a += two_pi;
      bps.push_back({a, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k)});
    }
  }
  PhaseConfig fallback = align_phases(direct, cascade, codebook);
  if (bps.empty()) return fallback;
  std::sort(bps.begin(), bps.end(), [](const Breakpoint& x, const Breakpoint& y) {
    if (x.angle != y.angle) return x.angle < y.angle;
    if (x.element != y.element) return x.element < y.element;
    return x.code < y.code;
  });

  auto codes_at = [&](double phi) {
    const ComplexGain rot = std::polar(1.0, -phi);
    std::vector<ComplexGain> w(cascade.begin(), cascade.end());
    for (auto& x : w) x *= rot;
    std::vector<std::uint8_t> codes(n);
    simd::active_kernels().nearest_codeword(w.data(), n, codebook.phasors().data(), m,
                                            codes.data());
    for (std::size_t i = 0; i < n; ++i) {
      if (cascade[i] == ComplexGain{0.0, 0.0}) codes[i] = 0;
    }
    return codes;
  };

  // Walk the arcs between consecutive breakpoints, starting with the one
  // that wraps through zero, updating the reflected sum incrementally.
  const std::size_t count = bps.size();
  const double start = 0.5 * (bps.back().angle - two_pi + bps.front().angle);
  std::vector<std::uint8_t> codes = codes_at(start);
  ComplexGain sum{0.0, 0.0};
  const auto& ph = codebook.phasors();
  for (std::size_t i = 0; i < n; ++i) sum += cascade[i] * ph[codes[i]];
  double best_value = std::norm(direct + sum);
  double best_phi = start;
  for (std::size_t j = 0; j < count; ++j) {
    const Breakpoint& b = bps[j];
    const std::uint8_t from = codes[b.element];
    const auto to = static_cast<std::uint8_t>((from + 1) % m);
    sum += cascade[b.element] * (ph[to] - ph[from]);
    codes[b.element] = to;
    const double next = j + 1 < count ? bps[j + 1].angle : bps.front().angle + two_pi;
    if (next - b.angle <= 1e-12) continue;
    const double value = std::norm(direct + sum);
    if (value > best_value) {
      best_value = value;
      best_phi = 0.5 * (b.angle + next);
    }
  }
  PhaseConfig best(codebook, codes_at(best_phi));
  // Rounding near a breakpoint can only cost a tie; never return less than
  // plain alignment.
  if (phase_objective(direct, cascade, fallback) > phase_objective(direct, cascade, best)) {
    return fallback;
  }
  return best;
}

PhaseConfig select_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                          const PhaseCodebook& codebook) {
  if (cascade.empty()) throw std::invalid_argument("select_phases: empty cascade");
  if (static_cast<long>(cascade.size()) * codebook.bits() <= kExhaustivePhaseBudget) {
    return exhaustive_phases(direct, cascade, codebook);
  }
  return sweep_phases(direct, cascade, codebook);
}

ComplexGain reflect_gain(const PhaseConfig& config, const CascadeChannel& chan,
                         double attenuation) {
  if (chan.to_bs.size() != config.size() || chan.from_user.size() != config.size()) {
    throw std::invalid_argument("reflect_gain: channel and phase config sizes differ");
  }
  const ComplexGain sum = simd::active_kernels().triple_sum(
      chan.to_bs.data(), config.phasors().data(), chan.from_user.data(),
      config.size());
  return std::sqrt(attenuation) * sum;
}

double angle_attenuation(const AngleAttenuation& model, double lambda) {
  if (!(lambda >= 0.0 && lambda <= kPi)) {
    throw std::domain_error("angle_attenuation: lambda outside [0, pi]");
  }
  if (lambda <= model.lambda0) return 1.0;
  return model.lambda0 / lambda;
}

}  // namespace ristpc
