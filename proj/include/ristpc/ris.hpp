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

#ifndef RISTPC_RIS_HPP_
#define RISTPC_RIS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ristpc/channel.hpp"

namespace ristpc {

// Uniform b-bit phase grid {2 pi k / 2^b}, k = 0 .. 2^b - 1.
class PhaseCodebook {
 public:
  // Throws std::invalid_argument unless 1 <= bits <= 8.
  explicit PhaseCodebook(int bits);

  int bits() const { return bits_; }
  std::size_t size() const { return phases_.size(); }
  const std::vector<double>& phases() const { return phases_; }
  const std::vector<ComplexGain>& phasors() const { return phasors_; }
  double step() const;

 private:
  int bits_;
  std::vector<double> phases_;
  std::vector<ComplexGain> phasors_;  // e^{j theta_k}
};

PhaseCodebook build_codebook(int bits);

// Quantized per-element phases of one RIS, stored as codeword indices. The
// unit-modulus reflection coefficients e^{j theta_n} are materialized once.
class PhaseConfig {
 public:
  PhaseConfig() = default;
  // Throws std::invalid_argument if any code is outside the codebook.
  PhaseConfig(const PhaseCodebook& codebook, std::vector<std::uint8_t> codes);

  std::size_t size() const { return codes_.size(); }
  int bits() const { return bits_; }
  const std::vector<std::uint8_t>& codes() const { return codes_; }
  const std::vector<ComplexGain>& phasors() const { return phasors_; }
  std::vector<double> thetas() const;

  friend bool operator==(const PhaseConfig& a, const PhaseConfig& b) {
    return a.bits_ == b.bits_ && a.codes_ == b.codes_;
  }

 private:
  int bits_ = 0;
  std::vector<std::uint8_t> codes_;
  std::vector<ComplexGain> phasors_;
};

// |direct + sum_n cascade[n] e^{j theta_n}|^2, evaluated in plain scalar
// arithmetic (reference for the search routines).
double phase_objective(ComplexGain direct, std::span<const ComplexGain> cascade,
                       const PhaseConfig& config);

// Largest N * bits for which select_phases searches exhaustively.
inline constexpr int kExhaustivePhaseBudget = 16;

// Nearest codeword to arg(direct) - arg(cascade[n]) for every element. A zero
// cascade entry gets codeword 0; direct == 0 is treated as phase 0.
PhaseConfig align_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                         const PhaseCodebook& codebook);

// Nearest-codeword alignment to the best common reference phase. The
// optimum aligns every element to the phase of its own resultant, so only
// the N * 2^bits arcs between codeword switching points need to be tried;
// O(N 2^b log(N 2^b)). Never worse than align_phases.
PhaseConfig sweep_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                         const PhaseCodebook& codebook);

// Best of all 2^(bits * N) configurations; first maximum in counting order
// (element 0 varies fastest). Throws std::invalid_argument when
// N * bits > kExhaustivePhaseBudget.
PhaseConfig exhaustive_phases(ComplexGain direct,
                              std::span<const ComplexGain> cascade,
                              const PhaseCodebook& codebook);

// Maximizes |direct + sum_n cascade[n] e^{j theta_n}|^2. `direct` is the
// scaled direct-path gain, cascade[n] the scaled per-element product
// h_i[n] * h_ui[n]. Uses exhaustive_phases for small instances and
// sweep_phases otherwise. Throws std::invalid_argument on an empty cascade.
PhaseConfig select_phases(ComplexGain direct, std::span<const ComplexGain> cascade,
                          const PhaseCodebook& codebook);

// sqrt(attenuation) * sum_n to_bs[n] e^{j theta_n} from_user[n]. Path loss is
// applied by the caller. Throws std::invalid_argument on a size mismatch.
ComplexGain reflect_gain(const PhaseConfig& config, const CascadeChannel& chan,
                         double attenuation);

// Reflected-power attenuation versus the angle between the configured
// (desired) direction and the incident direction: min(1, lambda0 / lambda).
struct AngleAttenuation {
  double lambda0 = 5.0 * 3.14159265358979323846 / 180.0;  // rad
};

// Throws std::domain_error if lambda is outside [0, pi].
double angle_attenuation(const AngleAttenuation& model, double lambda);

}  // namespace ristpc

#endif  // RISTPC_RIS_HPP_
