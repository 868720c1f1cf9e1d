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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "ristpc/channel.hpp"
#include "ristpc/ris.hpp"
#include "ristpc/simd/kernels.hpp"

namespace ristpc {
namespace {

double db_gap(double best, double got) { return 10.0 * std::log10(best / got); }

double sum_abs(const std::vector<ComplexGain>& c) {
  double s = 0.0;
  for (const auto& x : c) s += std::abs(x);
  return s;
}

TEST(Codebook, OneAndTwoBits) {
  const auto b1 = build_codebook(1);
  ASSERT_EQ(b1.size(), 2u);
  EXPECT_EQ(b1.phases()[0], 0.0);
  EXPECT_DOUBLE_EQ(b1.phases()[1], M_PI);
  EXPECT_EQ(b1.phasors()[1], ComplexGain(-1.0, 0.0));
  const auto b2 = build_codebook(2);
  ASSERT_EQ(b2.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(b2.phases()[k], k * M_PI / 2.0);
  EXPECT_EQ(b2.phasors()[1], ComplexGain(0.0, 1.0));
  EXPECT_EQ(b2.phasors()[3], ComplexGain(0.0, -1.0));
}

TEST(Codebook, SizesAndSpacing) {
  for (int b = 1; b <= 8; ++b) {
    const PhaseCodebook cb(b);
    ASSERT_EQ(cb.size(), std::size_t{1} << b);
    EXPECT_EQ(cb.phases().front(), 0.0);
    for (std::size_t k = 1; k < cb.size(); ++k) {
      EXPECT_NEAR(cb.phases()[k] - cb.phases()[k - 1], 2.0 * M_PI / cb.size(), 1e-15);
    }
    for (const auto& p : cb.phasors()) EXPECT_NEAR(std::abs(p), 1.0, 1e-15);
  }
}

TEST(Codebook, RejectsOutOfRangeBits) {
  EXPECT_THROW(PhaseCodebook(0), std::invalid_argument);
  EXPECT_THROW(PhaseCodebook(9), std::invalid_argument);
}

TEST(PhaseConfig, RejectsForeignCodes) {
  const PhaseCodebook cb(2);
  EXPECT_THROW(PhaseConfig(cb, {0, 4}), std::invalid_argument);
  const PhaseConfig ok(cb, {0, 3});
  EXPECT_DOUBLE_EQ(ok.thetas()[1], 1.5 * M_PI);
}

TEST(SelectPhases, OppositeCascadeFlips) {
  const PhaseCodebook cb(1);
  const std::vector<ComplexGain> c{{-1.0, 0.0}};
  const PhaseConfig cfg = select_phases({1.0, 0.0}, c, cb);
  EXPECT_EQ(cfg.codes()[0], 1);
  EXPECT_DOUBLE_EQ(phase_objective({1.0, 0.0}, c, cfg), 4.0);
  EXPECT_EQ(align_phases({1.0, 0.0}, c, cb).codes()[0], 1);
  EXPECT_EQ(sweep_phases({1.0, 0.0}, c, cb).codes()[0], 1);
}

TEST(SelectPhases, ZeroCascadeGivesCodewordZero) {
  const PhaseCodebook cb(2);
  const std::vector<ComplexGain> c(5, ComplexGain{0.0, 0.0});
  for (const auto& cfg : {select_phases({0.3, 0.1}, c, cb), align_phases({0.3, 0.1}, c, cb),
                          sweep_phases({0.3, 0.1}, c, cb)}) {
    for (auto code : cfg.codes()) EXPECT_EQ(code, 0);
  }
  const std::vector<ComplexGain> big(40, ComplexGain{0.0, 0.0});
  const PhaseConfig sel = select_phases({1.0, 0.0}, big, cb);
  for (auto code : sel.codes()) EXPECT_EQ(code, 0);
}

TEST(SelectPhases, EmptyCascadeThrows) {
  const PhaseCodebook cb(2);
  EXPECT_THROW(select_phases({1.0, 0.0}, {}, cb), std::invalid_argument);
  EXPECT_THROW(align_phases({1.0, 0.0}, {}, cb), std::invalid_argument);
  EXPECT_THROW(sweep_phases({1.0, 0.0}, {}, cb), std::invalid_argument);
  EXPECT_THROW(exhaustive_phases({1.0, 0.0}, {}, cb), std::invalid_argument);
}

TEST(AlignPhases, EachElementNearestToDirectPhase) {
  std::mt19937_64 rng(21);
  const PhaseCodebook cb(3);
  const ComplexGain a = sample_cn01(rng, 1)[0];
  const auto c = sample_cn01(rng, 64);
  const PhaseConfig cfg = align_phases(a, c, cb);
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double target = std::arg(a) - std::arg(c[n]);
    double best_err = 1e9;
    std::size_t best = 0;
    for (std::size_t k = 0; k < cb.size(); ++k) {
      const double e = std::abs(std::remainder(cb.phases()[k] - target, 2.0 * M_PI));
      if (e < best_err) best_err = e, best = k;
    }
    EXPECT_EQ(cfg.codes()[n], best) << "element " << n;
  }
}

TEST(SweepPhases, MatchesExhaustiveOnSmallInstances) {
  std::mt19937_64 rng(22);
  const PhaseCodebook cb(2);
  int exact = 0;
  const int trials = 50;
  for (int k = 0; k < trials; ++k) {
    const ComplexGain a = sample_cn01(rng, 1)[0];
    const auto c = sample_cn01(rng, 3);
    const double got = phase_objective(a, c, sweep_phases(a, c, cb));
    const double best = phase_objective(a, c, exhaustive_phases(a, c, cb));
    EXPECT_LE(db_gap(best, got), 0.5);
    EXPECT_GE(best, got);
    if (got == best) ++exact;
  }
  EXPECT_GE(exact, 45);
}

TEST(SweepPhases, OptimalUpToExhaustiveBudget) {
  std::mt19937_64 rng(23);
  for (int bits : {1, 2, 3, 4}) {
    const PhaseCodebook cb(bits);
    const std::size_t n = kExhaustivePhaseBudget / bits;
    for (int k = 0; k < 5; ++k) {
      const ComplexGain a = 0.5 * sample_cn01(rng, 1)[0];
      const auto c = sample_cn01(rng, n);
      const double got = phase_objective(a, c, sweep_phases(a, c, cb));
      const double best = phase_objective(a, c, exhaustive_phases(a, c, cb));
      EXPECT_NEAR(got, best, 1e-12 * best) << "bits " << bits;
    }
  }
}

TEST(SweepPhases, NeverBelowAlignmentAndWithinSandwich) {
  std::mt19937_64 rng(24);
  for (int bits : {1, 2, 3, 8}) {
    const PhaseCodebook cb(bits);
    for (std::size_t n : {1u, 5u, 64u, 600u}) {
      const ComplexGain a = 0.1 * sample_cn01(rng, 1)[0];
      const auto c = sample_cn01(rng, n);
      const double swept = phase_objective(a, c, sweep_phases(a, c, cb));
      const double aligned = phase_objective(a, c, align_phases(a, c, cb));
      EXPECT_GE(swept, aligned);
      const double hi = std::abs(a) + sum_abs(c);
      const double lo = std::abs(a) + std::cos(M_PI / cb.size()) * sum_abs(c);
      for (double v : {swept, aligned}) {
        EXPECT_LE(std::sqrt(v), hi * (1 + 1e-12));
        EXPECT_GE(std::sqrt(v), lo * (1 - 1e-12));
      }
    }
  }
}

TEST(SelectPhases, UsesExhaustiveWithinBudget) {
  std::mt19937_64 rng(25);
  const PhaseCodebook cb(2);
  for (int k = 0; k < 20; ++k) {
    const ComplexGain a = sample_cn01(rng, 1)[0];
    const auto c = sample_cn01(rng, 4);
    EXPECT_EQ(select_phases(a, c, cb), exhaustive_phases(a, c, cb));
    EXPECT_GE(phase_objective(a, c, select_phases(a, c, cb)),
              phase_objective(a, c, align_phases(a, c, cb)));
  }
  const auto big = sample_cn01(rng, 9);
  EXPECT_EQ(select_phases({1.0, 0.0}, big, cb), sweep_phases({1.0, 0.0}, big, cb));
  EXPECT_THROW(exhaustive_phases({1.0, 0.0}, big, cb), std::invalid_argument);
}

TEST(SelectPhases, EightBitsApproachContinuousBound) {
  std::mt19937_64 rng(26);
  const PhaseCodebook cb(8);
  const ComplexGain a = sample_cn01(rng, 1)[0];
  const auto c = sample_cn01(rng, 600);
  const double mag = std::sqrt(phase_objective(a, c, select_phases(a, c, cb)));
  const double bound = std::abs(a) + sum_abs(c);
  EXPECT_GE(mag, std::cos(M_PI / 256.0) * bound);
}

TEST(SelectPhases, GlobalRotationKeepsOptimumValue) {
  std::mt19937_64 rng(27);
  const PhaseCodebook cb(2);
  for (std::size_t n : {3u, 50u}) {
    const ComplexGain a = sample_cn01(rng, 1)[0];
    auto c = sample_cn01(rng, n);
    const double base = phase_objective(a, c, select_phases(a, c, cb));
    const ComplexGain rot = std::polar(1.0, 0.7);
    for (auto& x : c) x *= rot;
    const double rotated = phase_objective(a * rot, c, select_phases(a * rot, c, cb));
    EXPECT_NEAR(rotated, base, 1e-12 * base);
  }
}

TEST(SelectPhases, IdenticalAcrossKernelVariants) {
  if (simd::avx2_kernels() == nullptr) GTEST_SKIP() << "AVX2 variants unavailable";
  std::mt19937_64 rng(28);
  const PhaseCodebook cb(2);
  const ComplexGain a = sample_cn01(rng, 1)[0];
  const auto c = sample_cn01(rng, 600);
  ASSERT_TRUE(simd::force_isa(simd::Isa::kScalar));
  const PhaseConfig s = select_phases(a, c, cb);
  const PhaseConfig s_align = align_phases(a, c, cb);
  ASSERT_TRUE(simd::force_isa(simd::Isa::kAvx2));
  EXPECT_EQ(select_phases(a, c, cb), s);
  EXPECT_EQ(align_phases(a, c, cb), s_align);
}

TEST(ReflectGain, Examples) {
  const PhaseCodebook cb(2);
  CascadeChannel ch{{1.0, 1.0}, {1.0, 1.0}};
  const PhaseConfig zero(cb, {0, 0});
  EXPECT_EQ(reflect_gain(zero, ch, 1.0), ComplexGain(2.0, 0.0));
  EXPECT_NEAR(std::abs(reflect_gain(zero, ch, 0.25)), 1.0, 1e-15);

  std::mt19937_64 rng(29);
  CascadeChannel big;
  big.from_user = sample_cn01(rng, 600);
  for (const auto& x : big.from_user) big.to_bs.push_back(std::conj(x) / std::norm(x));
  const PhaseConfig aligned(cb, std::vector<std::uint8_t>(600, 0));
  EXPECT_NEAR(std::abs(reflect_gain(aligned, big, 1.0)), 600.0, 1e-9);
  EXPECT_THROW(reflect_gain(PhaseConfig(cb, {0}), ch, 1.0), std::invalid_argument);
}

TEST(ReflectGain, LinearInChannelEntries) {
  std::mt19937_64 rng(30);
  const PhaseCodebook cb(2);
  CascadeChannel x{sample_cn01(rng, 10), sample_cn01(rng, 10)};
  CascadeChannel y{x.to_bs, sample_cn01(rng, 10)};
  CascadeChannel sum{x.to_bs, {}};
  for (std::size_t n = 0; n < 10; ++n) sum.from_user.push_back(x.from_user[n] + 2.0 * y.from_user[n]);
  const PhaseConfig cfg(cb, {0, 1, 2, 3, 0, 1, 2, 3, 0, 1});
  const ComplexGain lhs = reflect_gain(cfg, sum, 1.0);
  const ComplexGain rhs = reflect_gain(cfg, x, 1.0) + 2.0 * reflect_gain(cfg, y, 1.0);
  EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
}

TEST(AngleAttenuation, Law) {
  const AngleAttenuation m;
  EXPECT_EQ(angle_attenuation(m, 0.0), 1.0);
  EXPECT_EQ(angle_attenuation(m, m.lambda0), 1.0);
  EXPECT_DOUBLE_EQ(angle_attenuation(m, 2.0 * m.lambda0), 0.5);
  EXPECT_THROW(angle_attenuation(m, -0.1), std::domain_error);
  EXPECT_THROW(angle_attenuation(m, 3.2), std::domain_error);
}

TEST(AngleAttenuation, MonotoneAndBounded) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, M_PI);
  const AngleAttenuation m;
  for (int k = 0; k < 100; ++k) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    EXPECT_GE(angle_attenuation(m, a), angle_attenuation(m, b));
    EXPECT_GT(angle_attenuation(m, b), 0.0);
    EXPECT_LE(angle_attenuation(m, a), 1.0);
  }
}

}  // namespace
}  // namespace ristpc
