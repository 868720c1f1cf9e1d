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

// Compiled with -mavx2 -mfma. Nothing in here may run before dispatch.cpp has
// confirmed the CPU supports both.

#include <immintrin.h>

#include "ristpc/simd/kernels.hpp"

namespace ristpc::simd {
namespace {

// Two interleaved complex products per register: [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

Complex triple_sum_avx2(const Complex* a, const Complex* p, const Complex* b,
                        std::size_t n) {
  const auto* ad = reinterpret_cast<const double*>(a);
  const auto* pd = reinterpret_cast<const double*>(p);
  const auto* bd = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = cmul(cmul(_mm256_loadu_pd(ad + 2 * i),
                                 _mm256_loadu_pd(pd + 2 * i)),
                            _mm256_loadu_pd(bd + 2 * i));
    const __m256d x1 = cmul(cmul(_mm256_loadu_pd(ad + 2 * i + 4),
                                 _mm256_loadu_pd(pd + 2 * i + 4)),
                            _mm256_loadu_pd(bd + 2 * i + 4));
    acc0 = _mm256_add_pd(acc0, x0);
    acc1 = _mm256_add_pd(acc1, x1);
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_add_pd(
        acc0, cmul(cmul(_mm256_loadu_pd(ad + 2 * i), _mm256_loadu_pd(pd + 2 * i)),
                   _mm256_loadu_pd(bd + 2 * i)));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d lanes = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                   _mm256_extractf128_pd(acc, 1));
  double re = _mm_cvtsd_f64(lanes);
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(lanes, lanes));
  for (; i < n; ++i) {
    const double apr = a[i].real() * p[i].real() - a[i].imag() * p[i].imag();
    const double api = a[i].real() * p[i].imag() + a[i].imag() * p[i].real();
    re += apr * b[i].real() - api * b[i].imag();
    im += apr * b[i].imag() + api * b[i].real();
  }
  return {re, im};
}

void nearest_codeword_avx2(const Complex* w, std::size_t n,
                           const Complex* phasors, std::size_t m,
                           std::uint8_t* out) {
  const auto* wd = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w01 = _mm256_loadu_pd(wd + 2 * i);
    const __m256d w23 = _mm256_loadu_pd(wd + 2 * i + 4);
    // unpack yields lane order [0, 2, 1, 3]; restore [0, 1, 2, 3].
    const __m256d re =
        _mm256_permute4x64_pd(_mm256_unpacklo_pd(w01, w23), 0xD8);
    const __m256d im =
        _mm256_permute4x64_pd(_mm256_unpackhi_pd(w01, w23), 0xD8);
    __m256d best = _mm256_sub_pd(
        _mm256_mul_pd(re, _mm256_set1_pd(phasors[0].real())),
        _mm256_mul_pd(im, _mm256_set1_pd(phasors[0].imag())));
    __m256d best_k = _mm256_setzero_pd();
    for (std::size_t k = 1; k < m; ++k) {
      const __m256d score = _mm256_sub_pd(
          _mm256_mul_pd(re, _mm256_set1_pd(phasors[k].real())),
          _mm256_mul_pd(im, _mm256_set1_pd(phasors[k].imag())));
      const __m256d gt = _mm256_cmp_pd(score, best, _CMP_GT_OQ);
      best = _mm256_blendv_pd(best, score, gt);
      best_k = _mm256_blendv_pd(best_k, _mm256_set1_pd(static_cast<double>(k)),
                                gt);
    }
    alignas(32) double ks[4];
    _mm256_store_pd(ks, best_k);
    for (int j = 0; j < 4; ++j) out[i + j] = static_cast<std::uint8_t>(ks[j]);
  }
  if (i < n) scalar_kernels().nearest_codeword(w + i, n - i, phasors, m, out + i);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(x + i + 4),
                                             _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d half = _mm_add_pd(_mm256_castpd256_pd128(acc),
                                  _mm256_extractf128_pd(acc, 1));
  double s = _mm_cvtsd_f64(_mm_add_sd(half, _mm_unpackhi_pd(half, half)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelSet& avx2_kernel_table() {
  static const KernelSet kSet{Isa::kAvx2, &triple_sum_avx2,
                              &nearest_codeword_avx2, &dot_avx2, &axpy_avx2};
  return kSet;
}

}  // namespace ristpc::simd
