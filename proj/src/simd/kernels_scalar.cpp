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

#include "ristpc/simd/kernels.hpp"

namespace ristpc::simd {
namespace {

Complex triple_sum_scalar(const Complex* a, const Complex* p, const Complex* b,
                          std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // (a * p) * b, expanded so the operation order matches the AVX2 lanes.
    const double apr = a[i].real() * p[i].real() - a[i].imag() * p[i].imag();
    const double api = a[i].real() * p[i].imag() + a[i].imag() * p[i].real();
    re += apr * b[i].real() - api * b[i].imag();
    im += apr * b[i].imag() + api * b[i].real();
  }
  return {re, im};
}

void nearest_codeword_scalar(const Complex* w, std::size_t n,
                             const Complex* phasors, std::size_t m,
                             std::uint8_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t best = 0;
    double best_score = w[i].real() * phasors[0].real() -
                        w[i].imag() * phasors[0].imag();
    for (std::size_t k = 1; k < m; ++k) {
      const double score = w[i].real() * phasors[k].real() -
                           w[i].imag() * phasors[k].imag();
      if (score > best_score) {
        best_score = score;
        best = static_cast<std::uint8_t>(k);
      }
    }
    out[i] = best;
  }
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet kSet{Isa::kScalar, &triple_sum_scalar,
                              &nearest_codeword_scalar, &dot_scalar,
                              &axpy_scalar};
  return kSet;
}

}  // namespace ristpc::simd
