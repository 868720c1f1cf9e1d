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

#ifndef RISTPC_SIMD_KERNELS_HPP_
#define RISTPC_SIMD_KERNELS_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference version; the
// AVX2 variants are compiled in a separate translation unit and picked at
// runtime when the CPU supports them.
//
// Contract shared by all variants:
//  - nearest_codeword and axpy are bit-identical across variants (no fused
//    multiply-add, same operation order per element).
//  - triple_sum and dot may differ in the last bits because the reduction
//    order differs; tests compare them with a relative tolerance.

namespace ristpc::simd {

using Complex = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

struct KernelSet {
  Isa isa;

  // sum_n a[n] * p[n] * b[n]
  Complex (*triple_sum)(const Complex* a, const Complex* p, const Complex* b,
                        std::size_t n);

  // out[n] = argmax_k Re(w[n] * phasors[k]); the lowest k wins ties.
  void (*nearest_codeword)(const Complex* w, std::size_t n,
                           const Complex* phasors, std::size_t m,
                           std::uint8_t* out);

  double (*dot)(const double* x, const double* y, std::size_t n);

  // y[n] += alpha * x[n]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelSet& scalar_kernels();

// nullptr when the AVX2 variants were not built or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

// The kernel set used by the library. Chosen once from the CPU features;
// RISTPC_SIMD=scalar in the environment forces the reference kernels.
const KernelSet& active_kernels();

// Overrides the runtime choice (tests and benchmarks). Returns false if the
// requested ISA is unavailable, in which case nothing changes.
bool force_isa(Isa isa);

}  // namespace ristpc::simd

#endif  // RISTPC_SIMD_KERNELS_HPP_
