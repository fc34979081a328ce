// Copyright 2026 The brudno Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Data-parallel inner loops shared by the classical and quantum modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The active table is chosen once at first use from the
// CPU feature bits; setting BRUDNO_KERNELS=scalar in the environment forces
// the reference path. Both tables are reachable directly so the equivalence
// tests can compare them on identical inputs.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace brudno::kernels {

using cplx = std::complex<double>;

struct RangeMass {
  std::size_t count = 0;
  double sum = 0.0;
};

struct KernelTable {
  std::string_view name;

  // sum_i x_i * y_i
  double (*dot)(std::span<const double> x, std::span<const double> y);

  // sum_i conj(x_i) * y_i
  cplx (*cdot)(std::span<const cplx> x, std::span<const cplx> y);

  // y += a * x
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);

  // y += a * x (complex scalar)
  void (*caxpy)(cplx a, std::span<const cplx> x, std::span<cplx> y);

  // max_i |x_i - y_i|
  double (*max_abs_diff)(std::span<const double> x, std::span<const double> y);

  // -sum_i p_i log2 p_i with 0 log 0 := 0; entries <= 0 contribute nothing.
  double (*entropy_bits)(std::span<const double> p);

  // count and sum of the entries v with lo <= v <= hi.
  RangeMass (*range_mass)(std::span<const double> v, double lo, double hi);
};

const KernelTable& scalar_table();

// nullptr when the build has no AVX2 translation unit or the CPU lacks
// AVX2+FMA.
const KernelTable* avx2_table();

// The table every library call goes through.
const KernelTable& active();

// Reinterpret an interleaved complex buffer as doubles (2 per element).
inline std::span<const double> as_doubles(std::span<const cplx> x) {
  return {reinterpret_cast<const double*>(x.data()), 2 * x.size()};
}
inline std::span<double> as_doubles(std::span<cplx> x) {
  return {reinterpret_cast<double*>(x.data()), 2 * x.size()};
}

}  // namespace brudno::kernels
