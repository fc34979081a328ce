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

// AVX2 + FMA variants. This file is compiled with -mavx2 -mfma and must only
// be entered after the dispatcher has confirmed CPU support.

#include "brudno/kernels.hpp"

#if defined(BRUDNO_HAVE_AVX2_TU) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace brudno::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sw));
}

double dot_avx2(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  const double* py = y.data();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i + 4), _mm256_loadu_pd(py + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i), a0);
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += px[i] * py[i];
  return acc;
}

cplx cdot_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const double* px = reinterpret_cast<const double*>(x.data());
  const double* py = reinterpret_cast<const double*>(y.data());
  // acc_re lanes: xr*yr, xi*yi ; acc_im lanes: xr*yi, xi*yr
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d vy_sw = _mm256_permute_pd(vy, 0b0101);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    acc_im = _mm256_fmadd_pd(vx, vy_sw, acc_im);
  }
  alignas(32) double im[4];
  _mm256_store_pd(im, acc_im);
  double re = hsum(acc_re);
  double imag = (im[0] - im[1]) + (im[2] - im[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    imag += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, imag};
}

void axpy_avx2(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  double* py = y.data();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(py + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i)));
  for (; i < n; ++i) py[i] += a * px[i];
}

void caxpy_avx2(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = x.size();
  const double* px = reinterpret_cast<const double*>(x.data());
  double* py = reinterpret_cast<double*>(y.data());
  const __m256d vre = _mm256_set1_pd(a.real());
  const __m256d vim = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vx_sw = _mm256_permute_pd(vx, 0b0101);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    vy = _mm256_fmadd_pd(vre, vx, vy);
    vy = _mm256_fmadd_pd(vim, vx_sw, vy);
    _mm256_storeu_pd(py + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double max_abs_diff_avx2(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const double* px = x.data();
  const double* py = y.data();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i));
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, d));
  }
  double out = hmax(m);
  for (; i < n; ++i) out = std::max(out, std::abs(px[i] - py[i]));
  return out;
}

// Natural log of four positive normal doubles. Mantissa/exponent split as in
// frexp, then the Cephes rational approximation of log(1+x) on
// [sqrt(1/2)-1, sqrt(2)-1]; ln 2 is split in two parts to keep e*ln2 exact.
inline __m256d log_pd(__m256d v) {
  const __m256i bits = _mm256_castpd_si256(v);
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ff0000000000000LL);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000fffffffffffffLL);
  const __m256i half_bits = _mm256_set1_epi64x(0x3fe0000000000000LL);

  // biased exponent as a double via the 2^52 trick
  __m256i biased = _mm256_srli_epi64(_mm256_and_si256(bits, exp_mask), 52);
  const __m256d two52 = _mm256_set1_pd(4503599627370496.0);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(two52))), two52);
  e = _mm256_sub_pd(e, _mm256_set1_pd(1022.0));

  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), half_bits));

  const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d small = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(small, one));
  m = _mm256_add_pd(m, _mm256_and_pd(small, m));
  __m256d x = _mm256_sub_pd(m, one);

  __m256d p = _mm256_set1_pd(1.01875663804580931796E-4);
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(4.97494994976747001425E-1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(4.70579119878881725854E0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.44989225341610930846E1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.79368678507819816313E1));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(7.70838733755885391666E0));

  __m256d q = _mm256_add_pd(x, _mm256_set1_pd(1.12873587189167450590E1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(4.52279145837532221105E1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(8.29875266912776603211E1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(7.11544750618563894466E1));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(2.31251620126765340583E1));

  __m256d z = _mm256_mul_pd(x, x);
  __m256d y = _mm256_mul_pd(x, _mm256_div_pd(_mm256_mul_pd(z, p), q));
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, y);
  __m256d r = _mm256_add_pd(x, y);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), r);
}

double entropy_bits_avx2(std::span<const double> p) {
  const std::size_t n = p.size();
  const double* pp = p.data();
  // subnormals are routed to the scalar tail path below
  const __m256d tiny = _mm256_set1_pd(2.2250738585072014e-308);
  __m256d acc = _mm256_setzero_pd();
  double tail = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(pp + i);
    __m256d normal = _mm256_cmp_pd(v, tiny, _CMP_GE_OQ);
    int normal_bits = _mm256_movemask_pd(normal);
    if (normal_bits != 0xf) {
      for (int k = 0; k < 4; ++k)
        if (!(normal_bits & (1 << k)) && pp[i + k] > 0.0) tail -= pp[i + k] * std::log2(pp[i + k]);
    }
    __m256d safe = _mm256_blendv_pd(_mm256_set1_pd(1.0), v, normal);
    acc = _mm256_fmadd_pd(_mm256_and_pd(normal, v), log_pd(safe), acc);
  }
  double out = -hsum(acc) * 1.44269504088896340736 + tail;
  for (; i < n; ++i)
    if (pp[i] > 0.0) out -= pp[i] * std::log2(pp[i]);
  return out;
}

RangeMass range_mass_avx2(std::span<const double> v, double lo, double hi) {
  const std::size_t n = v.size();
  const double* pv = v.data();
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  __m256d acc = _mm256_setzero_pd();
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(pv + i);
    __m256d in = _mm256_and_pd(_mm256_cmp_pd(x, vlo, _CMP_GE_OQ), _mm256_cmp_pd(x, vhi, _CMP_LE_OQ));
    acc = _mm256_add_pd(acc, _mm256_and_pd(in, x));
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(in)));
  }
  RangeMass out{count, hsum(acc)};
  for (; i < n; ++i) {
    if (pv[i] >= lo && pv[i] <= hi) {
      ++out.count;
      out.sum += pv[i];
    }
  }
  return out;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{
      .name = "avx2",
      .dot = dot_avx2,
      .cdot = cdot_avx2,
      .axpy = axpy_avx2,
      .caxpy = caxpy_avx2,
      .max_abs_diff = max_abs_diff_avx2,
      .entropy_bits = entropy_bits_avx2,
      .range_mass = range_mass_avx2,
  };
  return &table;
}

}  // namespace brudno::kernels

#else

namespace brudno::kernels {
const KernelTable* avx2_table_impl() { return nullptr; }
}  // namespace brudno::kernels

#endif
