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

#include <algorithm>
#include <cmath>

#include "brudno/kernels.hpp"

namespace brudno::kernels {
namespace {

double dot_scalar(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

cplx cdot_scalar(std::span<const cplx> x, std::span<const cplx> y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_scalar(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void caxpy_scalar(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double max_abs_diff_scalar(std::span<const double> x, std::span<const double> y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double entropy_bits_scalar(std::span<const double> p) {
  double acc = 0.0;
  for (double v : p)
    if (v > 0.0) acc -= v * std::log2(v);
  return acc;
}

RangeMass range_mass_scalar(std::span<const double> v, double lo, double hi) {
  RangeMass out;
  for (double x : v) {
    if (x >= lo && x <= hi) {
      ++out.count;
      out.sum += x;
    }
  }
  return out;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      .name = "scalar",
      .dot = dot_scalar,
      .cdot = cdot_scalar,
      .axpy = axpy_scalar,
      .caxpy = caxpy_scalar,
      .max_abs_diff = max_abs_diff_scalar,
      .entropy_bits = entropy_bits_scalar,
      .range_mass = range_mass_scalar,
  };
  return table;
}

}  // namespace brudno::kernels
