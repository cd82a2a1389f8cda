// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "groupforge/kernels/kernels.hpp"

namespace gf::kernels {
namespace scalar {

double dot_f64(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double reduce_max_f64(const double* x, size_t n) {
  double m = x[0];
  for (size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double reduce_add_f64(const double* x, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

void scale_f64(double* x, double a, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= a;
}

void axpy_f64(double* y, double a, const double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void bias_scale_f64(double* dst, const double* src, const uint8_t* ind, double bias, double scale,
                    size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = (src[i] + bias * static_cast<double>(ind[i])) * scale;
}

void or_u8(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = static_cast<uint8_t>(a[i] | b[i]);
}

size_t count_nonzero_u8(const uint8_t* x, size_t n) {
  size_t c = 0;
  for (size_t i = 0; i < n; ++i) c += (x[i] != 0);
  return c;
}

void clear_where_eq_u8(uint8_t* mask, const uint8_t* labels, uint8_t value, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (labels[i] == value) mask[i] = 0;
}

void fill_masked_rgb_u8(uint8_t* rgb, const uint8_t* mask, const uint8_t* color, size_t pixels) {
  for (size_t i = 0; i < pixels; ++i) {
    if (mask[i]) {
      rgb[3 * i] = color[0];
      rgb[3 * i + 1] = color[1];
      rgb[3 * i + 2] = color[2];
    }
  }
}

}  // namespace scalar

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",
      scalar::dot_f64,
      scalar::reduce_max_f64,
      scalar::reduce_add_f64,
      scalar::scale_f64,
      scalar::axpy_f64,
      scalar::bias_scale_f64,
      scalar::or_u8,
      scalar::count_nonzero_u8,
      scalar::clear_where_eq_u8,
      scalar::fill_masked_rgb_u8,
  };
  return ops;
}

}  // namespace gf::kernels
