// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/kernels/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <algorithm>

namespace gf::kernels {
namespace neon {

double dot_f64(const double* a, const double* b, size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  if (i + 2 <= n) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    i += 2;
  }
  double s = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double reduce_max_f64(const double* x, size_t n) {
  size_t i = 0;
  double m;
  if (n >= 2) {
    float64x2_t mv = vld1q_f64(x);
    for (i = 2; i + 2 <= n; i += 2) mv = vmaxq_f64(mv, vld1q_f64(x + i));
    m = vmaxvq_f64(mv);
  } else {
    m = x[0];
    i = 1;
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double reduce_add_f64(const double* x, size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void scale_f64(double* x, double a, size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), av));
  for (; i < n; ++i) x[i] *= a;
}

void axpy_f64(double* y, double a, const double* x, size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void bias_scale_f64(double* dst, const double* src, const uint8_t* ind, double bias, double scale,
                    size_t n) {
  const float64x2_t biasv = vdupq_n_f64(bias);
  const float64x2_t scalev = vdupq_n_f64(scale);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t iv = vdupq_n_f64(static_cast<double>(ind[i]));
    iv = vsetq_lane_f64(static_cast<double>(ind[i + 1]), iv, 1);
    const float64x2_t t = vfmaq_f64(vld1q_f64(src + i), biasv, iv);
    vst1q_f64(dst + i, vmulq_f64(t, scalev));
  }
  for (; i < n; ++i) dst[i] = (src[i] + bias * static_cast<double>(ind[i])) * scale;
}

void or_u8(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n) {
  size_t i = 0;
  for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, vorrq_u8(vld1q_u8(a + i), vld1q_u8(b + i)));
  for (; i < n; ++i) dst[i] = static_cast<uint8_t>(a[i] | b[i]);
}

size_t count_nonzero_u8(const uint8_t* x, size_t n) {
  size_t c = 0;
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t nz = vmvnq_u8(vceqq_u8(vld1q_u8(x + i), vdupq_n_u8(0)));
    c += vaddvq_u8(vshrq_n_u8(nz, 7));
  }
  for (; i < n; ++i) c += (x[i] != 0);
  return c;
}

void clear_where_eq_u8(uint8_t* mask, const uint8_t* labels, uint8_t value, size_t n) {
  const uint8x16_t needle = vdupq_n_u8(value);
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t eq = vceqq_u8(vld1q_u8(labels + i), needle);
    vst1q_u8(mask + i, vbicq_u8(vld1q_u8(mask + i), eq));
  }
  for (; i < n; ++i)
    if (labels[i] == value) mask[i] = 0;
}

void fill_masked_rgb_u8(uint8_t* rgb, const uint8_t* mask, const uint8_t* color, size_t pixels) {
  const uint8x16_t r = vdupq_n_u8(color[0]);
  const uint8x16_t g = vdupq_n_u8(color[1]);
  const uint8x16_t b = vdupq_n_u8(color[2]);
  size_t i = 0;
  for (; i + 16 <= pixels; i += 16) {
    const uint8x16_t keep = vceqq_u8(vld1q_u8(mask + i), vdupq_n_u8(0));
    uint8x16x3_t px = vld3q_u8(rgb + 3 * i);
    px.val[0] = vbslq_u8(keep, px.val[0], r);
    px.val[1] = vbslq_u8(keep, px.val[1], g);
    px.val[2] = vbslq_u8(keep, px.val[2], b);
    vst3q_u8(rgb + 3 * i, px);
  }
  for (; i < pixels; ++i) {
    if (mask[i]) {
      rgb[3 * i] = color[0];
      rgb[3 * i + 1] = color[1];
      rgb[3 * i + 2] = color[2];
    }
  }
}

}  // namespace neon

const Ops& neon_ops() {
  static const Ops ops = {
      "neon",
      neon::dot_f64,
      neon::reduce_max_f64,
      neon::reduce_add_f64,
      neon::scale_f64,
      neon::axpy_f64,
      neon::bias_scale_f64,
      neon::or_u8,
      neon::count_nonzero_u8,
      neon::clear_where_eq_u8,
      neon::fill_masked_rgb_u8,
  };
  return ops;
}

}  // namespace gf::kernels

#endif  // aarch64
