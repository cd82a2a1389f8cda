// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cstring>

namespace gf::kernels {
namespace avx2 {

static inline double hsum_pd(__m256d v) {
  double lanes[4];
  _mm256_storeu_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

double dot_f64(const double* a, const double* b, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double s = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double reduce_max_f64(const double* x, size_t n) {
  size_t i = 0;
  double m;
  if (n >= 4) {
    __m256d mv = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4) mv = _mm256_max_pd(mv, _mm256_loadu_pd(x + i));
    double lanes[4];
    _mm256_storeu_pd(lanes, mv);
    m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  } else {
    m = x[0];
    i = 1;
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double reduce_add_f64(const double* x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum_pd(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

void scale_f64(double* x, double a, size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), av));
  for (; i < n; ++i) x[i] *= a;
}

void axpy_f64(double* y, double a, const double* x, size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void bias_scale_f64(double* dst, const double* src, const uint8_t* ind, double bias, double scale,
                    size_t n) {
  const __m256d biasv = _mm256_set1_pd(bias);
  const __m256d scalev = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    uint32_t packed;
    std::memcpy(&packed, ind + i, 4);
    const __m128i bytes = _mm_cvtsi32_si128(static_cast<int>(packed));
    const __m256d indv = _mm256_cvtepi32_pd(_mm_cvtepu8_epi32(bytes));
    const __m256d t = _mm256_fmadd_pd(biasv, indv, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(t, scalev));
  }
  for (; i < n; ++i) dst[i] = (src[i] + bias * static_cast<double>(ind[i])) * scale;
}

void or_u8(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n) {
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(av, bv));
  }
  for (; i < n; ++i) dst[i] = static_cast<uint8_t>(a[i] | b[i]);
}

size_t count_nonzero_u8(const uint8_t* x, size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  size_t c = 0;
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const auto zeros = static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    c += 32u - std::popcount(zeros);
  }
  for (; i < n; ++i) c += (x[i] != 0);
  return c;
}

void clear_where_eq_u8(uint8_t* mask, const uint8_t* labels, uint8_t value, size_t n) {
  const __m256i needle = _mm256_set1_epi8(static_cast<char>(value));
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i lv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(labels + i));
    const __m256i mv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    const __m256i eq = _mm256_cmpeq_epi8(lv, needle);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i), _mm256_andnot_si256(eq, mv));
  }
  for (; i < n; ++i)
    if (labels[i] == value) mask[i] = 0;
}

void fill_masked_rgb_u8(uint8_t* rgb, const uint8_t* mask, const uint8_t* color, size_t pixels) {
  // 16 pixels (48 interleaved bytes) per iteration: expand the 16 mask bytes
  // into three byte-select patterns and blend the color tile in.
  alignas(16) static constexpr uint8_t kExpand[3][16] = {
      {0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5},
      {5, 5, 6, 6, 6, 7, 7, 7, 8, 8, 8, 9, 9, 9, 10, 10},
      {10, 11, 11, 11, 12, 12, 12, 13, 13, 13, 14, 14, 14, 15, 15, 15},
  };
  alignas(16) uint8_t tile[48];
  for (int j = 0; j < 48; ++j) tile[j] = color[j % 3];

  const __m128i zero = _mm_setzero_si128();
  size_t i = 0;
  for (; i + 16 <= pixels; i += 16) {
    const __m128i mv = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mask + i));
    uint8_t* out = rgb + 3 * i;
    for (int part = 0; part < 3; ++part) {
      const __m128i expand = _mm_load_si128(reinterpret_cast<const __m128i*>(kExpand[part]));
      const __m128i mexp = _mm_shuffle_epi8(mv, expand);
      const __m128i sel = _mm_cmpgt_epi8(mexp, zero);  // mask bytes are 0/1
      const __m128i dst = _mm_loadu_si128(reinterpret_cast<const __m128i*>(out + 16 * part));
      const __m128i col = _mm_load_si128(reinterpret_cast<const __m128i*>(tile + 16 * part));
      _mm_storeu_si128(reinterpret_cast<__m128i*>(out + 16 * part), _mm_blendv_epi8(dst, col, sel));
    }
  }
  for (; i < pixels; ++i) {
    if (mask[i]) {
      rgb[3 * i] = color[0];
      rgb[3 * i + 1] = color[1];
      rgb[3 * i + 2] = color[2];
    }
  }
}

}  // namespace avx2

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",
      avx2::dot_f64,
      avx2::reduce_max_f64,
      avx2::reduce_add_f64,
      avx2::scale_f64,
      avx2::axpy_f64,
      avx2::bias_scale_f64,
      avx2::or_u8,
      avx2::count_nonzero_u8,
      avx2::clear_where_eq_u8,
      avx2::fill_masked_rgb_u8,
  };
  return ops;
}

}  // namespace gf::kernels

#endif  // x86-64
