// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

namespace gf::kernels {

// Data-parallel inner loops behind the attention kernel and the mask/image
// compositing paths. Each entry has a scalar reference implementation plus
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected once at startup.
//
// The f64 reductions may reassociate sums, so scalar and SIMD variants agree
// to rounding (~1e-15 relative), not bit-exactly; the u8 ops are exact in
// every variant. Selection is overridable with GROUPFORGE_SIMD=scalar|avx2|
// neon|auto, which also pins results when bit-stability across machines
// matters more than speed.
struct Ops {
  const char* name;

  // dst/src are f64 arrays of length n.
  double (*dot_f64)(const double* a, const double* b, size_t n);
  double (*reduce_max_f64)(const double* x, size_t n);       // n >= 1, finite input
  double (*reduce_add_f64)(const double* x, size_t n);
  void (*scale_f64)(double* x, double a, size_t n);          // x *= a
  void (*axpy_f64)(double* y, double a, const double* x, size_t n);  // y += a*x
  // dst[i] = (src[i] + bias*ind[i]) * scale, ind holds 0/1 bytes.
  void (*bias_scale_f64)(double* dst, const double* src, const uint8_t* ind, double bias,
                         double scale, size_t n);

  // u8 mask ops; masks hold 0/1, labels hold class ids.
  void (*or_u8)(uint8_t* dst, const uint8_t* a, const uint8_t* b, size_t n);
  size_t (*count_nonzero_u8)(const uint8_t* x, size_t n);
  // mask[i] = 0 where labels[i] == value, untouched elsewhere.
  void (*clear_where_eq_u8)(uint8_t* mask, const uint8_t* labels, uint8_t value, size_t n);
  // Interleaved RGB fill: pixels with mask[i] != 0 are set to color[0..2].
  void (*fill_masked_rgb_u8)(uint8_t* rgb, const uint8_t* mask, const uint8_t* color,
                             size_t pixels);
};

const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

// The runtime-selected table (GROUPFORGE_SIMD override, then CPU detection).
const Ops& active_ops();

}  // namespace gf::kernels
