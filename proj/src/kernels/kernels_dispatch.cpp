// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "groupforge/kernels/kernels.hpp"

namespace gf::kernels {

namespace {

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const Ops* select() {
  const char* env = std::getenv("GROUPFORGE_SIMD");
  const char* mode = env ? env : "auto";

  if (std::strcmp(mode, "scalar") == 0) return &scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
  if (std::strcmp(mode, "avx2") == 0 || std::strcmp(mode, "auto") == 0) {
    if (cpu_has_avx2()) return &avx2_ops();
    if (std::strcmp(mode, "avx2") == 0)
      std::fprintf(stderr, "groupforge: GROUPFORGE_SIMD=avx2 requested but CPU lacks AVX2+FMA, using scalar kernels\n");
    return &scalar_ops();
  }
#endif
#if defined(__aarch64__)
  if (std::strcmp(mode, "neon") == 0 || std::strcmp(mode, "auto") == 0) return &neon_ops();
#endif

  if (std::strcmp(mode, "auto") != 0)
    std::fprintf(stderr, "groupforge: unknown GROUPFORGE_SIMD value '%s', using scalar kernels\n", mode);
  return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops* selected = select();
  return *selected;
}

}  // namespace gf::kernels
