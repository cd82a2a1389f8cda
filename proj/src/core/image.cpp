// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/core/image.hpp"

#include <algorithm>
#include <cmath>

namespace gf {

Image resize_bilinear(const Image& src, int outWidth, int outHeight) {
  Image out(outWidth, outHeight);
  if (src.width <= 0 || src.height <= 0 || outWidth <= 0 || outHeight <= 0) return out;
  const double sx = static_cast<double>(src.width) / outWidth;
  const double sy = static_cast<double>(src.height) / outHeight;
  for (int y = 0; y < outHeight; ++y) {
    const double fy = (y + 0.5) * sy - 0.5;
    const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, src.height - 1);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double wy = std::clamp(fy - y0, 0.0, 1.0);
    for (int x = 0; x < outWidth; ++x) {
      const double fx = (x + 0.5) * sx - 0.5;
      const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, src.width - 1);
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double wx = std::clamp(fx - x0, 0.0, 1.0);
      uint8_t* dst = out.px(x, y);
      const uint8_t* p00 = src.px(x0, y0);
      const uint8_t* p10 = src.px(x1, y0);
      const uint8_t* p01 = src.px(x0, y1);
      const uint8_t* p11 = src.px(x1, y1);
      for (int c = 0; c < 3; ++c) {
        const double top = p00[c] + (p10[c] - p00[c]) * wx;
        const double bot = p01[c] + (p11[c] - p01[c]) * wx;
        dst[c] = static_cast<uint8_t>(std::lround(top + (bot - top) * wy));
      }
    }
  }
  return out;
}

std::vector<uint8_t> resize_nearest(const std::vector<uint8_t>& src, int srcW, int srcH, int outW,
                                    int outH) {
  std::vector<uint8_t> out(static_cast<size_t>(outW) * outH, 0);
  if (srcW <= 0 || srcH <= 0 || outW <= 0 || outH <= 0) return out;
  for (int y = 0; y < outH; ++y) {
    const int sy = std::min(srcH - 1, static_cast<int>((y + 0.5) * srcH / outH));
    for (int x = 0; x < outW; ++x) {
      const int sx = std::min(srcW - 1, static_cast<int>((x + 0.5) * srcW / outW));
      out[static_cast<size_t>(y) * outW + x] = src[static_cast<size_t>(sy) * srcW + sx];
    }
  }
  return out;
}

}  // namespace gf
