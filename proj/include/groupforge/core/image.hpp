// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gf {

using Rgb = std::array<uint8_t, 3>;

// Interleaved 8-bit RGB image, row-major.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;

  Image() = default;
  Image(int w, int h, Rgb fill = {0, 0, 0}) : width(w), height(h), rgb(static_cast<size_t>(w) * h * 3) {
    for (size_t i = 0; i < rgb.size(); i += 3) {
      rgb[i] = fill[0];
      rgb[i + 1] = fill[1];
      rgb[i + 2] = fill[2];
    }
  }

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }

  const uint8_t* px(int x, int y) const { return &rgb[(static_cast<size_t>(y) * width + x) * 3]; }
  uint8_t* px(int x, int y) { return &rgb[(static_cast<size_t>(y) * width + x) * 3]; }

  Rgb get(int x, int y) const {
    const uint8_t* p = px(x, y);
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    uint8_t* p = px(x, y);
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }

  bool operator==(const Image&) const = default;
};

// Bilinear resample with pixel-center alignment.
Image resize_bilinear(const Image& src, int outWidth, int outHeight);

// Nearest-neighbor resample of a single-channel grid; keeps value sets intact.
std::vector<uint8_t> resize_nearest(const std::vector<uint8_t>& src, int srcW, int srcH,
                                    int outW, int outH);

}  // namespace gf
