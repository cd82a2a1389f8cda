// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupforge/core/image.hpp"

namespace gf {

// Minimal PNG codec on top of zlib. The writer always emits 8-bit
// grayscale or truecolor with filter None and a fixed zlib level, so
// emitted bytes depend only on pixel content; the reader handles 8-bit
// gray / RGB / RGBA (alpha dropped), all five scanline filters, no
// interlacing or palettes.
struct PngBuffer {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1 or 3
  std::vector<uint8_t> pixels;
};

std::vector<uint8_t> encode_png_rgb(const Image& image);
std::vector<uint8_t> encode_png_gray(int width, int height, const std::vector<uint8_t>& gray);

void write_png_rgb(const std::string& path, const Image& image);
void write_png_gray(const std::string& path, int width, int height,
                    const std::vector<uint8_t>& gray);

PngBuffer decode_png(const std::vector<uint8_t>& bytes);
PngBuffer read_png(const std::string& path);

Image image_from_png(const PngBuffer& buf);  // gray expands to RGB

}  // namespace gf
