// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "groupforge/core/geometry.hpp"

namespace gf {

// Binary H x W editing mask, row-major, one byte per pixel (0 or 1).
// Bit value 1 marks the region to inpaint.
struct MaskGrid {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> bits;

  MaskGrid() = default;
  MaskGrid(int w, int h) : width(w), height(h), bits(static_cast<size_t>(w) * h, 0) {}

  uint8_t at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, uint8_t v) { bits[static_cast<size_t>(y) * width + x] = v; }
  size_t size() const { return bits.size(); }
  bool empty() const;        // no set pixel
  size_t count() const;      // number of set pixels
  bool same_shape(const MaskGrid& o) const { return width == o.width && height == o.height; }

  bool operator==(const MaskGrid&) const = default;
};

// Rasterizes the canvas-clamped rect under the pixel-center rule: pixel (x,y)
// is set iff its center (x+0.5, y+0.5) satisfies x1 < cx <= x2 and
// y1 < cy <= y2. A center exactly on the left/top edge is out, on the
// right/bottom edge is in; this keeps the rule unambiguous for real-valued
// boxes. Throws EmptyIntersection when no pixel is covered.
MaskGrid rect_to_mask(const BBox& rect, int width, int height);

// Like rect_to_mask but paints into an existing grid and reports the number
// of pixels newly covered instead of throwing on empty coverage.
size_t rect_paint(MaskGrid& grid, const BBox& rect);

// Elementwise OR. Throws DimensionMismatch.
MaskGrid mask_union(const MaskGrid& a, const MaskGrid& b);

// In-place OR of b into a. Throws DimensionMismatch.
void mask_union_inplace(MaskGrid& a, const MaskGrid& b);

}  // namespace gf
