// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/core/mask.hpp"

#include <algorithm>
#include <cmath>

#include "groupforge/core/error.hpp"
#include "groupforge/kernels/kernels.hpp"

namespace gf {

bool MaskGrid::empty() const { return count() == 0; }

size_t MaskGrid::count() const {
  return kernels::active_ops().count_nonzero_u8(bits.data(), bits.size());
}

size_t rect_paint(MaskGrid& grid, const BBox& rect) {
  if (!rect.well_formed()) return 0;
  const int x0 = std::max(0, static_cast<int>(std::floor(rect.x1)));
  const int x1 = std::min(grid.width, static_cast<int>(std::ceil(rect.x2)) + 1);
  const int y0 = std::max(0, static_cast<int>(std::floor(rect.y1)));
  const int y1 = std::min(grid.height, static_cast<int>(std::ceil(rect.y2)) + 1);
  size_t painted = 0;
  for (int y = y0; y < y1; ++y) {
    const double cy = y + 0.5;
    if (!(rect.y1 < cy && cy <= rect.y2)) continue;
    for (int x = x0; x < x1; ++x) {
      const double cx = x + 0.5;
      if (rect.x1 < cx && cx <= rect.x2) {
        painted += grid.at(x, y) == 0;
        grid.set(x, y, 1);
      }
    }
  }
  return painted;
}

MaskGrid rect_to_mask(const BBox& rect, int width, int height) {
  const BBox clamped = clamp_rect(rect, width, height);  // throws on empty intersection
  MaskGrid grid(width, height);
  if (rect_paint(grid, clamped) == 0)
    raise(Errc::EmptyIntersection, "clamped rect covers no pixel center");
  return grid;
}

MaskGrid mask_union(const MaskGrid& a, const MaskGrid& b) {
  if (!a.same_shape(b)) raise(Errc::DimensionMismatch, "mask_union on differently sized masks");
  MaskGrid out(a.width, a.height);
  kernels::active_ops().or_u8(out.bits.data(), a.bits.data(), b.bits.data(), a.bits.size());
  return out;
}

void mask_union_inplace(MaskGrid& a, const MaskGrid& b) {
  if (!a.same_shape(b)) raise(Errc::DimensionMismatch, "mask_union on differently sized masks");
  kernels::active_ops().or_u8(a.bits.data(), a.bits.data(), b.bits.data(), a.bits.size());
}

}  // namespace gf
