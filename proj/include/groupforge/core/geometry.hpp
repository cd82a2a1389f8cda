// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace gf {

// Axis-aligned box in image space: origin top-left, y grows downward.
// Coordinates are real-valued and may extend beyond the canvas before
// clamping. A box is well-formed when x1 < x2 and y1 < y2.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  bool well_formed() const { return x1 < x2 && y1 < y2; }

  bool operator==(const BBox&) const = default;
};

// Intersection of `rect` with [0,width]x[0,height].
// Throws EmptyIntersection when the box lies fully outside the canvas.
BBox clamp_rect(const BBox& rect, int width, int height);

}  // namespace gf
