// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/core/geometry.hpp"

#include <algorithm>
#include <string>

#include "groupforge/core/error.hpp"

namespace gf {

BBox clamp_rect(const BBox& rect, int width, int height) {
  if (!rect.well_formed())
    raise(Errc::EmptyIntersection, "rect is not well-formed");
  BBox out{std::max(rect.x1, 0.0), std::max(rect.y1, 0.0),
           std::min(rect.x2, static_cast<double>(width)),
           std::min(rect.y2, static_cast<double>(height))};
  if (!(out.x1 < out.x2 && out.y1 < out.y2))
    raise(Errc::EmptyIntersection,
          "rect lies outside the " + std::to_string(width) + "x" + std::to_string(height) +
              " canvas");
  return out;
}

}  // namespace gf
