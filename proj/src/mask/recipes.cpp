// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/mask/recipes.hpp"

#include <stdexcept>

#include "groupforge/core/error.hpp"
#include "groupforge/kernels/kernels.hpp"

namespace gf {

namespace {

void require_box(const BBox& box) {
  if (!box.well_formed()) throw std::invalid_argument("box is not well-formed");
}

}  // namespace

MaskGrid coarse_boundary_mask(const BBox& box, MaskSide side, double r, int width, int height) {
  require_box(box);
  if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("boundary ratio r must lie in (0, 0.5)");
  const double w = box.width();
  MaskGrid grid(width, height);
  size_t painted = 0;
  if (side == MaskSide::Left || side == MaskSide::Both)
    painted += rect_paint(grid, {box.x1 - r * w, box.y1, box.x1 + r * w, box.y2});
  if (side == MaskSide::Right || side == MaskSide::Both)
    painted += rect_paint(grid, {box.x2 - r * w, box.y1, box.x2 + r * w, box.y2});
  if (painted == 0) raise(Errc::EmptyIntersection, "boundary bands lie outside the canvas");
  return grid;
}

MaskGrid column_extension_mask(const BBox& box, Side side, double r, int width, int height) {
  require_box(box);
  if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("boundary ratio r must lie in (0, 0.5)");
  const double w = box.width();
  const double xc = side == Side::Left ? box.x1 : box.x2;
  return rect_to_mask({xc - r * w, 0.0, xc + r * w, static_cast<double>(height)}, width, height);
}

MaskGrid body_completion_mask(const BBox& box, double r, int width, int height) {
  require_box(box);
  if (!(r >= 0.5 && r <= 0.9))
    throw std::invalid_argument("body completion ratio r must lie in [0.5, 0.9]");
  return rect_to_mask({box.x1, box.y1 + r * box.height(), box.x2, box.y2}, width, height);
}

MaskGrid fine_interaction_mask(const Skeleton& orig, const Skeleton& aug,
                               std::span<const LimbSelector> limbs, double padFactor, int width,
                               int height, double handRadiusFactor) {
  MaskGrid grid(width, height);
  for (const LimbSelector& limb : limbs) {
    rect_paint(grid, limb_region(orig, limb, padFactor, handRadiusFactor));
    rect_paint(grid, limb_region(aug, limb, padFactor, handRadiusFactor));
  }
  return grid;
}

MaskGrid unmask_faces(const MaskGrid& mask, std::span<const ParsingMap* const> parsings) {
  MaskGrid out = mask;
  const auto& ops = kernels::active_ops();
  for (const ParsingMap* parsing : parsings) {
    if (parsing == nullptr) continue;
    if (parsing->width != mask.width || parsing->height != mask.height)
      raise(Errc::DimensionMismatch, "parsing map does not match mask dimensions");
    ops.clear_where_eq_u8(out.bits.data(), parsing->labels.data(),
                          static_cast<uint8_t>(ParsingClass::Face), out.bits.size());
  }
  return out;
}

}  // namespace gf
