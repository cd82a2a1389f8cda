// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "groupforge/core/geometry.hpp"
#include "groupforge/core/mask.hpp"
#include "groupforge/core/parsing.hpp"
#include "groupforge/skeleton/augment.hpp"

namespace gf {

enum class MaskSide { Left, Right, Both };

// Boundary band(s) of a person box. With w = x2-x1, the left band is the
// rect (x1 - r*w, y1)-(x1 + r*w, y2), the right band mirrors it at x2, and
// Both is their union. Bands are clamped to the canvas before
// rasterization. r must lie in (0, 0.5); throws EmptyIntersection when the
// clamped union covers nothing.
MaskGrid coarse_boundary_mask(const BBox& box, MaskSide side, double r, int width, int height);

// Boundary band extended over the full image height: the left column is
// (x1 - r*w, 0)-(x1 + r*w, height), mirrored at x2 for the right side.
MaskGrid column_extension_mask(const BBox& box, Side side, double r, int width, int height);

// Lower-body rectangle (x1, y1 + r*(y2-y1))-(x2, y2). r must lie in
// [0.5, 0.9].
MaskGrid body_completion_mask(const BBox& box, double r, int width, int height);

// Union of padded limb boxes taken from BOTH the original and the augmented
// skeleton, so the mask shape cannot reveal which pose is the ground truth.
// Symmetric in (orig, aug). Throws MissingJoint when a selected limb is
// missing in either skeleton; boxes that clamp away contribute nothing.
MaskGrid fine_interaction_mask(const Skeleton& orig, const Skeleton& aug,
                               std::span<const LimbSelector> limbs, double padFactor, int width,
                               int height, double handRadiusFactor = kDefaultHandRadiusFactor);

// Clears every pixel labeled Face in any of the parsing maps. Runs last in
// the engine so the guarantee survives brush augmentation.
MaskGrid unmask_faces(const MaskGrid& mask, std::span<const ParsingMap* const> parsings);

}  // namespace gf
