// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "groupforge/core/image.hpp"
#include "groupforge/core/skeleton.hpp"

namespace gf {

// Rendering style for skeleton maps. Line width is given at the 512-pixel
// reference scale and scaled by min(W,H)/512 at draw time so conditioning
// maps stay proportional across resolutions.
struct SkeletonStyle {
  double lineWidth = 4.0;
  double jointRadiusFactor = 1.5;  // joint disc radius = factor * lineWidth/2
  std::span<const Rgb> limbColors() const;

  static SkeletonStyle defaults() { return {}; }
};

// Draws every limb whose two joints are present as a solid capsule of the
// limb's fixed color, then joint discs on top. Missing joints are skipped.
// Output is a deterministic function of (skeleton, canvas, style); keypoint
// confidence influences nothing beyond presence.
Image rasterize_skeleton(const Skeleton& s, int width, int height,
                         const SkeletonStyle& style = SkeletonStyle::defaults());

// Same, several persons into one map (drawn in list order).
Image rasterize_skeletons(std::span<const Skeleton> skeletons, int width, int height,
                          const SkeletonStyle& style = SkeletonStyle::defaults());

}  // namespace gf
