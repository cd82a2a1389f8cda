// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "groupforge/core/mask.hpp"
#include "groupforge/core/seed.hpp"

namespace gf {

// Brush-style mask augmentation parameters, in pixels at the caller's
// scale. The engine scales its 512-reference defaults by min(W,H)/512
// before calling.
struct BrushParams {
  double dilateRadiusMin = 4.0;
  double dilateRadiusMax = 16.0;
  int strokeCountMin = 1;
  int strokeCountMax = 3;
  double strokeWidthMin = 4.0;
  double strokeWidthMax = 20.0;
  int pointsPerStroke = 4;
};

struct BrushStroke {
  double width = 0.0;
  std::vector<std::pair<int, int>> points;  // control-point pixel coords
};

// Every draw behind one brush_augment call, in draw order:
// dilate radius, stroke count, then per stroke (width, control points).
struct BrushRecord {
  double dilateRadius = 0.0;
  std::vector<BrushStroke> strokes;
};

// Squared Euclidean distance (between pixel centers) to the nearest set
// pixel, exact, via the separable lower-envelope transform. Values for set
// pixels are 0; masks with no set pixel get a large finite sentinel.
std::vector<double> distance_sq_transform(const MaskGrid& mask);

// Grows the mask into a brush-like region: a seeded Euclidean dilation plus
// seeded polyline strokes whose control points lie inside the dilated mask.
// The result is a superset of the input and every added pixel lies within
// dilateRadiusMax + strokeWidthMax of the input (strokes are clipped to
// that halo). Pure function of (mask, seed, params). Throws EmptyMask.
MaskGrid brush_augment(const MaskGrid& mask, SeedSpec seed, const BrushParams& params);
MaskGrid brush_augment(const MaskGrid& mask, SeedSpec seed, const BrushParams& params,
                       BrushRecord& record);

}  // namespace gf
