// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "groupforge/core/geometry.hpp"
#include "groupforge/core/seed.hpp"
#include "groupforge/core/skeleton.hpp"

namespace gf {

enum class Side { Left, Right };
enum class LimbSegment { UpperArm, Forearm, Hand };

// One rotatable/maskable limb. Hand has no keypoints of its own; it is a
// disc around the wrist sized from the forearm.
struct LimbSelector {
  Side side = Side::Left;
  LimbSegment segment = LimbSegment::Forearm;

  bool operator==(const LimbSelector&) const = default;
};

std::string limb_selector_name(const LimbSelector& limb);

struct AugmentPolicy {
  std::vector<LimbSelector> candidateLimbs;  // defaults to all six arm/hand selectors
  double angleMinDeg = 15.0;                 // rotation magnitude range
  double angleMaxDeg = 75.0;
  int limbCount = 1;  // limbs rotated per sample (clamped to available candidates)

  static AugmentPolicy defaults();
};

struct LimbRotation {
  LimbSelector limb;
  double angleDeg = 0.0;  // signed, as applied
};

struct AugmentRecord {
  std::vector<LimbRotation> rotations;
};

// Rotates every joint downstream of `pivot` in its limb chain about the
// pivot by angleDeg (image coordinates, y-down, so positive angles appear
// clockwise). Distances to the pivot are preserved. Throws MissingJoint when
// the pivot or a downstream joint is missing.
Skeleton rotate_limb(const Skeleton& s, Joint pivot, double angleDeg);

// True when every joint the selector needs is present.
bool limb_available(const Skeleton& s, const LimbSelector& limb);

// Seeded rotation augmentation: draws limb(s), magnitude and sign, applies
// the rotations, and returns the full draw record. Pure function of the
// seed. Throws NoRotatableLimb when no candidate limb has all joints.
std::pair<Skeleton, AugmentRecord> augment_skeleton(const Skeleton& s, SeedSpec seed,
                                                    const AugmentPolicy& policy);

inline constexpr double kDefaultPadFactor = 0.25;
inline constexpr double kDefaultHandRadiusFactor = 0.4;

// Box around one limb. Arm segments: the axis-aligned box of the two
// endpoint keypoints grown on all sides by padFactor * segment length.
// Hand: a square of half-width handRadiusFactor * forearm length centered
// at the wrist. Throws MissingJoint.
BBox limb_region(const Skeleton& s, const LimbSelector& limb, double padFactor,
                 double handRadiusFactor = kDefaultHandRadiusFactor);

}  // namespace gf
