// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/skeleton/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groupforge/core/error.hpp"

namespace gf {

namespace {

Joint shoulder_of(Side s) { return s == Side::Left ? Joint::LeftShoulder : Joint::RightShoulder; }
Joint elbow_of(Side s) { return s == Side::Left ? Joint::LeftElbow : Joint::RightElbow; }
Joint wrist_of(Side s) { return s == Side::Left ? Joint::LeftWrist : Joint::RightWrist; }

// Pivot joint whose chain rotation realizes this limb's augmentation. The
// hand pivots about the wrist, which moves no keypoints (COCO has none
// below the wrist); the wrist disc mask still captures the hand region.
Joint pivot_of(const LimbSelector& limb) {
  switch (limb.segment) {
    case LimbSegment::UpperArm: return shoulder_of(limb.side);
    case LimbSegment::Forearm: return elbow_of(limb.side);
    case LimbSegment::Hand: return wrist_of(limb.side);
  }
  return Joint::Nose;
}

}  // namespace

std::string limb_selector_name(const LimbSelector& limb) {
  std::string name = limb.side == Side::Left ? "left_" : "right_";
  switch (limb.segment) {
    case LimbSegment::UpperArm: name += "upper_arm"; break;
    case LimbSegment::Forearm: name += "forearm"; break;
    case LimbSegment::Hand: name += "hand"; break;
  }
  return name;
}

AugmentPolicy AugmentPolicy::defaults() {
  AugmentPolicy p;
  for (Side side : {Side::Left, Side::Right})
    for (LimbSegment seg : {LimbSegment::UpperArm, LimbSegment::Forearm, LimbSegment::Hand})
      p.candidateLimbs.push_back({side, seg});
  return p;
}

Skeleton rotate_limb(const Skeleton& s, Joint pivot, double angleDeg) {
  if (!s.present(pivot)) raise(Errc::MissingJoint, std::string(joint_name(pivot)));
  const auto chain = chain_after(pivot);
  for (Joint j : chain)
    if (!s.present(j)) raise(Errc::MissingJoint, std::string(joint_name(j)));

  Skeleton out = s;
  const double rad = angleDeg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double sn = std::sin(rad);
  const Keypoint& p = s.at(pivot);
  for (Joint j : chain) {
    const double dx = s.at(j).x - p.x;
    const double dy = s.at(j).y - p.y;
    out.at(j).x = p.x + c * dx - sn * dy;
    out.at(j).y = p.y + sn * dx + c * dy;
  }
  return out;
}

bool limb_available(const Skeleton& s, const LimbSelector& limb) {
  switch (limb.segment) {
    case LimbSegment::UpperArm:
      return s.present(shoulder_of(limb.side)) && s.present(elbow_of(limb.side)) &&
             s.present(wrist_of(limb.side));
    case LimbSegment::Forearm:
    case LimbSegment::Hand:
      return s.present(elbow_of(limb.side)) && s.present(wrist_of(limb.side));
  }
  return false;
}

std::pair<Skeleton, AugmentRecord> augment_skeleton(const Skeleton& s, SeedSpec seed,
                                                    const AugmentPolicy& policy) {
  if (policy.candidateLimbs.empty() || policy.limbCount < 1 || policy.angleMinDeg < 0.0 ||
      policy.angleMinDeg > policy.angleMaxDeg || policy.angleMaxDeg >= 180.0)
    throw std::invalid_argument("augment_skeleton: malformed policy");

  std::vector<LimbSelector> available;
  for (const auto& limb : policy.candidateLimbs)
    if (limb_available(s, limb)) available.push_back(limb);
  if (available.empty()) raise(Errc::NoRotatableLimb, "no candidate limb has all joints present");

  Rng rng(seed);
  const int count = std::min<int>(policy.limbCount, static_cast<int>(available.size()));

  // Partial Fisher-Yates: draw `count` distinct limbs.
  Skeleton out = s;
  AugmentRecord record;
  for (int k = 0; k < count; ++k) {
    const size_t pick = k + rng.below(available.size() - k);
    std::swap(available[k], available[pick]);
    const LimbSelector limb = available[k];
    const double magnitude = rng.uniform(policy.angleMinDeg, policy.angleMaxDeg);
    const double angle = magnitude * rng.sign();
    out = rotate_limb(out, pivot_of(limb), angle);
    record.rotations.push_back({limb, angle});
  }
  return {out, record};
}

BBox limb_region(const Skeleton& s, const LimbSelector& limb, double padFactor,
                 double handRadiusFactor) {
  const Joint elbow = elbow_of(limb.side);
  const Joint wrist = wrist_of(limb.side);
  if (limb.segment == LimbSegment::Hand) {
    if (!s.present(elbow)) raise(Errc::MissingJoint, std::string(joint_name(elbow)));
    if (!s.present(wrist)) raise(Errc::MissingJoint, std::string(joint_name(wrist)));
    const Keypoint& e = s.at(elbow);
    const Keypoint& w = s.at(wrist);
    const double forearm = std::hypot(w.x - e.x, w.y - e.y);
    const double half = handRadiusFactor * forearm;
    return {w.x - half, w.y - half, w.x + half, w.y + half};
  }

  const Joint a = limb.segment == LimbSegment::UpperArm ? shoulder_of(limb.side) : elbow;
  const Joint b = limb.segment == LimbSegment::UpperArm ? elbow : wrist;
  if (!s.present(a)) raise(Errc::MissingJoint, std::string(joint_name(a)));
  if (!s.present(b)) raise(Errc::MissingJoint, std::string(joint_name(b)));
  const Keypoint& pa = s.at(a);
  const Keypoint& pb = s.at(b);
  const double pad = padFactor * std::hypot(pb.x - pa.x, pb.y - pa.y);
  return {std::min(pa.x, pb.x) - pad, std::min(pa.y, pb.y) - pad, std::max(pa.x, pb.x) + pad,
          std::max(pa.y, pb.y) + pad};
}

}  // namespace gf
