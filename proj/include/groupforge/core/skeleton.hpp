// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>
#include <string_view>

namespace gf {

// COCO 17-keypoint order.
enum class Joint : int {
  Nose = 0,
  LeftEye,
  RightEye,
  LeftEar,
  RightEar,
  LeftShoulder,
  RightShoulder,
  LeftElbow,
  RightElbow,
  LeftWrist,
  RightWrist,
  LeftHip,
  RightHip,
  LeftKnee,
  RightKnee,
  LeftAnkle,
  RightAnkle,
};

inline constexpr int kJointCount = 17;

std::string_view joint_name(Joint j);

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  double confidence = 0.0;  // in [0,1]; 0 means missing

  bool present() const { return confidence > 0.0; }

  bool operator==(const Keypoint&) const = default;
};

// (parent, child) joint pair drawn as one limb.
struct Limb {
  Joint parent;
  Joint child;
};

// Fixed 16-edge acyclic topology over the 17 joints (a spanning tree rooted
// at the nose). Arm chains are shoulder -> elbow -> wrist on each side.
std::span<const Limb> limb_topology();

// Joints downstream of `pivot` within its limb chain (arms and legs only;
// e.g. shoulder -> {elbow, wrist}, elbow -> {wrist}). Empty for joints that
// do not head a chain segment.
std::span<const Joint> chain_after(Joint pivot);

struct Skeleton {
  std::array<Keypoint, kJointCount> joints{};

  const Keypoint& at(Joint j) const { return joints[static_cast<int>(j)]; }
  Keypoint& at(Joint j) { return joints[static_cast<int>(j)]; }
  bool present(Joint j) const { return at(j).present(); }

  bool operator==(const Skeleton&) const = default;
};

}  // namespace gf
