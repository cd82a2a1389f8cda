// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/core/skeleton.hpp"

namespace gf {

std::string_view joint_name(Joint j) {
  switch (j) {
    case Joint::Nose: return "nose";
    case Joint::LeftEye: return "left_eye";
    case Joint::RightEye: return "right_eye";
    case Joint::LeftEar: return "left_ear";
    case Joint::RightEar: return "right_ear";
    case Joint::LeftShoulder: return "left_shoulder";
    case Joint::RightShoulder: return "right_shoulder";
    case Joint::LeftElbow: return "left_elbow";
    case Joint::RightElbow: return "right_elbow";
    case Joint::LeftWrist: return "left_wrist";
    case Joint::RightWrist: return "right_wrist";
    case Joint::LeftHip: return "left_hip";
    case Joint::RightHip: return "right_hip";
    case Joint::LeftKnee: return "left_knee";
    case Joint::RightKnee: return "right_knee";
    case Joint::LeftAnkle: return "left_ankle";
    case Joint::RightAnkle: return "right_ankle";
  }
  return "unknown";
}

namespace {

// Spanning tree rooted at the nose; every joint except the nose appears
// exactly once as a child.
constexpr Limb kTopology[16] = {
    {Joint::Nose, Joint::LeftEye},
    {Joint::Nose, Joint::RightEye},
    {Joint::LeftEye, Joint::LeftEar},
    {Joint::RightEye, Joint::RightEar},
    {Joint::Nose, Joint::LeftShoulder},
    {Joint::LeftShoulder, Joint::RightShoulder},
    {Joint::LeftShoulder, Joint::LeftElbow},
    {Joint::LeftElbow, Joint::LeftWrist},
    {Joint::RightShoulder, Joint::RightElbow},
    {Joint::RightElbow, Joint::RightWrist},
    {Joint::LeftShoulder, Joint::LeftHip},
    {Joint::RightShoulder, Joint::RightHip},
    {Joint::LeftHip, Joint::LeftKnee},
    {Joint::LeftKnee, Joint::LeftAnkle},
    {Joint::RightHip, Joint::RightKnee},
    {Joint::RightKnee, Joint::RightAnkle},
};

constexpr Joint kLeftArmAfterShoulder[] = {Joint::LeftElbow, Joint::LeftWrist};
constexpr Joint kLeftArmAfterElbow[] = {Joint::LeftWrist};
constexpr Joint kRightArmAfterShoulder[] = {Joint::RightElbow, Joint::RightWrist};
constexpr Joint kRightArmAfterElbow[] = {Joint::RightWrist};
constexpr Joint kLeftLegAfterHip[] = {Joint::LeftKnee, Joint::LeftAnkle};
constexpr Joint kLeftLegAfterKnee[] = {Joint::LeftAnkle};
constexpr Joint kRightLegAfterHip[] = {Joint::RightKnee, Joint::RightAnkle};
constexpr Joint kRightLegAfterKnee[] = {Joint::RightAnkle};

}  // namespace

std::span<const Limb> limb_topology() { return kTopology; }

std::span<const Joint> chain_after(Joint pivot) {
  switch (pivot) {
    case Joint::LeftShoulder: return kLeftArmAfterShoulder;
    case Joint::LeftElbow: return kLeftArmAfterElbow;
    case Joint::RightShoulder: return kRightArmAfterShoulder;
    case Joint::RightElbow: return kRightArmAfterElbow;
    case Joint::LeftHip: return kLeftLegAfterHip;
    case Joint::LeftKnee: return kLeftLegAfterKnee;
    case Joint::RightHip: return kRightLegAfterHip;
    case Joint::RightKnee: return kRightLegAfterKnee;
    default: return {};
  }
}

}  // namespace gf
