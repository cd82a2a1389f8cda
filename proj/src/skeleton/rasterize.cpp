// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/skeleton/rasterize.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gf {

namespace {

// One color per topology edge, OpenPose-style hue wheel.
constexpr std::array<Rgb, 16> kLimbColors = {{
    {255, 0, 85},    // nose - left eye
    {255, 0, 170},   // nose - right eye
    {255, 0, 255},   // left eye - left ear
    {170, 0, 255},   // right eye - right ear
    {255, 85, 0},    // nose - left shoulder
    {255, 170, 0},   // shoulder bar
    {255, 255, 0},   // left upper arm
    {170, 255, 0},   // left forearm
    {85, 255, 0},    // right upper arm
    {0, 255, 0},     // right forearm
    {0, 255, 85},    // left torso side
    {0, 255, 170},   // right torso side
    {0, 255, 255},   // left thigh
    {0, 170, 255},   // left shin
    {0, 85, 255},    // right thigh
    {0, 0, 255},     // right shin
}};

double dist_sq_to_segment(double px, double py, double ax, double ay, double bx, double by) {
  const double abx = bx - ax;
  const double aby = by - ay;
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((px - ax) * abx + (py - ay) * aby) / len2, 0.0, 1.0);
  const double dx = px - (ax + t * abx);
  const double dy = py - (ay + t * aby);
  return dx * dx + dy * dy;
}

void fill_capsule(Image& img, double ax, double ay, double bx, double by, double radius, Rgb color) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - radius)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(ax, bx) + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - radius)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(ay, by) + radius)));
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (dist_sq_to_segment(x + 0.5, y + 0.5, ax, ay, bx, by) <= r2) img.set(x, y, color);
}

void draw_skeleton_into(Image& img, const Skeleton& s, const SkeletonStyle& style) {
  const double scale = std::min(img.width, img.height) / 512.0;
  const double radius = std::max(0.5, style.lineWidth * scale / 2.0);
  const auto limbs = limb_topology();
  const auto colors = style.limbColors();
  for (size_t i = 0; i < limbs.size(); ++i) {
    const Limb& limb = limbs[i];
    if (!s.present(limb.parent) || !s.present(limb.child)) continue;
    const Keypoint& a = s.at(limb.parent);
    const Keypoint& b = s.at(limb.child);
    fill_capsule(img, a.x, a.y, b.x, b.y, radius, colors[i % colors.size()]);
  }
  // Joint discs in the color of the limb that ends at the joint; the nose
  // (the topology root) reuses the first limb color.
  const double jointRadius = radius * style.jointRadiusFactor;
  for (size_t i = 0; i < limbs.size(); ++i) {
    const Joint child = limbs[i].child;
    if (!s.present(child)) continue;
    const Keypoint& kp = s.at(child);
    fill_capsule(img, kp.x, kp.y, kp.x, kp.y, jointRadius, colors[i % colors.size()]);
  }
  if (s.present(Joint::Nose)) {
    const Keypoint& kp = s.at(Joint::Nose);
    fill_capsule(img, kp.x, kp.y, kp.x, kp.y, jointRadius, colors[0]);
  }
}

}  // namespace

std::span<const Rgb> SkeletonStyle::limbColors() const { return kLimbColors; }

Image rasterize_skeleton(const Skeleton& s, int width, int height, const SkeletonStyle& style) {
  Image img(width, height);
  draw_skeleton_into(img, s, style);
  return img;
}

Image rasterize_skeletons(std::span<const Skeleton> skeletons, int width, int height,
                          const SkeletonStyle& style) {
  Image img(width, height);
  for (const Skeleton& s : skeletons) draw_skeleton_into(img, s, style);
  return img;
}

}  // namespace gf
