// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include "groupforge/attn/attention.hpp"
#include "groupforge/core/error.hpp"

namespace gf {

FeatureGrid encode_reference_stub(const Image& image, SeedSpec seed,
                                  const AttentionConfig& config) {
  if (image.width <= 0 || image.height <= 0 || image.rgb.empty())
    raise(Errc::EmptyImage, "reference image is empty");

  const auto t = static_cast<size_t>(config.tokensPerRef);
  const auto c = static_cast<size_t>(config.channels);
  const int grid = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(t))));
  const double phase =
      static_cast<double>(seed.mixed() % 4096u) * (2.0 * std::numbers::pi / 4096.0);

  FeatureGrid out;
  out.tokens = Mat(t, c);
  for (size_t tok = 0; tok < t; ++tok) {
    const int gx = static_cast<int>(tok) % grid;
    const int gy = static_cast<int>(tok) / grid;
    int x0 = image.width * gx / grid;
    int x1 = std::max(x0 + 1, image.width * (gx + 1) / grid);
    int y0 = image.height * gy / grid;
    int y1 = std::max(y0 + 1, image.height * (gy + 1) / grid);
    x0 = std::min(x0, image.width - 1);
    x1 = std::min(x1, image.width);
    y0 = std::min(y0, image.height - 1);
    y1 = std::min(y1, image.height);

    double r = 0.0, g = 0.0, b = 0.0;
    for (int y = y0; y < y1; ++y)
      for (int x = x0; x < x1; ++x) {
        const uint8_t* p = image.px(x, y);
        r += p[0];
        g += p[1];
        b += p[2];
      }
    const double area = static_cast<double>(x1 - x0) * (y1 - y0) * 255.0;
    r /= area;
    g /= area;
    b /= area;
    const double u = (gx + 0.5) / grid;
    const double v = (gy + 0.5) / grid;

    double* row = out.tokens.row(tok);
    for (size_t ch = 0; ch < c; ++ch) {
      const double freq = 0.5 + 0.135 * static_cast<double>(ch);
      if (ch % 2 == 0)
        row[ch] = std::sin(freq * (0.9 * r + 0.7 * g + 0.5 * b) + 1.7 * u + 2.3 * v +
                           0.222 * static_cast<double>(ch) + phase);
      else
        row[ch] = std::cos(freq * (r - g + 0.6 * b) + 2.9 * u + 1.3 * v +
                           0.111 * static_cast<double>(ch) + phase);
    }
  }
  return out;
}

PoseFeature encode_pose_stub(const Skeleton& s, int width, int height,
                             const AttentionConfig& config) {
  const auto t = static_cast<size_t>(config.tokensPerRef);
  const auto cp = static_cast<size_t>(config.poseChannels);
  const double wNorm = width > 0 ? static_cast<double>(width) : 1.0;
  const double hNorm = height > 0 ? static_cast<double>(height) : 1.0;

  PoseFeature out;
  out.tokens = Mat(t, cp);
  for (size_t tok = 0; tok < t; ++tok) {
    double* row = out.tokens.row(tok);
    for (size_t ch = 0; ch < cp; ++ch) {
      const auto k = static_cast<int>(ch % static_cast<size_t>(kJointCount));
      const Keypoint& kp = s.joints[static_cast<size_t>(k)];
      const double xn = kp.x / wNorm;
      const double yn = kp.y / hNorm;
      const double freq = 1.3 * (1.0 + static_cast<double>(ch / 17));
      row[ch] = std::sin(freq * xn + 0.37 * static_cast<double>(tok) +
                         0.11 * static_cast<double>(ch)) +
                std::cos(2.0 * freq * yn + 0.05 * static_cast<double>(tok)) +
                0.25 * kp.confidence;
    }
  }
  return out;
}

}  // namespace gf
