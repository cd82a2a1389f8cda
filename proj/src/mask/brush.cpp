// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/mask/brush.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "groupforge/core/error.hpp"

namespace gf {

namespace {

constexpr double kFar = 1e18;

// 1D squared-distance transform (Felzenszwalb & Huttenlocher lower
// envelope). d[i] = min_j ((i-j)^2 + f[j]).
void dt_1d(const double* f, double* d, int* v, double* z, int n) {
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

void paint_capsule_clipped(MaskGrid& grid, double ax, double ay, double bx, double by,
                           double radius, const std::vector<double>& distSq, double haloSq) {
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - radius)));
  const int x1 = std::min(grid.width - 1, static_cast<int>(std::ceil(std::max(ax, bx) + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - radius)));
  const int y1 = std::min(grid.height - 1, static_cast<int>(std::ceil(std::max(ay, by) + radius)));
  const double abx = bx - ax;
  const double aby = by - ay;
  const double len2 = abx * abx + aby * aby;
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      double t = 0.0;
      if (len2 > 0.0) t = std::clamp(((px - ax) * abx + (py - ay) * aby) / len2, 0.0, 1.0);
      const double dx = px - (ax + t * abx);
      const double dy = py - (ay + t * aby);
      if (dx * dx + dy * dy > r2) continue;
      const size_t idx = static_cast<size_t>(y) * grid.width + x;
      if (distSq[idx] <= haloSq) grid.bits[idx] = 1;
    }
  }
}

}  // namespace

std::vector<double> distance_sq_transform(const MaskGrid& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<double> dist(static_cast<size_t>(w) * h);
  for (size_t i = 0; i < dist.size(); ++i) dist[i] = mask.bits[i] ? 0.0 : kFar;

  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);

  // columns, then rows
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = dist[static_cast<size_t>(y) * w + x];
    dt_1d(f.data(), d.data(), v.data(), z.data(), h);
    for (int y = 0; y < h; ++y) dist[static_cast<size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    double* row = dist.data() + static_cast<size_t>(y) * w;
    std::copy(row, row + w, f.data());
    dt_1d(f.data(), d.data(), v.data(), z.data(), w);
    std::copy(d.data(), d.data() + w, row);
  }
  return dist;
}

MaskGrid brush_augment(const MaskGrid& mask, SeedSpec seed, const BrushParams& params) {
  BrushRecord record;
  return brush_augment(mask, seed, params, record);
}

MaskGrid brush_augment(const MaskGrid& mask, SeedSpec seed, const BrushParams& params,
                       BrushRecord& record) {
  if (params.dilateRadiusMin < 0.0 || params.dilateRadiusMin > params.dilateRadiusMax ||
      params.strokeCountMin < 0 || params.strokeCountMin > params.strokeCountMax ||
      params.strokeWidthMin < 0.0 || params.strokeWidthMin > params.strokeWidthMax ||
      params.pointsPerStroke < 2)
    throw std::invalid_argument("brush_augment: malformed params");
  if (mask.empty()) raise(Errc::EmptyMask, "brush_augment needs a non-empty mask");

  Rng rng(seed);
  record.dilateRadius = rng.uniform(params.dilateRadiusMin, params.dilateRadiusMax);
  const int strokeCount = rng.uniform_int(params.strokeCountMin, params.strokeCountMax);

  const std::vector<double> distSq = distance_sq_transform(mask);

  MaskGrid out(mask.width, mask.height);
  const double r2 = record.dilateRadius * record.dilateRadius;
  for (size_t i = 0; i < distSq.size(); ++i) out.bits[i] = distSq[i] <= r2 ? 1 : 0;

  if (strokeCount > 0) {
    // Stroke control points are sampled from the dilated mask; drawn pixels
    // are clipped to the halo so the declared distance bound holds even for
    // strokes that bridge concavities or disjoint components.
    std::vector<std::pair<int, int>> setPixels;
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        if (out.at(x, y)) setPixels.emplace_back(x, y);

    const double haloRadius = params.dilateRadiusMax + params.strokeWidthMax;
    const double haloSq = haloRadius * haloRadius;
    record.strokes.reserve(static_cast<size_t>(strokeCount));
    for (int sIdx = 0; sIdx < strokeCount; ++sIdx) {
      BrushStroke stroke;
      stroke.width = rng.uniform(params.strokeWidthMin, params.strokeWidthMax);
      stroke.points.reserve(static_cast<size_t>(params.pointsPerStroke));
      for (int p = 0; p < params.pointsPerStroke; ++p)
        stroke.points.push_back(setPixels[rng.below(setPixels.size())]);
      for (int p = 0; p + 1 < params.pointsPerStroke; ++p) {
        const auto [ax, ay] = stroke.points[p];
        const auto [bx, by] = stroke.points[p + 1];
        paint_capsule_clipped(out, ax + 0.5, ay + 0.5, bx + 0.5, by + 0.5, stroke.width / 2.0,
                              distSq, haloSq);
      }
      record.strokes.push_back(std::move(stroke));
    }
  }
  return out;
}

}  // namespace gf
