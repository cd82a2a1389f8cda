// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "groupforge/core/seed.hpp"

namespace gf {

// Dense row-major f64 matrix. The attention kernel works in double so the
// tight equality invariants (1e-9 block-permutation and shift tolerances)
// hold with margin; the on-disk tensor format stays f32.
struct Mat {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* row(size_t i) { return data.data() + i * cols; }
  const double* row(size_t i) const { return data.data() + i * cols; }
  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }

  bool finite() const;

  bool operator==(const Mat&) const = default;
};

// T x C token features of one reference image.
struct FeatureGrid {
  Mat tokens;
};

// T x Cp pose features of one reference.
struct PoseFeature {
  Mat tokens;
};

// (H*W) x d query features from the preceding self-attention layer.
struct QueryGrid {
  Mat rows;
  int h = 0;
  int w = 0;
};

// (H*W) x (T*N) binary location indicator; column block n repeats reference
// n's flattened mask across that block's T columns.
struct IndicatorMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint8_t> entries;

  const uint8_t* row(size_t i) const { return entries.data() + i * cols; }
};

struct AttentionConfig {
  int tokensPerRef = 256;  // T
  int channels = 768;      // C
  int poseChannels = 64;   // Cp
  int keyDim = 64;         // d
  int numRefs = 1;         // N

  static AttentionConfig tiny() { return {4, 6, 3, 5, 2}; }
};

struct ReweightParams {
  double w = 0.0;       // user-specified factor, >= 0
  double sigma = 0.0;   // diffusion noise level, >= 0
  size_t keyDim = 1;    // d used in the 1/sqrt(d) logit scale
  bool perRowMax = false;  // per-row max(M_attn) instead of the global max
};

// Tokenwise affine key fusion (image||pose -> d), key projection, and the
// pose-free value projection. Explicit inputs, loadable from the tensor
// container format.
struct FusionWeights {
  Mat mlpWeight;                 // d x (C+Cp)
  std::vector<double> mlpBias;   // d
  Mat keyWeight;                 // d x d
  std::vector<double> keyBias;   // d
  Mat valueWeight;               // d x C
  std::vector<double> valueBias; // d
  bool relu = false;             // optional nonlinearity after the fusion map

  // Identity presets need keyDim == channels: the fusion map passes image
  // features through and suppresses pose features; projections are identity.
  static FusionWeights identity(const AttentionConfig& config);
  static FusionWeights random(SeedSpec seed, const AttentionConfig& config);

  void validate(const AttentionConfig& config) const;  // throws ShapeMismatch
};

}  // namespace gf
