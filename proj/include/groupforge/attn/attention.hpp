// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "groupforge/attn/types.hpp"
#include "groupforge/core/image.hpp"
#include "groupforge/core/mask.hpp"
#include "groupforge/core/skeleton.hpp"

namespace gf {

// Deterministic stand-in for the reference-image encoder: pools the image
// onto a token grid and expands each cell's mean color and position with a
// fixed sinusoidal basis into T x C features. Identical (image, seed) give
// identical features. Throws EmptyImage.
FeatureGrid encode_reference_stub(const Image& image, SeedSpec seed,
                                  const AttentionConfig& config);

// Deterministic stand-in for the pose encoder: sinusoidal embeddings of
// canvas-normalized keypoint coordinates broadcast over tokens, T x Cp.
PoseFeature encode_pose_stub(const Skeleton& s, int width, int height,
                             const AttentionConfig& config);

// Per reference: tokenwise fusion of image and pose features through the
// affine map, then the key projection; blocks stacked in reference order
// into a (T*N) x d key matrix. Throws ShapeMismatch.
Mat fuse_intra_person_keys(std::span<const FeatureGrid> feats, std::span<const PoseFeature> poses,
                           const FusionWeights& weights, const AttentionConfig& config);

// Value projection of the stacked image features, (T*N) x d. Values carry
// no pose information.
Mat project_values(std::span<const FeatureGrid> feats, const FusionWeights& weights,
                   const AttentionConfig& config);

// M_ind[i, n*T + t] = mask_n[i] for masks already at the query resolution.
IndicatorMatrix build_indicator_matrix(std::span<const MaskGrid> masks,
                                       const AttentionConfig& config);

// Area-fraction downsampling with threshold 0.5 (>= 0.5 maps to 1) for
// indicator masks arriving at image resolution.
MaskGrid downsample_mask_area(const MaskGrid& mask, int outWidth, int outHeight);

// Indicator bias scale w' = w * ln(1 + sigma) * mattnMax. Throws NonFinite.
double reweight_scale(const ReweightParams& params, double mattnMax);

// Numerically stable in-place softmax of one logit row; the stage the
// attention kernels share. Throws NonFinite on a degenerate normalizer.
void row_softmax_inplace(std::span<double> logits);

// Person-aware cross-attention:
//   M_attn = Q K^T
//   w'     = w * ln(1+sigma) * max(M_attn)   (global, or per row when configured)
//   O      = rowSoftmax((M_attn + w' * M_ind) / sqrt(d)) V
// Summation order inside each row is fixed, so results do not depend on any
// internal scheduling. Throws ShapeMismatch / NonFinite.
Mat compute_attention(const QueryGrid& queries, const Mat& keys, const Mat& values,
                      const IndicatorMatrix& indicator, const ReweightParams& params);

// Plain cross-attention O = rowSoftmax(Q K^T / sqrt(d)) V; the w'=0,
// no-indicator case of the kernel above, sharing its arithmetic path.
Mat attention_baseline(const Mat& queries, const Mat& keys, const Mat& values);

// The softmax rows themselves, rowSoftmax((Q K^T + w' M_ind) / sqrt(d)),
// (HW) x (T*N). Pass a null indicator for the baseline weights. Diagnostic
// surface behind the demo's per-reference mass report and the reweight
// monotonicity checks.
Mat attention_probabilities(const QueryGrid& queries, const Mat& keys,
                            const IndicatorMatrix* indicator, const ReweightParams& params);

}  // namespace gf
