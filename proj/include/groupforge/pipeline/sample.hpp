// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "groupforge/core/annotation.hpp"
#include "groupforge/core/image.hpp"
#include "groupforge/core/mask.hpp"
#include "groupforge/mask/sampler.hpp"
#include "groupforge/pipeline/config.hpp"

namespace gf {

// One segmented person on a pure-white background.
struct ReferenceImage {
  Image pixels;
  int personId = 0;
  BBox sourceBBox;
};

// The emitted paired record. maskedImage equals the source wherever mask=0
// and the gray constant wherever mask=1; the skeleton map is rendered from
// the ORIGINAL skeletons (a fine-strategy augmented skeleton only widens
// the mask, so the ground-truth image keeps matching its own skeleton).
struct TrainingSample {
  uint64_t sampleId = 0;
  Image maskedImage;
  MaskGrid mask;
  Image targetSkeletonMap;
  std::vector<ReferenceImage> references;
  std::vector<MaskGrid> indicatorMasks;  // full-body box masks, aligned with references
  MaskSpec maskSpec;
};

// Copies the person's parsing-region pixels and sets everything else to
// pure white (255,255,255). Throws EmptyPerson when the parsing map has no
// non-background pixel.
ReferenceImage prepare_reference(const Image& image, const ParsingMap& parsing, int personId,
                                 const BBox& sourceBBox);

// Runs the mask engine, renders the skeleton map, composes the gray-filled
// masked image, and builds references (selected persons plus persons whose
// full-body box intersects the mask) with their indicator masks.
TrainingSample generate_sample(const GroupAnnotation& ann, const Image& image, SeedSpec seed,
                               const PipelineConfig& config);

// 12-channel conditioning layout at a common resolution:
//   0-3  noisy-latent placeholder slots (zero-filled)
//   4-6  masked image RGB
//   7    masked image luminance (fourth latent-width slot)
//   8    binary mask
//   9-11 skeleton map RGB
// Image channels are scaled to [0,1]; the mask is resized nearest-neighbor
// so it stays binary, and the gray fill is re-imposed after resizing.
struct ConditioningStack {
  static constexpr int kChannels = 12;
  int width = 0;
  int height = 0;
  std::vector<float> data;  // plane-major, kChannels * height * width

  float* plane(int c) { return data.data() + static_cast<size_t>(c) * width * height; }
  const float* plane(int c) const { return data.data() + static_cast<size_t>(c) * width * height; }
};

ConditioningStack assemble_conditioning(const TrainingSample& sample, int targetWidth,
                                        int targetHeight, Rgb gray = kGrayFill);

}  // namespace gf
