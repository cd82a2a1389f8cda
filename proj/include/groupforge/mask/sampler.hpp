// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "groupforge/core/annotation.hpp"
#include "groupforge/core/mask.hpp"
#include "groupforge/core/seed.hpp"
#include "groupforge/mask/brush.hpp"
#include "groupforge/mask/recipes.hpp"
#include "groupforge/skeleton/augment.hpp"

namespace gf {

enum class MaskStrategy { Coarse, Fine, Body };

const char* mask_strategy_name(MaskStrategy s);

// Engine defaults. Brush and line-width values are given at the 512-pixel
// reference scale and scaled by min(W,H)/512 per image.
struct EngineConfig {
  double probCoarse = 0.4;
  double probFine = 0.4;
  double probBody = 0.2;

  double coarseRMin = 0.1;
  double coarseRMax = 0.2;
  double bodyRMin = 0.5;
  double bodyRMax = 0.9;
  double columnExtensionProb = 0.3;
  int maxPersonsPerMask = 2;  // coarse strategy picks 1..min(this, persons)

  BrushParams brush;
  bool brushEnabled = true;
  bool brushFineMasks = true;

  double padFactor = kDefaultPadFactor;
  double handRadiusFactor = kDefaultHandRadiusFactor;
  AugmentPolicy augment = AugmentPolicy::defaults();

  int maxRetries = 16;

  void validate() const;  // throws std::invalid_argument
};

struct CoarseDraw {
  int personId = 0;
  MaskSide side = MaskSide::Left;
  double r = 0.0;
  bool columnExtension = false;
};

// Full draw record of one sampled mask. The recorded parameters, together
// with the annotation, reproduce every stage bit-identically.
struct MaskSpec {
  MaskStrategy strategy = MaskStrategy::Coarse;
  std::vector<int> targetPersonIds;

  std::vector<CoarseDraw> coarseDraws;                // coarse strategy
  double bodyR = 0.0;                                 // body strategy
  AugmentRecord augmentDraws;                         // fine strategy
  std::optional<Skeleton> augmentedSkeleton;          // fine strategy
  std::vector<LimbSelector> maskedLimbs;              // fine strategy
  bool brushApplied = false;
  BrushRecord brushDraws;

  MaskGrid recipeMask;   // recipe output, before brush augmentation
  MaskGrid preFaceMask;  // after brush, before face unmasking
  MaskGrid mask;         // final

  uint64_t sampleSeed = 0;
  int attempt = 0;
};

// Derived-seed stream ids used by the sampler (documented for replay).
inline constexpr uint64_t kAugmentStream = 1;
inline constexpr uint64_t kBrushStream = 2;

// Draws one training mask: strategy by configured probabilities, person and
// parameter draws from the documented ranges, recipe -> brush_augment ->
// unmask_faces, every draw recorded. Recoverable recipe failures retry with
// derived sub-seeds up to config.maxRetries, then GenerationExhausted.
MaskSpec sample_training_mask(const GroupAnnotation& ann, SeedSpec seed,
                              const EngineConfig& config);

}  // namespace gf
