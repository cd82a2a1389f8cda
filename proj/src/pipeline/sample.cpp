// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/pipeline/sample.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "groupforge/core/error.hpp"
#include "groupforge/kernels/kernels.hpp"
#include "groupforge/skeleton/rasterize.hpp"

namespace gf {

ReferenceImage prepare_reference(const Image& image, const ParsingMap& parsing, int personId,
                                 const BBox& sourceBBox) {
  if (image.width != parsing.width || image.height != parsing.height)
    raise(Errc::DimensionMismatch, "parsing map does not match the image");

  ReferenceImage ref;
  ref.personId = personId;
  ref.sourceBBox = sourceBBox;
  ref.pixels = Image(image.width, image.height, {255, 255, 255});
  size_t personPixels = 0;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (parsing.at(x, y) != static_cast<uint8_t>(ParsingClass::Background)) {
        ref.pixels.set(x, y, image.get(x, y));
        ++personPixels;
      }
    }
  }
  if (personPixels == 0)
    raise(Errc::EmptyPerson, "person " + std::to_string(personId) + " has no parsing pixels");
  return ref;
}

namespace {

bool box_mask_intersects(const MaskGrid& boxMask, const MaskGrid& mask) {
  for (size_t i = 0; i < mask.bits.size(); ++i)
    if (boxMask.bits[i] && mask.bits[i]) return true;
  return false;
}

}  // namespace

TrainingSample generate_sample(const GroupAnnotation& ann, const Image& image, SeedSpec seed,
                               const PipelineConfig& config) {
  config.validate();
  if (image.width != ann.width || image.height != ann.height)
    raise(Errc::DimensionMismatch, "image does not match annotation dimensions: " + ann.imagePath);

  TrainingSample sample;
  sample.sampleId = seed.sampleIndex;
  sample.maskSpec = sample_training_mask(ann, seed, config.engine);

  std::vector<Skeleton> skeletons;
  skeletons.reserve(ann.persons.size());
  for (const auto& person : ann.persons) skeletons.push_back(person.skeleton);
  SkeletonStyle style;
  style.lineWidth = config.skeletonLineWidth;
  sample.targetSkeletonMap = rasterize_skeletons(skeletons, ann.width, ann.height, style);

  sample.mask = sample.maskSpec.mask;
  sample.maskedImage = image;
  const Rgb gray = config.gray();
  kernels::active_ops().fill_masked_rgb_u8(sample.maskedImage.rgb.data(), sample.mask.bits.data(),
                                           gray.data(), sample.mask.bits.size());

  // Reference persons: every masked (target) person, plus every person
  // whose full-body box touches the final mask; emitted in id order.
  struct Candidate {
    const GroupAnnotation::Person* person;
    MaskGrid boxMask;
  };
  std::vector<Candidate> chosen;
  for (const auto& person : ann.persons) {
    MaskGrid boxMask;
    try {
      boxMask = rect_to_mask(person.bbox, ann.width, ann.height);
    } catch (const Error& e) {
      if (e.code() == Errc::EmptyIntersection) continue;  // box too thin to locate
      throw;
    }
    const bool isTarget =
        std::find(sample.maskSpec.targetPersonIds.begin(), sample.maskSpec.targetPersonIds.end(),
                  person.id) != sample.maskSpec.targetPersonIds.end();
    const bool wanted = config.referenceSelection == ReferenceSelection::All || isTarget ||
                        box_mask_intersects(boxMask, sample.mask);
    if (wanted) chosen.push_back({&person, std::move(boxMask)});
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const Candidate& a, const Candidate& b) { return a.person->id < b.person->id; });

  for (Candidate& c : chosen) {
    if (!c.person->parsing)
      raise(Errc::EmptyPerson,
            "person " + std::to_string(c.person->id) + " has no parsing map loaded");
    sample.references.push_back(
        prepare_reference(image, *c.person->parsing, c.person->id, c.person->bbox));
    sample.indicatorMasks.push_back(std::move(c.boxMask));
  }
  return sample;
}

ConditioningStack assemble_conditioning(const TrainingSample& sample, int targetWidth,
                                        int targetHeight, Rgb gray) {
  if (targetWidth <= 0 || targetHeight <= 0)
    throw std::invalid_argument("conditioning resolution must be positive");

  ConditioningStack stack;
  stack.width = targetWidth;
  stack.height = targetHeight;
  stack.data.assign(static_cast<size_t>(ConditioningStack::kChannels) * targetWidth * targetHeight,
                    0.0f);

  Image masked = resize_bilinear(sample.maskedImage, targetWidth, targetHeight);
  const std::vector<uint8_t> mask =
      resize_nearest(sample.mask.bits, sample.mask.width, sample.mask.height, targetWidth,
                     targetHeight);
  kernels::active_ops().fill_masked_rgb_u8(masked.rgb.data(), mask.data(), gray.data(),
                                           mask.size());
  const Image skeleton = resize_bilinear(sample.targetSkeletonMap, targetWidth, targetHeight);

  const size_t plane = static_cast<size_t>(targetWidth) * targetHeight;
  float* maskedR = stack.plane(4);
  float* maskedG = stack.plane(5);
  float* maskedB = stack.plane(6);
  float* maskedLuma = stack.plane(7);
  float* maskPlane = stack.plane(8);
  float* skelR = stack.plane(9);
  float* skelG = stack.plane(10);
  float* skelB = stack.plane(11);
  for (size_t i = 0; i < plane; ++i) {
    const uint8_t* mp = &masked.rgb[3 * i];
    maskedR[i] = mp[0] / 255.0f;
    maskedG[i] = mp[1] / 255.0f;
    maskedB[i] = mp[2] / 255.0f;
    maskedLuma[i] = (static_cast<float>(mp[0]) + mp[1] + mp[2]) / (3.0f * 255.0f);
    maskPlane[i] = mask[i] ? 1.0f : 0.0f;
    const uint8_t* sp = &skeleton.rgb[3 * i];
    skelR[i] = sp[0] / 255.0f;
    skelG[i] = sp[1] / 255.0f;
    skelB[i] = sp[2] / 255.0f;
  }
  return stack;
}

}  // namespace gf
