// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/mask/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "groupforge/core/error.hpp"

namespace gf {

const char* mask_strategy_name(MaskStrategy s) {
  switch (s) {
    case MaskStrategy::Coarse: return "coarse";
    case MaskStrategy::Fine: return "fine";
    case MaskStrategy::Body: return "body";
  }
  return "unknown";
}

void EngineConfig::validate() const {
  const double psum = probCoarse + probFine + probBody;
  if (probCoarse < 0 || probFine < 0 || probBody < 0 || std::abs(psum - 1.0) > 1e-9)
    throw std::invalid_argument("strategy probabilities must be nonnegative and sum to 1");
  if (!(coarseRMin > 0.0 && coarseRMin <= coarseRMax && coarseRMax < 0.5))
    throw std::invalid_argument("coarse r range must lie in (0, 0.5)");
  if (!(bodyRMin >= 0.5 && bodyRMin <= bodyRMax && bodyRMax <= 0.9))
    throw std::invalid_argument("body r range must lie in [0.5, 0.9]");
  if (columnExtensionProb < 0.0 || columnExtensionProb > 1.0)
    throw std::invalid_argument("columnExtensionProb must lie in [0, 1]");
  if (maxPersonsPerMask < 1) throw std::invalid_argument("maxPersonsPerMask must be >= 1");
  if (maxRetries < 1) throw std::invalid_argument("maxRetries must be >= 1");
  if (padFactor < 0.0 || handRadiusFactor < 0.0)
    throw std::invalid_argument("pad factors must be nonnegative");
}

namespace {

bool recoverable(Errc c) {
  return c == Errc::EmptyIntersection || c == Errc::EmptyMask || c == Errc::NoRotatableLimb ||
         c == Errc::MissingJoint;
}

double reference_scale(int width, int height) { return std::min(width, height) / 512.0; }

BrushParams scaled_brush(const BrushParams& p, double scale) {
  BrushParams out = p;
  out.dilateRadiusMin = p.dilateRadiusMin * scale;
  out.dilateRadiusMax = p.dilateRadiusMax * scale;
  out.strokeWidthMin = p.strokeWidthMin * scale;
  out.strokeWidthMax = p.strokeWidthMax * scale;
  return out;
}

// Limbs to mask for one rotated limb: the rotated segment plus everything
// downstream of it, since rotating a pivot moves the whole rest of the arm.
void append_masked_limbs(std::vector<LimbSelector>& out, const LimbSelector& rotated) {
  auto push = [&out](LimbSelector l) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  push(rotated);
  if (rotated.segment == LimbSegment::UpperArm) push({rotated.side, LimbSegment::Forearm});
  if (rotated.segment != LimbSegment::Hand) push({rotated.side, LimbSegment::Hand});
}

MaskSpec build_once(const GroupAnnotation& ann, uint64_t attemptSeed, int attempt,
                    const EngineConfig& config) {
  Rng rng(attemptSeed);
  MaskSpec spec;
  spec.sampleSeed = attemptSeed;
  spec.attempt = attempt;

  const int personCount = static_cast<int>(ann.persons.size());

  const double u = rng.next_double();
  if (u < config.probCoarse)
    spec.strategy = MaskStrategy::Coarse;
  else if (u < config.probCoarse + config.probFine)
    spec.strategy = MaskStrategy::Fine;
  else
    spec.strategy = MaskStrategy::Body;

  switch (spec.strategy) {
    case MaskStrategy::Coarse: {
      const int kMax = std::min(config.maxPersonsPerMask, personCount);
      const int k = kMax > 1 ? 1 + static_cast<int>(rng.below(static_cast<uint64_t>(kMax))) : 1;
      std::vector<int> order(static_cast<size_t>(personCount));
      for (int i = 0; i < personCount; ++i) order[static_cast<size_t>(i)] = i;
      MaskGrid grid(ann.width, ann.height);
      size_t painted = 0;
      for (int j = 0; j < k; ++j) {
        const size_t pick = j + rng.below(order.size() - j);
        std::swap(order[static_cast<size_t>(j)], order[pick]);
        const auto& person = ann.persons[static_cast<size_t>(order[static_cast<size_t>(j)])];

        CoarseDraw draw;
        draw.personId = person.id;
        draw.side = static_cast<MaskSide>(rng.below(3));
        draw.r = rng.uniform(config.coarseRMin, config.coarseRMax);
        draw.columnExtension = rng.bernoulli(config.columnExtensionProb);
        spec.coarseDraws.push_back(draw);
        spec.targetPersonIds.push_back(person.id);

        const BBox& b = person.bbox;
        const double w = b.width();
        const double top = draw.columnExtension ? 0.0 : b.y1;
        const double bottom = draw.columnExtension ? static_cast<double>(ann.height) : b.y2;
        if (draw.side == MaskSide::Left || draw.side == MaskSide::Both)
          painted += rect_paint(grid, {b.x1 - draw.r * w, top, b.x1 + draw.r * w, bottom});
        if (draw.side == MaskSide::Right || draw.side == MaskSide::Both)
          painted += rect_paint(grid, {b.x2 - draw.r * w, top, b.x2 + draw.r * w, bottom});
      }
      if (painted == 0) raise(Errc::EmptyIntersection, "coarse bands lie outside the canvas");
      spec.recipeMask = std::move(grid);
      break;
    }
    case MaskStrategy::Fine: {
      const int pick = static_cast<int>(rng.below(static_cast<uint64_t>(personCount)));
      const auto& person = ann.persons[static_cast<size_t>(pick)];
      spec.targetPersonIds.push_back(person.id);

      auto [augmented, record] = augment_skeleton(
          person.skeleton, SeedSpec{attemptSeed, kAugmentStream}, config.augment);
      spec.augmentDraws = record;
      spec.augmentedSkeleton = augmented;
      for (const LimbRotation& rot : record.rotations)
        append_masked_limbs(spec.maskedLimbs, rot.limb);

      spec.recipeMask =
          fine_interaction_mask(person.skeleton, augmented, spec.maskedLimbs, config.padFactor,
                                ann.width, ann.height, config.handRadiusFactor);
      if (spec.recipeMask.empty())
        raise(Errc::EmptyMask, "fine limb boxes lie outside the canvas");
      break;
    }
    case MaskStrategy::Body: {
      const int pick = static_cast<int>(rng.below(static_cast<uint64_t>(personCount)));
      const auto& person = ann.persons[static_cast<size_t>(pick)];
      spec.targetPersonIds.push_back(person.id);
      spec.bodyR = rng.uniform(config.bodyRMin, config.bodyRMax);
      spec.recipeMask = body_completion_mask(person.bbox, spec.bodyR, ann.width, ann.height);
      break;
    }
  }

  const bool brush =
      config.brushEnabled && (spec.strategy != MaskStrategy::Fine || config.brushFineMasks);
  if (brush) {
    const BrushParams scaled = scaled_brush(config.brush, reference_scale(ann.width, ann.height));
    spec.preFaceMask =
        brush_augment(spec.recipeMask, SeedSpec{attemptSeed, kBrushStream}, scaled, spec.brushDraws);
    spec.brushApplied = true;
  } else {
    spec.preFaceMask = spec.recipeMask;
  }

  std::vector<const ParsingMap*> parsings;
  parsings.reserve(ann.persons.size());
  for (const auto& person : ann.persons)
    if (person.parsing) parsings.push_back(person.parsing.get());
  spec.mask = unmask_faces(spec.preFaceMask, parsings);

  if (spec.mask.empty()) raise(Errc::EmptyMask, "face unmasking cleared the whole mask");
  return spec;
}

}  // namespace

MaskSpec sample_training_mask(const GroupAnnotation& ann, SeedSpec seed,
                              const EngineConfig& config) {
  config.validate();
  if (ann.persons.empty())
    raise(Errc::SchemaError, "annotation has no persons: " + ann.imagePath);
  if (ann.width <= 0 || ann.height <= 0)
    raise(Errc::SchemaError, "annotation has an empty canvas: " + ann.imagePath);

  const uint64_t sampleSeed = seed.mixed();
  std::string lastError;
  for (int attempt = 0; attempt < config.maxRetries; ++attempt) {
    try {
      return build_once(ann, derive_seed(sampleSeed, static_cast<uint64_t>(attempt)), attempt,
                        config);
    } catch (const Error& e) {
      if (!recoverable(e.code())) throw;
      lastError = e.what();
    }
  }
  raise(Errc::GenerationExhausted,
        "no valid mask after " + std::to_string(config.maxRetries) + " attempts (last: " +
            lastError + ")");
}

}  // namespace gf
