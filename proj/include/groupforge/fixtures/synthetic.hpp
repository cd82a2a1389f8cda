// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupforge/core/annotation.hpp"
#include "groupforge/core/image.hpp"

namespace gf {

// Synthetic group-photo dataset for tests and demos: procedurally drawn
// persons (torso, head, arms, legs) with matching bounding boxes, COCO
// skeletons, and parsing maps. Deterministic per seed.
struct FixtureOptions {
  int count = 10;
  uint64_t seed = 7;
};

struct FixtureDataset {
  std::string annotationsDir;
  std::string imagesDir;
  std::string parsingDir;
  std::vector<std::string> annotationFiles;
};

// In-memory variant: one annotation with loaded parsing maps plus the photo.
struct FixtureScene {
  GroupAnnotation annotation;
  Image image;
};

FixtureScene make_synthetic_scene(uint64_t seed);

// Writes images/, parsing/, annotations/ under rootDir.
FixtureDataset make_synthetic_dataset(const std::string& rootDir,
                                      const FixtureOptions& options = {});

}  // namespace gf
