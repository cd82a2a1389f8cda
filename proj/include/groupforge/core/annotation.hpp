// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "groupforge/core/geometry.hpp"
#include "groupforge/core/parsing.hpp"
#include "groupforge/core/skeleton.hpp"

namespace gf {

// One group photo plus per-person annotations. Immutable after ingestion;
// parsing maps are shared read-only so annotations stay cheap to copy.
struct GroupAnnotation {
  struct Person {
    int id = 0;
    BBox bbox;
    Skeleton skeleton;
    std::string parsingPath;
    std::shared_ptr<const ParsingMap> parsing;
  };

  std::string sourcePath;  // annotation file, when ingested from disk
  std::string imagePath;
  int width = 0;
  int height = 0;
  std::vector<Person> persons;

  const Person* find_person(int id) const {
    for (const auto& p : persons)
      if (p.id == id) return &p;
    return nullptr;
  }
};

}  // namespace gf
