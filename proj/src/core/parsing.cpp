// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/core/parsing.hpp"

namespace gf {

bool ParsingMap::valid_labels() const {
  for (uint8_t v : labels)
    if (v >= kParsingClassCount) return false;
  return true;
}

}  // namespace gf
