// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace gf {

// Reduced 9-class human parsing table. Richer datasets map onto it through
// an adapter at ingestion time; the engine itself consumes only Face and the
// limb classes.
enum class ParsingClass : uint8_t {
  Background = 0,
  Face = 1,
  Hair = 2,
  TorsoClothes = 3,
  Arms = 4,
  Hands = 5,
  LowerClothes = 6,
  Legs = 7,
  Other = 8,
};

inline constexpr uint8_t kParsingClassCount = 9;

// H x W grid of parsing class ids, row-major, dimensions match the photo.
struct ParsingMap {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> labels;

  ParsingMap() = default;
  ParsingMap(int w, int h) : width(w), height(h), labels(static_cast<size_t>(w) * h, 0) {}

  uint8_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
  void set(int x, int y, ParsingClass c) {
    labels[static_cast<size_t>(y) * width + x] = static_cast<uint8_t>(c);
  }
  bool valid_labels() const;  // every cell holds a declared class id
};

}  // namespace gf
