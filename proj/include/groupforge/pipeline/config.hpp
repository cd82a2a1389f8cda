// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>

#include "groupforge/core/image.hpp"
#include "groupforge/mask/sampler.hpp"

namespace gf {

inline constexpr Rgb kGrayFill = {128, 128, 128};

enum class ReferenceSelection { Intersect, All };

// Engine configuration plus pipeline-level knobs. Loadable from a flat
// `key = value` text file; every key mirrors one default below.
struct PipelineConfig {
  EngineConfig engine;
  int grayFill = 128;  // masked-region fill, applied to all three channels
  double skeletonLineWidth = 4.0;
  ReferenceSelection referenceSelection = ReferenceSelection::Intersect;

  Rgb gray() const {
    const auto g = static_cast<uint8_t>(grayFill);
    return {g, g, g};
  }

  void validate() const;

  // Flat key -> value view of every setting, in fixed key order (used for
  // the config file format and the manifest header).
  std::map<std::string, std::string> to_map() const;
  static PipelineConfig from_map(const std::map<std::string, std::string>& kv);
};

// `key = value` lines, '#' comments, blank lines ignored. Unknown keys are
// rejected so typos fail loudly.
PipelineConfig load_config_file(const std::string& path);
void save_config_file(const std::string& path, const PipelineConfig& config);

}  // namespace gf
