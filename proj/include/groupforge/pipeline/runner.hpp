// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "groupforge/pipeline/config.hpp"

namespace gf {

struct GenerateOptions {
  std::string annotationsDir;
  std::string imagesDir;
  std::string outDir;
  uint64_t globalSeed = 0;
  uint64_t numSamples = 0;
  std::vector<std::string> strategies;  // optional subset filter
  PipelineConfig config;
};

struct GenerateResult {
  size_t samplesWritten = 0;
  std::string manifestPath;
};

// Derived-seed stream used to pick the source annotation per sample.
inline constexpr uint64_t kAnnotationStream = 3;

// End-to-end generation: ingest annotations, generate numSamples training
// samples in parallel (GROUPFORGE_THREADS caps workers), write
// masked/mask/skeleton/ref/indicator PNGs, and emit manifest.jsonl with a
// header record followed by one record per sample in sample order. Output
// bytes are a pure function of (inputs, seed, config).
GenerateResult run_generate(const GenerateOptions& options);

// Re-checks manifest digests and per-sample invariants (binary mask files,
// gray-filled masked pixels, untouched face pixels). Returns the number of
// failed checks and logs one line per problem.
size_t run_validate(const std::string& outDir, std::ostream& log);

// Writes preview_<id>.png: masked image | mask | skeleton map | references.
std::string run_preview(const std::string& outDir, uint64_t sampleId);

// Zero-pads sample ids into file stems ("000042").
std::string sample_stem(uint64_t sampleId);

// Restricts the strategy mix to a subset, keeping relative weights.
void apply_strategy_filter(PipelineConfig& config, const std::vector<std::string>& strategies);

}  // namespace gf
