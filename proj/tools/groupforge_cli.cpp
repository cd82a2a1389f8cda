// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "groupforge/attn/attention.hpp"
#include "groupforge/attn/tensor_io.hpp"
#include "groupforge/core/error.hpp"
#include "groupforge/fixtures/synthetic.hpp"
#include "groupforge/kernels/kernels.hpp"
#include "groupforge/pipeline/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_generate(const std::string& annotations, const std::string& images,
                 const std::string& outDir, uint64_t seed, uint64_t numSamples,
                 const std::string& strategies, const std::string& configPath) {
  gf::GenerateOptions options;
  options.annotationsDir = annotations;
  options.imagesDir = images;
  options.outDir = outDir;
  options.globalSeed = seed;
  options.numSamples = numSamples;
  options.strategies = split_csv(strategies);
  if (!configPath.empty()) options.config = gf::load_config_file(configPath);

  const gf::GenerateResult result = gf::run_generate(options);
  std::cout << "wrote " << result.samplesWritten << " samples, manifest at "
            << result.manifestPath << "\n";
  return 0;
}

int cmd_attn_demo(int refs, const std::string& hw, int tokens, int dim, double w, double sigma,
                  uint64_t seed, bool perRowMax) {
  const std::vector<std::string> parts = split_csv(hw);
  if (parts.size() != 2) throw std::invalid_argument("--hw expects H,W");
  const int h = std::stoi(parts[0]);
  const int gw = std::stoi(parts[1]);
  if (refs < 1 || h < 1 || gw < 1 || tokens < 1 || dim < 1)
    throw std::invalid_argument("attn-demo: all sizes must be positive");

  gf::AttentionConfig config;
  config.numRefs = refs;
  config.tokensPerRef = tokens;
  config.keyDim = dim;
  config.channels = 2 * dim;
  config.poseChannels = dim;

  // Synthetic references: flat-colored cards plus poses from fixture scenes.
  std::vector<gf::FeatureGrid> feats;
  std::vector<gf::PoseFeature> poses;
  for (int n = 0; n < refs; ++n) {
    gf::Image card(64, 64,
                   {static_cast<uint8_t>(40 + 50 * n), static_cast<uint8_t>(200 - 40 * n),
                    static_cast<uint8_t>(90 + 30 * n)});
    feats.push_back(
        gf::encode_reference_stub(card, gf::SeedSpec{seed, static_cast<uint64_t>(n)}, config));
    const gf::FixtureScene scene = gf::make_synthetic_scene(gf::derive_seed(seed, 100 + n));
    poses.push_back(gf::encode_pose_stub(scene.annotation.persons.front().skeleton,
                                         scene.annotation.width, scene.annotation.height, config));
  }

  const gf::FusionWeights weights = gf::FusionWeights::random(gf::SeedSpec{seed, 7}, config);
  const gf::Mat keys = gf::fuse_intra_person_keys(feats, poses, weights, config);
  const gf::Mat values = gf::project_values(feats, weights, config);

  // Vertical bands: reference n owns band n of the query grid.
  std::vector<gf::MaskGrid> masks;
  for (int n = 0; n < refs; ++n) {
    gf::MaskGrid m(gw, h);
    const int x0 = gw * n / refs;
    const int x1 = gw * (n + 1) / refs;
    for (int y = 0; y < h; ++y)
      for (int x = x0; x < x1; ++x) m.set(x, y, 1);
    masks.push_back(std::move(m));
  }
  const gf::IndicatorMatrix indicator = gf::build_indicator_matrix(masks, config);

  gf::QueryGrid queries;
  queries.h = h;
  queries.w = gw;
  queries.rows = gf::Mat(static_cast<size_t>(h) * gw, static_cast<size_t>(dim));
  gf::Rng rng(gf::SeedSpec{seed, 9});
  for (double& v : queries.rows.data) v = rng.uniform(-1.0, 1.0);

  gf::ReweightParams params;
  params.w = w;
  params.sigma = sigma;
  params.keyDim = static_cast<size_t>(dim);
  params.perRowMax = perRowMax;

  const gf::Mat probs = gf::attention_probabilities(queries, keys, &indicator, params);

  std::cout << "kernel: " << gf::kernels::active_ops().name << "  HW=" << h << "x" << gw
            << "  refs=" << refs << "  T=" << tokens << "  d=" << dim << "  w=" << w
            << "  sigma=" << sigma << (perRowMax ? "  (per-row max)" : "") << "\n";
  std::cout << "per-reference attention mass over query rows:\n";
  for (int n = 0; n < refs; ++n) {
    double sum = 0.0, minMass = 1.0, maxMass = 0.0;
    double sumIndicated = 0.0;
    size_t indicatedRows = 0;
    for (size_t i = 0; i < probs.rows; ++i) {
      double mass = 0.0;
      for (int t = 0; t < tokens; ++t)
        mass += probs.at(i, static_cast<size_t>(n) * tokens + static_cast<size_t>(t));
      sum += mass;
      minMass = std::min(minMass, mass);
      maxMass = std::max(maxMass, mass);
      if (masks[static_cast<size_t>(n)].bits[i]) {
        sumIndicated += mass;
        ++indicatedRows;
      }
    }
    std::printf("  ref %d: mean %.4f  min %.4f  max %.4f  mean@own-band %.4f\n", n,
                sum / static_cast<double>(probs.rows), minMass, maxMass,
                indicatedRows ? sumIndicated / static_cast<double>(indicatedRows) : 0.0);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"groupforge: paired training-data engine and person-aware attention kernel"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate training samples");
  std::string annotations, images, outDir, strategies, configPath;
  uint64_t seed = 0, numSamples = 0;
  gen->add_option("--annotations", annotations, "annotation directory")->required();
  gen->add_option("--images", images, "image directory")->required();
  gen->add_option("--out", outDir, "output directory")->required();
  gen->add_option("--seed", seed, "global seed");
  gen->add_option("--num-samples", numSamples, "samples to generate")->required();
  gen->add_option("--strategies", strategies, "subset filter: coarse,fine,body");
  gen->add_option("--config", configPath, "config file (key = value lines)");

  // preview
  auto* prev = app.add_subcommand("preview", "compose a side-by-side preview of one sample");
  std::string prevOut;
  uint64_t prevId = 0;
  prev->add_option("--out", prevOut, "output directory of a generate run")->required();
  prev->add_option("--sample", prevId, "sample id")->required();

  // validate
  auto* val = app.add_subcommand("validate", "re-check digests and invariants of a run");
  std::string valOut;
  val->add_option("--out", valOut, "output directory of a generate run")->required();

  // attn-demo
  auto* demo = app.add_subcommand("attn-demo", "run the attention kernel on stub features");
  int refs = 2, tokens = 16, dim = 16;
  std::string hw = "8,8";
  double w = 1.0, sigma = 1.0;
  uint64_t demoSeed = 0;
  bool perRowMax = false;
  demo->add_option("--refs", refs, "number of reference persons");
  demo->add_option("--hw", hw, "query grid H,W");
  demo->add_option("--tokens", tokens, "tokens per reference");
  demo->add_option("--dim", dim, "key dimension");
  demo->add_option("--w", w, "user reweight factor");
  demo->add_option("--sigma", sigma, "noise level");
  demo->add_option("--seed", demoSeed, "stub seed");
  demo->add_flag("--per-row-max", perRowMax, "use per-row max(M_attn)");

  // make-fixtures
  auto* fix = app.add_subcommand("make-fixtures", "write a synthetic demo dataset");
  std::string fixOut;
  int fixCount = 10;
  uint64_t fixSeed = 7;
  fix->add_option("--out", fixOut, "dataset root directory")->required();
  fix->add_option("--count", fixCount, "number of images");
  fix->add_option("--seed", fixSeed, "fixture seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(annotations, images, outDir, seed, numSamples, strategies, configPath);
    if (prev->parsed()) {
      std::cout << gf::run_preview(prevOut, prevId) << "\n";
      return 0;
    }
    if (val->parsed()) {
      const size_t failures = gf::run_validate(valOut, std::cout);
      if (failures) {
        std::cerr << failures << " check(s) failed\n";
        return 1;
      }
      std::cout << "all checks passed\n";
      return 0;
    }
    if (demo->parsed())
      return cmd_attn_demo(refs, hw, tokens, dim, w, sigma, demoSeed, perRowMax);
    if (fix->parsed()) {
      const gf::FixtureDataset ds =
          gf::make_synthetic_dataset(fixOut, {fixCount, fixSeed});
      std::cout << "wrote " << ds.annotationFiles.size() << " fixtures under " << fixOut << "\n"
                << "  annotations: " << ds.annotationsDir << "\n"
                << "  images:      " << ds.imagesDir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
