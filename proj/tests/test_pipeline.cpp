// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "groupforge/core/error.hpp"
#include "groupforge/fixtures/synthetic.hpp"
#include "groupforge/io/png.hpp"
#include "groupforge/io/sha256.hpp"
#include "groupforge/pipeline/annotations.hpp"
#include "groupforge/pipeline/runner.hpp"
#include "groupforge/pipeline/sample.hpp"
#include "groupforge/skeleton/rasterize.hpp"

using namespace gf;
namespace fs = std::filesystem;

namespace {

fs::path temp_root(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "groupforge_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("fixture dataset ingests cleanly") {
  const fs::path root = temp_root("ingest");
  const FixtureDataset ds = make_synthetic_dataset(root.string(), {10, 7});
  const auto annotations = ingest_annotations(ds.annotationsDir, ds.imagesDir);
  REQUIRE(annotations.size() == 10);
  for (const GroupAnnotation& ann : annotations) {
    CHECK(ann.persons.size() >= 2);
    CHECK(fs::exists(ann.imagePath));
    for (const auto& person : ann.persons) {
      CHECK(person.parsing != nullptr);
      CHECK(person.parsing->width == ann.width);
      CHECK(person.bbox.well_formed());
    }
  }
}

TEST_CASE("empty annotation directory yields an empty list") {
  const fs::path root = temp_root("empty_ingest");
  CHECK(ingest_annotations(root.string()).empty());
}

TEST_CASE("schema violations name the person") {
  const fs::path root = temp_root("schema");
  const FixtureDataset ds = make_synthetic_dataset(root.string(), {1, 3});

  // corrupt the bbox ordering of person 0
  std::ifstream in(ds.annotationFiles[0]);
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  std::string text = buffer.str();
  const size_t at = text.find("\"bbox\"");
  REQUIRE(at != std::string::npos);
  const size_t open = text.find('[', at);
  const size_t close = text.find(']', at);
  text.replace(open, close - open + 1, "[50.0, 10.0, 20.0, 200.0]");
  std::ofstream out(ds.annotationFiles[0]);
  out << text;
  out.close();

  try {
    ingest_annotations(ds.annotationsDir, ds.imagesDir);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SchemaError);
    CHECK(std::string(e.what()).find("person 0") != std::string::npos);
  }
}

TEST_CASE("missing keypoints are rejected") {
  const fs::path root = temp_root("schema_kp");
  const FixtureDataset ds = make_synthetic_dataset(root.string(), {1, 4});
  std::ifstream in(ds.annotationFiles[0]);
  std::stringstream buffer;
  buffer << in.rdbuf();
  in.close();
  std::string text = buffer.str();
  // drop one keypoint triple from the first list
  const size_t at = text.find("\"keypoints\"");
  const size_t open = text.find('[', at);
  size_t depth = 0, cut0 = 0, cut1 = 0;
  for (size_t i = open; i < text.size(); ++i) {
    if (text[i] == '[') {
      ++depth;
      if (depth == 2 && cut0 == 0) cut0 = i;
    } else if (text[i] == ']') {
      if (depth == 2 && cut1 == 0) cut1 = i;
      --depth;
      if (depth == 0) break;
    }
  }
  REQUIRE(cut1 > cut0);
  size_t comma = text.find(',', cut1);
  text.erase(cut0, comma - cut0 + 1);
  std::ofstream out(ds.annotationFiles[0]);
  out << text;
  out.close();

  try {
    ingest_annotations(ds.annotationsDir, ds.imagesDir);
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SchemaError);
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
}

TEST_CASE("prepare_reference whitens everything outside the person") {
  Image img(6, 4, {10, 20, 30});
  ParsingMap parsing(6, 4);
  // left half belongs to the person
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 3; ++x) parsing.set(x, y, ParsingClass::TorsoClothes);

  const ReferenceImage ref = prepare_reference(img, parsing, 5, {0, 0, 3, 4});
  size_t white = 0;
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 6; ++x) {
      const Rgb px = ref.pixels.get(x, y);
      if (px == Rgb{255, 255, 255}) ++white;
      else CHECK(px == Rgb{10, 20, 30});
    }
  CHECK(white == 12);  // exactly the complement
  CHECK(ref.personId == 5);

  // person covering the whole frame: output equals input
  ParsingMap full(6, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 6; ++x) full.set(x, y, ParsingClass::Other);
  CHECK(prepare_reference(img, full, 1, {0, 0, 6, 4}).pixels == img);

  CHECK_THROWS_AS(prepare_reference(img, ParsingMap(6, 4), 2, {0, 0, 1, 1}), Error);
}

TEST_CASE("generate_sample composes the gray-masked image exactly") {
  const FixtureScene scene = make_synthetic_scene(70);
  const PipelineConfig config;
  const TrainingSample sample = generate_sample(scene.annotation, scene.image, SeedSpec{5, 0},
                                                config);
  const Rgb gray = config.gray();
  REQUIRE(sample.maskedImage.width == scene.image.width);
  for (int y = 0; y < scene.image.height; ++y) {
    for (int x = 0; x < scene.image.width; ++x) {
      if (sample.mask.at(x, y))
        CHECK(sample.maskedImage.get(x, y) == gray);
      else
        CHECK(sample.maskedImage.get(x, y) == scene.image.get(x, y));
    }
  }
}

TEST_CASE("generate_sample is deterministic") {
  const FixtureScene scene = make_synthetic_scene(71);
  const PipelineConfig config;
  const TrainingSample a = generate_sample(scene.annotation, scene.image, SeedSpec{8, 3}, config);
  const TrainingSample b = generate_sample(scene.annotation, scene.image, SeedSpec{8, 3}, config);
  CHECK(a.maskedImage == b.maskedImage);
  CHECK(a.mask == b.mask);
  CHECK(a.targetSkeletonMap == b.targetSkeletonMap);
  REQUIRE(a.references.size() == b.references.size());
  for (size_t i = 0; i < a.references.size(); ++i) {
    CHECK(a.references[i].personId == b.references[i].personId);
    CHECK(a.references[i].pixels == b.references[i].pixels);
    CHECK(a.indicatorMasks[i] == b.indicatorMasks[i]);
  }
}

TEST_CASE("skeleton map comes from the original skeletons, also for fine masks") {
  const FixtureScene scene = make_synthetic_scene(72);
  PipelineConfig config;
  config.engine.probCoarse = 0.0;
  config.engine.probFine = 1.0;
  config.engine.probBody = 0.0;

  const TrainingSample sample = generate_sample(scene.annotation, scene.image, SeedSpec{4, 1},
                                                config);
  REQUIRE(sample.maskSpec.strategy == MaskStrategy::Fine);
  REQUIRE(sample.maskSpec.augmentedSkeleton.has_value());

  std::vector<Skeleton> originals;
  for (const auto& p : scene.annotation.persons) originals.push_back(p.skeleton);
  SkeletonStyle style;
  style.lineWidth = config.skeletonLineWidth;
  CHECK(sample.targetSkeletonMap ==
        rasterize_skeletons(originals, scene.annotation.width, scene.annotation.height, style));
}

TEST_CASE("references cover exactly the touching persons") {
  const FixtureScene scene = make_synthetic_scene(73);
  const PipelineConfig config;
  const TrainingSample sample = generate_sample(scene.annotation, scene.image, SeedSpec{11, 2},
                                                config);
  REQUIRE(!sample.references.empty());
  CHECK(sample.references.size() == sample.indicatorMasks.size());

  for (size_t i = 0; i < sample.references.size(); ++i) {
    const int id = sample.references[i].personId;
    const auto* person = scene.annotation.find_person(id);
    REQUIRE(person != nullptr);
    CHECK(sample.indicatorMasks[i] ==
          rect_to_mask(person->bbox, scene.annotation.width, scene.annotation.height));
    // either a target or the box overlaps the mask
    const bool isTarget =
        std::find(sample.maskSpec.targetPersonIds.begin(), sample.maskSpec.targetPersonIds.end(),
                  id) != sample.maskSpec.targetPersonIds.end();
    bool touches = false;
    for (size_t p = 0; p < sample.mask.bits.size(); ++p)
      touches |= sample.mask.bits[p] && sample.indicatorMasks[i].bits[p];
    CHECK((isTarget || touches));
    // reference background is pure white outside the person parsing
    for (size_t p = 0; p < sample.mask.bits.size(); ++p) {
      if (person->parsing->labels[p] == 0) {
        CHECK(sample.references[i].pixels.rgb[3 * p] == 255);
        CHECK(sample.references[i].pixels.rgb[3 * p + 1] == 255);
        CHECK(sample.references[i].pixels.rgb[3 * p + 2] == 255);
      }
    }
  }
}

TEST_CASE("conditioning stack honors the 12-channel contract") {
  const FixtureScene scene = make_synthetic_scene(74);
  const PipelineConfig config;
  const TrainingSample sample = generate_sample(scene.annotation, scene.image, SeedSpec{13, 0},
                                                config);
  const ConditioningStack stack = assemble_conditioning(sample, 64, 64, config.gray());
  CHECK(ConditioningStack::kChannels == 12);
  CHECK(stack.data.size() == 12u * 64 * 64);

  const float grayValue = config.gray()[0] / 255.0f;
  for (size_t i = 0; i < 64u * 64; ++i) {
    for (int c = 0; c < 4; ++c) CHECK(stack.plane(c)[i] == 0.0f);  // latent placeholders
    const float m = stack.plane(8)[i];
    CHECK((m == 0.0f || m == 1.0f));
    if (m == 1.0f) {
      for (int c = 4; c <= 6; ++c) CHECK(stack.plane(c)[i] == grayValue);
      CHECK(stack.plane(7)[i] == doctest::Approx(grayValue).epsilon(1e-6));
    }
  }

  // skeleton channels equal the resized rasterization
  const Image resized = resize_bilinear(sample.targetSkeletonMap, 64, 64);
  for (size_t i = 0; i < 64u * 64; ++i) {
    CHECK(stack.plane(9)[i] == doctest::Approx(resized.rgb[3 * i] / 255.0f).epsilon(1e-6));
    CHECK(stack.plane(11)[i] == doctest::Approx(resized.rgb[3 * i + 2] / 255.0f).epsilon(1e-6));
  }
}

TEST_CASE("run_generate writes a manifest and validate passes") {
  const fs::path root = temp_root("endtoend");
  const FixtureDataset ds = make_synthetic_dataset((root / "data").string(), {4, 11});

  GenerateOptions options;
  options.annotationsDir = ds.annotationsDir;
  options.imagesDir = ds.imagesDir;
  options.outDir = (root / "out").string();
  options.globalSeed = 99;
  options.numSamples = 6;

  const GenerateResult result = run_generate(options);
  CHECK(result.samplesWritten == 6);
  CHECK(fs::exists(result.manifestPath));
  CHECK(fs::exists(root / "out" / "mask" / "000000.png"));

  std::ostringstream log;
  CHECK(run_validate(options.outDir, log) == 0);

  // preview produces a composite
  const std::string preview = run_preview(options.outDir, 2);
  CHECK(fs::exists(preview));

  // tamper with one mask byte: the digest check must catch it
  const fs::path victim = root / "out" / "mask" / "000003.png";
  std::fstream f(victim, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(37);
  char b;
  f.seekg(37);
  f.get(b);
  f.seekp(37);
  f.put(static_cast<char>(b ^ 0x40));
  f.close();
  std::ostringstream log2;
  CHECK(run_validate(options.outDir, log2) >= 1);
  CHECK(log2.str().find("000003") != std::string::npos);
}

TEST_CASE("zero samples still write a header-only manifest") {
  const fs::path root = temp_root("zero");
  const FixtureDataset ds = make_synthetic_dataset((root / "data").string(), {1, 5});
  GenerateOptions options;
  options.annotationsDir = ds.annotationsDir;
  options.imagesDir = ds.imagesDir;
  options.outDir = (root / "out").string();
  options.numSamples = 0;
  const GenerateResult result = run_generate(options);
  std::ifstream manifest(result.manifestPath);
  std::string line;
  size_t lines = 0;
  while (std::getline(manifest, line)) ++lines;
  CHECK(lines == 1);  // header only
}

TEST_CASE("strategy filter renormalizes the mix") {
  PipelineConfig config;
  apply_strategy_filter(config, {"body"});
  CHECK(config.engine.probBody == doctest::Approx(1.0));
  CHECK(config.engine.probCoarse == 0.0);
  PipelineConfig config2;
  CHECK_THROWS_AS(apply_strategy_filter(config2, {"nope"}), std::invalid_argument);
}
