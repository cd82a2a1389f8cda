// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "groupforge/attn/tensor_io.hpp"
#include "groupforge/core/error.hpp"
#include "groupforge/core/seed.hpp"
#include "groupforge/io/png.hpp"
#include "groupforge/io/sha256.hpp"
#include "groupforge/pipeline/config.hpp"

using namespace gf;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "groupforge_tests" / name;
  fs::create_directories(dir);
  return dir;
}

Image random_image(Rng& rng, int w, int h) {
  Image img(w, h);
  for (uint8_t& v : img.rgb) v = static_cast<uint8_t>(rng.below(256));
  return img;
}

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex(std::string{}) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex(std::string{"abc"}) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex(std::string{"The quick brown fox jumps over the lazy dog"}) ==
        "d7a8fbb307d7809469ca9abcb0082e4f8d5651e46d3cdb762d02d0bf37c9e592");
  // exercise multi-block input
  CHECK(sha256_hex(std::string(1000, 'a')) ==
        "41edece42d63e8d9bf515a9ba6932e1c20cbc9f5a5d134645adb5db1b9737ea3");
}

TEST_CASE("png rgb round trip and byte determinism") {
  Rng rng(41);
  for (const auto& [w, h] : {std::pair{1, 1}, {7, 3}, {64, 48}}) {
    const Image img = random_image(rng, w, h);
    const auto bytes = encode_png_rgb(img);
    CHECK(encode_png_rgb(img) == bytes);

    const PngBuffer decoded = decode_png(bytes);
    CHECK(decoded.width == w);
    CHECK(decoded.height == h);
    CHECK(decoded.channels == 3);
    CHECK(decoded.pixels == img.rgb);
  }
}

TEST_CASE("png gray round trip") {
  Rng rng(42);
  std::vector<uint8_t> gray(33 * 17);
  for (uint8_t& v : gray) v = static_cast<uint8_t>(rng.below(9));
  const auto bytes = encode_png_gray(33, 17, gray);
  const PngBuffer decoded = decode_png(bytes);
  CHECK(decoded.channels == 1);
  CHECK(decoded.pixels == gray);
}

TEST_CASE("png decoder rejects garbage") {
  CHECK_THROWS_AS(decode_png({1, 2, 3}), Error);
  auto bytes = encode_png_gray(4, 4, std::vector<uint8_t>(16, 1));
  bytes.resize(bytes.size() / 2);  // truncate
  CHECK_THROWS_AS(decode_png(bytes), Error);
}

TEST_CASE("png file io") {
  const fs::path dir = temp_dir("png");
  Rng rng(43);
  const Image img = random_image(rng, 20, 10);
  const std::string path = (dir / "t.png").string();
  write_png_rgb(path, img);
  const PngBuffer back = read_png(path);
  CHECK(image_from_png(back) == img);
  CHECK_THROWS_AS(read_png((dir / "missing.png").string()), Error);
}

TEST_CASE("tensor records round trip") {
  const fs::path dir = temp_dir("tensors");
  Tensor t;
  t.dims = {2, 3};
  t.data = {1.0f, -2.5f, 0.0f, 42.0f, 1e-7f, -3.25f};
  const std::string path = (dir / "a.gft").string();
  const Tensor single[] = {t};
  save_tensors(path, single);
  const auto loaded = load_tensors(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].dims == t.dims);
  CHECK(loaded[0].data == t.data);

  std::ofstream bad((dir / "bad.gft").string(), std::ios::binary);
  bad << "NOPE";
  bad.close();
  CHECK_THROWS_AS(load_tensors((dir / "bad.gft").string()), Error);
}

TEST_CASE("fusion weights survive the f32 container") {
  const fs::path dir = temp_dir("weights");
  AttentionConfig config;
  config.tokensPerRef = 4;
  config.channels = 6;
  config.poseChannels = 3;
  config.keyDim = 5;
  const FusionWeights w = FusionWeights::random(SeedSpec{1, 2}, config);
  const std::string path = (dir / "w.gft").string();
  save_fusion_weights(path, w);
  const FusionWeights back = load_fusion_weights(path);
  back.validate(config);
  REQUIRE(back.mlpWeight.data.size() == w.mlpWeight.data.size());
  for (size_t i = 0; i < w.mlpWeight.data.size(); ++i)
    CHECK(back.mlpWeight.data[i] ==
          doctest::Approx(w.mlpWeight.data[i]).epsilon(1e-6));
  CHECK(back.relu == w.relu);
}

TEST_CASE("config files round trip and reject unknown keys") {
  const fs::path dir = temp_dir("config");
  PipelineConfig config;
  config.engine.probCoarse = 0.7;
  config.engine.probFine = 0.1;
  config.engine.probBody = 0.2;
  config.grayFill = 100;
  config.engine.brush.dilateRadiusMax = 12.0;
  const std::string path = (dir / "c.cfg").string();
  save_config_file(path, config);
  const PipelineConfig back = load_config_file(path);
  CHECK(back.engine.probCoarse == doctest::Approx(0.7));
  CHECK(back.grayFill == 100);
  CHECK(back.engine.brush.dilateRadiusMax == doctest::Approx(12.0));

  std::ofstream bad((dir / "bad.cfg").string());
  bad << "no_such_key = 1\n";
  bad.close();
  CHECK_THROWS_AS(load_config_file((dir / "bad.cfg").string()), Error);
}
