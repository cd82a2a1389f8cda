// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/pipeline/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "groupforge/core/error.hpp"
#include "groupforge/io/png.hpp"
#include "groupforge/io/sha256.hpp"
#include "groupforge/pipeline/annotations.hpp"
#include "groupforge/pipeline/sample.hpp"
#include "groupforge/util/threading.hpp"

namespace gf {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string sample_stem(uint64_t sampleId) {
  std::ostringstream os;
  os.width(6);
  os.fill('0');
  os << sampleId;
  return os.str();
}

void apply_strategy_filter(PipelineConfig& config, const std::vector<std::string>& strategies) {
  if (strategies.empty()) return;
  bool coarse = false, fine = false, body = false;
  for (const std::string& s : strategies) {
    if (s == "coarse") coarse = true;
    else if (s == "fine") fine = true;
    else if (s == "body") body = true;
    else throw std::invalid_argument("unknown strategy '" + s + "'");
  }
  if (!coarse) config.engine.probCoarse = 0.0;
  if (!fine) config.engine.probFine = 0.0;
  if (!body) config.engine.probBody = 0.0;
  const double sum =
      config.engine.probCoarse + config.engine.probFine + config.engine.probBody;
  if (sum <= 0.0) throw std::invalid_argument("strategy filter removed every strategy");
  config.engine.probCoarse /= sum;
  config.engine.probFine /= sum;
  config.engine.probBody /= sum;
}

namespace {

const char* side_name(MaskSide side) {
  switch (side) {
    case MaskSide::Left: return "left";
    case MaskSide::Right: return "right";
    case MaskSide::Both: return "both";
  }
  return "unknown";
}

std::vector<uint8_t> mask_to_bytes(const MaskGrid& mask) {
  std::vector<uint8_t> bytes(mask.bits.size());
  for (size_t i = 0; i < bytes.size(); ++i) bytes[i] = mask.bits[i] ? 255 : 0;
  return bytes;
}

struct EmittedFile {
  std::string relPath;
  std::vector<uint8_t> bytes;
};

void write_emitted(const std::string& outDir, const EmittedFile& file) {
  const fs::path full = fs::path(outDir) / file.relPath;
  std::ofstream out(full, std::ios::binary);
  if (!out) raise(Errc::IoError, "cannot open for writing: " + full.string());
  out.write(reinterpret_cast<const char*>(file.bytes.data()),
            static_cast<std::streamsize>(file.bytes.size()));
  if (!out) raise(Errc::IoError, "write failed: " + full.string());
}

ordered_json draws_json(const MaskSpec& spec) {
  ordered_json draws;
  switch (spec.strategy) {
    case MaskStrategy::Coarse: {
      ordered_json list = ordered_json::array();
      for (const CoarseDraw& d : spec.coarseDraws) {
        list.push_back({{"person", d.personId},
                        {"side", side_name(d.side)},
                        {"r", d.r},
                        {"column", d.columnExtension}});
      }
      draws["coarse"] = std::move(list);
      break;
    }
    case MaskStrategy::Fine: {
      ordered_json rotations = ordered_json::array();
      for (const LimbRotation& rot : spec.augmentDraws.rotations)
        rotations.push_back(
            {{"limb", limb_selector_name(rot.limb)}, {"angleDeg", rot.angleDeg}});
      ordered_json maskedLimbs = ordered_json::array();
      for (const LimbSelector& limb : spec.maskedLimbs)
        maskedLimbs.push_back(limb_selector_name(limb));
      draws["fine"] = {{"person", spec.targetPersonIds.front()},
                       {"rotations", std::move(rotations)},
                       {"maskedLimbs", std::move(maskedLimbs)}};
      break;
    }
    case MaskStrategy::Body: {
      draws["body"] = {{"person", spec.targetPersonIds.front()}, {"r", spec.bodyR}};
      break;
    }
  }
  if (spec.brushApplied) {
    ordered_json strokes = ordered_json::array();
    for (const BrushStroke& s : spec.brushDraws.strokes) {
      ordered_json points = ordered_json::array();
      for (const auto& [x, y] : s.points) points.push_back({x, y});
      strokes.push_back({{"width", s.width}, {"points", std::move(points)}});
    }
    draws["brush"] = {{"dilateRadius", spec.brushDraws.dilateRadius},
                      {"strokes", std::move(strokes)}};
  }
  return draws;
}

std::vector<ordered_json> read_manifest(const std::string& manifestPath) {
  std::ifstream in(manifestPath);
  if (!in) raise(Errc::IoError, "cannot open manifest: " + manifestPath);
  std::vector<ordered_json> records;
  std::string line;
  size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    try {
      records.push_back(ordered_json::parse(line));
    } catch (const ordered_json::parse_error& e) {
      raise(Errc::SchemaError,
            manifestPath + ":" + std::to_string(lineNo) + ": bad manifest line: " + e.what());
    }
  }
  if (records.empty() || records.front().value("type", "") != "header")
    raise(Errc::SchemaError, manifestPath + ": missing header record");
  return records;
}

}  // namespace

GenerateResult run_generate(const GenerateOptions& options) {
  PipelineConfig config = options.config;
  apply_strategy_filter(config, options.strategies);
  config.validate();

  if (options.outDir.empty()) throw std::invalid_argument("outDir is required");
  for (const char* sub : {"", "masked", "mask", "skeleton", "ref", "indicator"})
    fs::create_directories(fs::path(options.outDir) / sub);

  const std::vector<GroupAnnotation> annotations =
      ingest_annotations(options.annotationsDir, options.imagesDir);
  if (annotations.empty() && options.numSamples > 0)
    raise(Errc::SchemaError, "no annotations available under " + options.annotationsDir);

  // Source images loaded once, before the parallel section.
  std::map<std::string, Image> imageCache;
  for (const GroupAnnotation& ann : annotations)
    if (imageCache.find(ann.imagePath) == imageCache.end())
      imageCache.emplace(ann.imagePath, image_from_png(read_png(ann.imagePath)));

  struct PerSample {
    ordered_json record;
    std::vector<EmittedFile> files;
  };
  std::vector<PerSample> results(options.numSamples);

  parallel_for(options.numSamples, [&](size_t idx) {
    const SeedSpec seed{options.globalSeed, static_cast<uint64_t>(idx)};
    const size_t annIdx =
        annotations.size() == 1
            ? 0
            : Rng(SeedSpec{seed.mixed(), kAnnotationStream}).below(annotations.size());
    const GroupAnnotation& ann = annotations[annIdx];
    const Image& image = imageCache.at(ann.imagePath);

    const TrainingSample sample = generate_sample(ann, image, seed, config);
    const std::string stem = sample_stem(seed.sampleIndex);

    PerSample& out = results[idx];
    out.files.push_back({"masked/" + stem + ".png", encode_png_rgb(sample.maskedImage)});
    out.files.push_back({"mask/" + stem + ".png",
                         encode_png_gray(sample.mask.width, sample.mask.height,
                                         mask_to_bytes(sample.mask))});
    out.files.push_back({"skeleton/" + stem + ".png", encode_png_rgb(sample.targetSkeletonMap)});
    for (size_t r = 0; r < sample.references.size(); ++r) {
      const std::string suffix = stem + "_" + std::to_string(sample.references[r].personId);
      out.files.push_back({"ref/" + suffix + ".png", encode_png_rgb(sample.references[r].pixels)});
      out.files.push_back({"indicator/" + suffix + ".png",
                           encode_png_gray(sample.indicatorMasks[r].width,
                                           sample.indicatorMasks[r].height,
                                           mask_to_bytes(sample.indicatorMasks[r]))});
    }

    ordered_json files = ordered_json::array();
    for (const EmittedFile& f : out.files)
      files.push_back({{"path", f.relPath}, {"sha256", sha256_hex(f.bytes)}});

    ordered_json refs = ordered_json::array();
    for (const ReferenceImage& r : sample.references) refs.push_back(r.personId);

    out.record = {{"type", "sample"},
                  {"sample", seed.sampleIndex},
                  {"annotation", ann.sourcePath},
                  {"image", ann.imagePath},
                  {"seedGlobal", seed.globalSeed},
                  {"seedIndex", seed.sampleIndex},
                  {"sampleSeed", sample.maskSpec.sampleSeed},
                  {"strategy", mask_strategy_name(sample.maskSpec.strategy)},
                  {"attempt", sample.maskSpec.attempt},
                  {"targets", sample.maskSpec.targetPersonIds},
                  {"draws", draws_json(sample.maskSpec)},
                  {"references", std::move(refs)},
                  {"files", std::move(files)}};

    for (const EmittedFile& f : out.files) write_emitted(options.outDir, f);
  });

  ordered_json header = {{"type", "header"},
                         {"tool", "groupforge"},
                         {"formatVersion", 1},
                         {"globalSeed", options.globalSeed},
                         {"numSamples", options.numSamples},
                         {"annotations", options.annotationsDir},
                         {"images", options.imagesDir},
                         {"config", config.to_map()}};

  const std::string manifestPath = (fs::path(options.outDir) / "manifest.jsonl").string();
  std::ofstream manifest(manifestPath, std::ios::binary);
  if (!manifest) raise(Errc::IoError, "cannot open for writing: " + manifestPath);
  manifest << header.dump() << "\n";
  for (const PerSample& r : results) manifest << r.record.dump() << "\n";
  if (!manifest) raise(Errc::IoError, "write failed: " + manifestPath);

  return {options.numSamples, manifestPath};
}

size_t run_validate(const std::string& outDir, std::ostream& log) {
  const std::string manifestPath = (fs::path(outDir) / "manifest.jsonl").string();
  const std::vector<ordered_json> records = read_manifest(manifestPath);

  PipelineConfig config;
  if (records.front().contains("config")) {
    std::map<std::string, std::string> kv =
        records.front()["config"].get<std::map<std::string, std::string>>();
    config = PipelineConfig::from_map(kv);
  }
  const Rgb gray = config.gray();
  const std::string imagesDir = records.front().value("images", "");

  size_t failures = 0;
  std::map<std::string, GroupAnnotation> annCache;
  std::map<std::string, Image> imageCache;

  for (size_t i = 1; i < records.size(); ++i) {
    const ordered_json& rec = records[i];
    if (rec.value("type", "") != "sample") continue;
    const uint64_t id = rec.value("sample", 0ull);
    const std::string stem = sample_stem(id);
    bool sampleOk = true;

    for (const ordered_json& f : rec.value("files", ordered_json::array())) {
      const std::string rel = f.value("path", "");
      const std::string expected = f.value("sha256", "");
      const fs::path full = fs::path(outDir) / rel;
      if (!fs::exists(full)) {
        log << "FAIL sample " << stem << ": missing file " << rel << "\n";
        ++failures;
        sampleOk = false;
        continue;
      }
      const std::string actual = sha256_file_hex(full.string());
      if (actual != expected) {
        log << "FAIL sample " << stem << ": digest mismatch for " << rel << "\n";
        ++failures;
        sampleOk = false;
      }
    }

    const fs::path maskPath = fs::path(outDir) / ("mask/" + stem + ".png");
    PngBuffer maskPng;
    bool maskLoaded = false;
    if (fs::exists(maskPath)) {
      try {
        maskPng = read_png(maskPath.string());
        maskLoaded = true;
      } catch (const Error&) {
        log << "FAIL sample " << stem << ": mask file is unreadable\n";
        ++failures;
        sampleOk = false;
      }
    }
    if (maskLoaded) {
      if (maskPng.channels != 1) {
        log << "FAIL sample " << stem << ": mask file is not single-channel\n";
        ++failures;
        sampleOk = false;
      } else {
        for (uint8_t v : maskPng.pixels) {
          if (v != 0 && v != 255) {
            log << "FAIL sample " << stem << ": mask file is not binary\n";
            ++failures;
            sampleOk = false;
            break;
          }
        }
      }
    }

    // Deep checks need the original inputs; skip quietly when they moved.
    const std::string annImagePath = rec.value("image", "");
    if (maskLoaded && !annImagePath.empty() && fs::exists(annImagePath)) {
      if (imageCache.find(annImagePath) == imageCache.end())
        imageCache.emplace(annImagePath, image_from_png(read_png(annImagePath)));
      const Image& source = imageCache.at(annImagePath);
      const fs::path maskedPath = fs::path(outDir) / ("masked/" + stem + ".png");
      if (fs::exists(maskedPath) && source.width == maskPng.width &&
          source.height == maskPng.height) {
        const Image masked = image_from_png(read_png(maskedPath.string()));
        for (size_t p = 0; p < maskPng.pixels.size() && sampleOk; ++p) {
          const bool inMask = maskPng.pixels[p] != 0;
          for (int ch = 0; ch < 3; ++ch) {
            const uint8_t want = inMask ? gray[static_cast<size_t>(ch)] : source.rgb[3 * p + ch];
            if (masked.rgb[3 * p + ch] != want) {
              log << "FAIL sample " << stem << ": masked image violates the gray/source rule\n";
              ++failures;
              sampleOk = false;
              break;
            }
          }
        }
      }
    }

    const std::string annFilePath = rec.value("annotation", "");
    if (maskLoaded && !annFilePath.empty() && fs::exists(annFilePath)) {
      if (annCache.find(annFilePath) == annCache.end()) {
        try {
          annCache.emplace(annFilePath, parse_annotation_file(annFilePath, imagesDir));
        } catch (const Error&) {
          annCache.emplace(annFilePath, GroupAnnotation{});  // sources moved; skip deep checks
        }
      }
      const GroupAnnotation& ann = annCache.at(annFilePath);
      if (ann.width == maskPng.width && ann.height == maskPng.height) {
        for (const auto& person : ann.persons) {
          if (!person.parsing || !sampleOk) continue;
          for (size_t p = 0; p < maskPng.pixels.size(); ++p) {
            if (maskPng.pixels[p] != 0 &&
                person.parsing->labels[p] == static_cast<uint8_t>(ParsingClass::Face)) {
              log << "FAIL sample " << stem << ": mask covers a face pixel\n";
              ++failures;
              sampleOk = false;
              break;
            }
          }
        }
      }
    }

    if (sampleOk) log << "OK sample " << stem << "\n";
  }
  return failures;
}

std::string run_preview(const std::string& outDir, uint64_t sampleId) {
  const std::string manifestPath = (fs::path(outDir) / "manifest.jsonl").string();
  const std::vector<ordered_json> records = read_manifest(manifestPath);

  const std::string stem = sample_stem(sampleId);
  const ordered_json* found = nullptr;
  for (size_t i = 1; i < records.size(); ++i)
    if (records[i].value("type", "") == "sample" && records[i].value("sample", 0ull) == sampleId)
      found = &records[i];
  if (!found) raise(Errc::SchemaError, "sample " + stem + " not in manifest");

  std::vector<Image> panels;
  auto push_if = [&](const std::string& rel) {
    const fs::path p = fs::path(outDir) / rel;
    if (fs::exists(p)) panels.push_back(image_from_png(read_png(p.string())));
  };
  push_if("masked/" + stem + ".png");
  push_if("mask/" + stem + ".png");
  push_if("skeleton/" + stem + ".png");
  for (const ordered_json& f : found->value("files", ordered_json::array())) {
    const std::string rel = f.value("path", "");
    if (rel.rfind("ref/", 0) == 0) push_if(rel);
  }
  if (panels.empty()) raise(Errc::MissingImage, "no sample files on disk for " + stem);

  constexpr int kGap = 4;
  int width = kGap * (static_cast<int>(panels.size()) - 1);
  int height = 0;
  for (const Image& p : panels) {
    width += p.width;
    height = std::max(height, p.height);
  }
  Image composite(width, height, {32, 32, 32});
  int xOff = 0;
  for (const Image& p : panels) {
    for (int y = 0; y < p.height; ++y)
      for (int x = 0; x < p.width; ++x) composite.set(xOff + x, y, p.get(x, y));
    xOff += p.width + kGap;
  }

  const std::string outPath = (fs::path(outDir) / ("preview_" + stem + ".png")).string();
  write_png_rgb(outPath, composite);
  return outPath;
}

}  // namespace gf
