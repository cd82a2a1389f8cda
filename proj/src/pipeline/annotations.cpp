// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/pipeline/annotations.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "groupforge/core/error.hpp"
#include "groupforge/io/png.hpp"

namespace gf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& file, const std::string& detail) {
  raise(Errc::SchemaError, file + ": " + detail);
}

std::string resolve(const std::string& base, const std::string& path) {
  const fs::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (fs::path(base) / p).string();
}

}  // namespace

GroupAnnotation parse_annotation_file(const std::string& path, const std::string& imagesDir) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoError, "cannot open: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    schema_error(path, std::string("invalid JSON: ") + e.what());
  }

  GroupAnnotation ann;
  ann.sourcePath = path;
  const std::string annDir = fs::path(path).parent_path().string();
  try {
    ann.imagePath = resolve(imagesDir.empty() ? annDir : imagesDir, doc.at("image").get<std::string>());
    ann.width = doc.at("width").get<int>();
    ann.height = doc.at("height").get<int>();
  } catch (const json::exception& e) {
    schema_error(path, std::string("missing or ill-typed field: ") + e.what());
  }
  if (ann.width <= 0 || ann.height <= 0) schema_error(path, "width/height must be positive");
  if (!fs::exists(ann.imagePath)) raise(Errc::MissingImage, path + ": image not found: " + ann.imagePath);

  if (!doc.contains("persons") || !doc["persons"].is_array())
    schema_error(path, "missing persons array");

  std::set<int> seenIds;
  for (const json& p : doc["persons"]) {
    GroupAnnotation::Person person;
    try {
      person.id = p.at("id").get<int>();
      const auto& bbox = p.at("bbox");
      if (!bbox.is_array() || bbox.size() != 4)
        schema_error(path, "person " + std::to_string(person.id) + ": bbox must be [x1,y1,x2,y2]");
      person.bbox = {bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                     bbox[3].get<double>()};
      const auto& kps = p.at("keypoints");
      if (!kps.is_array() || kps.size() != static_cast<size_t>(kJointCount))
        schema_error(path, "person " + std::to_string(person.id) + ": keypoint count != 17");
      for (int k = 0; k < kJointCount; ++k) {
        const auto& kp = kps[static_cast<size_t>(k)];
        if (!kp.is_array() || kp.size() != 3)
          schema_error(path, "person " + std::to_string(person.id) + ": keypoint " +
                                 std::to_string(k) + " is not [x,y,conf]");
        person.skeleton.joints[static_cast<size_t>(k)] = {kp[0].get<double>(), kp[1].get<double>(),
                                                          kp[2].get<double>()};
      }
      person.parsingPath = resolve(annDir, p.at("parsing").get<std::string>());
    } catch (const json::exception& e) {
      schema_error(path, std::string("person entry: ") + e.what());
    }

    if (!seenIds.insert(person.id).second)
      schema_error(path, "duplicate person id " + std::to_string(person.id));
    if (!person.bbox.well_formed())
      schema_error(path, "person " + std::to_string(person.id) +
                             ": bbox must satisfy x1 < x2 and y1 < y2");
    if (person.bbox.x2 <= 0 || person.bbox.y2 <= 0 || person.bbox.x1 >= ann.width ||
        person.bbox.y1 >= ann.height)
      schema_error(path, "person " + std::to_string(person.id) + ": bbox misses the canvas");
    for (int k = 0; k < kJointCount; ++k) {
      const double conf = person.skeleton.joints[static_cast<size_t>(k)].confidence;
      if (conf < 0.0 || conf > 1.0)
        schema_error(path, "person " + std::to_string(person.id) + ": keypoint " +
                               std::to_string(k) + " confidence outside [0,1]");
    }

    if (!fs::exists(person.parsingPath))
      raise(Errc::MissingImage, path + ": parsing map not found: " + person.parsingPath);
    const PngBuffer parsingPng = read_png(person.parsingPath);
    if (parsingPng.channels != 1)
      schema_error(path, "parsing map must be single-channel: " + person.parsingPath);
    auto parsing = std::make_shared<ParsingMap>(parsingPng.width, parsingPng.height);
    parsing->labels = parsingPng.pixels;
    if (parsing->width != ann.width || parsing->height != ann.height)
      schema_error(path, "parsing map dimensions do not match the photo: " + person.parsingPath);
    if (!parsing->valid_labels())
      schema_error(path, "parsing map holds undeclared class ids: " + person.parsingPath);
    person.parsing = std::move(parsing);

    ann.persons.push_back(std::move(person));
  }
  return ann;
}

std::vector<GroupAnnotation> ingest_annotations(const std::string& annotationsDir,
                                                const std::string& imagesDir) {
  if (!fs::is_directory(annotationsDir))
    raise(Errc::IoError, "not a directory: " + annotationsDir);

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(annotationsDir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  if (files.empty())
    std::fprintf(stderr, "groupforge: warning: no annotation files in %s\n",
                 annotationsDir.c_str());

  std::vector<GroupAnnotation> out;
  out.reserve(files.size());
  for (const std::string& file : files) out.push_back(parse_annotation_file(file, imagesDir));
  return out;
}

}  // namespace gf
