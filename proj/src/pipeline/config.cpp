// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/pipeline/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "groupforge/core/error.hpp"

namespace gf {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

}  // namespace

void PipelineConfig::validate() const {
  engine.validate();
  if (grayFill < 0 || grayFill > 255)
    throw std::invalid_argument("gray_fill must be an 8-bit value");
  if (skeletonLineWidth <= 0.0)
    throw std::invalid_argument("skeleton_line_width must be positive");
}

std::map<std::string, std::string> PipelineConfig::to_map() const {
  std::map<std::string, std::string> kv;
  kv["prob_coarse"] = fmt(engine.probCoarse);
  kv["prob_fine"] = fmt(engine.probFine);
  kv["prob_body"] = fmt(engine.probBody);
  kv["coarse_r_min"] = fmt(engine.coarseRMin);
  kv["coarse_r_max"] = fmt(engine.coarseRMax);
  kv["body_r_min"] = fmt(engine.bodyRMin);
  kv["body_r_max"] = fmt(engine.bodyRMax);
  kv["column_extension_prob"] = fmt(engine.columnExtensionProb);
  kv["max_persons_per_mask"] = std::to_string(engine.maxPersonsPerMask);
  kv["brush_enabled"] = engine.brushEnabled ? "true" : "false";
  kv["brush_fine_masks"] = engine.brushFineMasks ? "true" : "false";
  kv["brush_dilate_radius_min"] = fmt(engine.brush.dilateRadiusMin);
  kv["brush_dilate_radius_max"] = fmt(engine.brush.dilateRadiusMax);
  kv["brush_stroke_count_min"] = std::to_string(engine.brush.strokeCountMin);
  kv["brush_stroke_count_max"] = std::to_string(engine.brush.strokeCountMax);
  kv["brush_stroke_width_min"] = fmt(engine.brush.strokeWidthMin);
  kv["brush_stroke_width_max"] = fmt(engine.brush.strokeWidthMax);
  kv["brush_points_per_stroke"] = std::to_string(engine.brush.pointsPerStroke);
  kv["pad_factor"] = fmt(engine.padFactor);
  kv["hand_radius_factor"] = fmt(engine.handRadiusFactor);
  kv["augment_angle_min_deg"] = fmt(engine.augment.angleMinDeg);
  kv["augment_angle_max_deg"] = fmt(engine.augment.angleMaxDeg);
  kv["augment_limb_count"] = std::to_string(engine.augment.limbCount);
  kv["max_retries"] = std::to_string(engine.maxRetries);
  kv["gray_fill"] = std::to_string(grayFill);
  kv["skeleton_line_width"] = fmt(skeletonLineWidth);
  kv["reference_selection"] =
      referenceSelection == ReferenceSelection::Intersect ? "intersect" : "all";
  return kv;
}

PipelineConfig PipelineConfig::from_map(const std::map<std::string, std::string>& kv) {
  PipelineConfig c;
  for (const auto& [key, value] : kv) {
    try {
      if (key == "prob_coarse") c.engine.probCoarse = std::stod(value);
      else if (key == "prob_fine") c.engine.probFine = std::stod(value);
      else if (key == "prob_body") c.engine.probBody = std::stod(value);
      else if (key == "coarse_r_min") c.engine.coarseRMin = std::stod(value);
      else if (key == "coarse_r_max") c.engine.coarseRMax = std::stod(value);
      else if (key == "body_r_min") c.engine.bodyRMin = std::stod(value);
      else if (key == "body_r_max") c.engine.bodyRMax = std::stod(value);
      else if (key == "column_extension_prob") c.engine.columnExtensionProb = std::stod(value);
      else if (key == "max_persons_per_mask") c.engine.maxPersonsPerMask = std::stoi(value);
      else if (key == "brush_enabled") c.engine.brushEnabled = parse_bool(value);
      else if (key == "brush_fine_masks") c.engine.brushFineMasks = parse_bool(value);
      else if (key == "brush_dilate_radius_min") c.engine.brush.dilateRadiusMin = std::stod(value);
      else if (key == "brush_dilate_radius_max") c.engine.brush.dilateRadiusMax = std::stod(value);
      else if (key == "brush_stroke_count_min") c.engine.brush.strokeCountMin = std::stoi(value);
      else if (key == "brush_stroke_count_max") c.engine.brush.strokeCountMax = std::stoi(value);
      else if (key == "brush_stroke_width_min") c.engine.brush.strokeWidthMin = std::stod(value);
      else if (key == "brush_stroke_width_max") c.engine.brush.strokeWidthMax = std::stod(value);
      else if (key == "brush_points_per_stroke") c.engine.brush.pointsPerStroke = std::stoi(value);
      else if (key == "pad_factor") c.engine.padFactor = std::stod(value);
      else if (key == "hand_radius_factor") c.engine.handRadiusFactor = std::stod(value);
      else if (key == "augment_angle_min_deg") c.engine.augment.angleMinDeg = std::stod(value);
      else if (key == "augment_angle_max_deg") c.engine.augment.angleMaxDeg = std::stod(value);
      else if (key == "augment_limb_count") c.engine.augment.limbCount = std::stoi(value);
      else if (key == "max_retries") c.engine.maxRetries = std::stoi(value);
      else if (key == "gray_fill") c.grayFill = std::stoi(value);
      else if (key == "skeleton_line_width") c.skeletonLineWidth = std::stod(value);
      else if (key == "reference_selection") {
        if (value == "intersect") c.referenceSelection = ReferenceSelection::Intersect;
        else if (value == "all") c.referenceSelection = ReferenceSelection::All;
        else throw std::invalid_argument("expected 'intersect' or 'all'");
      } else {
        throw std::invalid_argument("unknown config key");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("config key '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::IoError, "cannot open config: " + path);
  std::map<std::string, std::string> kv = PipelineConfig{}.to_map();
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      raise(Errc::SchemaError, path + ":" + std::to_string(lineNo) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (kv.find(key) == kv.end())
      raise(Errc::SchemaError, path + ":" + std::to_string(lineNo) + ": unknown key '" + key + "'");
    kv[key] = value;
  }
  try {
    return PipelineConfig::from_map(kv);
  } catch (const std::exception& e) {
    raise(Errc::SchemaError, path + ": " + e.what());
  }
}

void save_config_file(const std::string& path, const PipelineConfig& config) {
  std::ofstream out(path);
  if (!out) raise(Errc::IoError, "cannot open for writing: " + path);
  for (const auto& [key, value] : config.to_map()) out << key << " = " << value << "\n";
}

}  // namespace gf
