// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "groupforge/fixtures/synthetic.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "groupforge/core/error.hpp"
#include "groupforge/core/seed.hpp"
#include "groupforge/io/png.hpp"

namespace gf {

namespace fs = std::filesystem;

namespace {

struct PersonCanvas {
  Image* image;
  ParsingMap* parsing;
};

void paint_disc(PersonCanvas canvas, double cx, double cy, double r, Rgb color, ParsingClass cls) {
  Image& img = *canvas.image;
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - r)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(cx + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - r)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(cy + r)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy > r * r) continue;
      img.set(x, y, color);
      canvas.parsing->set(x, y, cls);
    }
  }
}

void paint_capsule(PersonCanvas canvas, double ax, double ay, double bx, double by, double r,
                   Rgb color, ParsingClass cls) {
  Image& img = *canvas.image;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - r)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(std::max(ax, bx) + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - r)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(std::max(ay, by) + r)));
  const double abx = bx - ax;
  const double aby = by - ay;
  const double len2 = abx * abx + aby * aby;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      double t = 0.0;
      if (len2 > 0.0) t = std::clamp(((px - ax) * abx + (py - ay) * aby) / len2, 0.0, 1.0);
      const double dx = px - (ax + t * abx);
      const double dy = py - (ay + t * aby);
      if (dx * dx + dy * dy > r * r) continue;
      img.set(x, y, color);
      canvas.parsing->set(x, y, cls);
    }
  }
}

void paint_rect(PersonCanvas canvas, double rx0, double ry0, double rx1, double ry1, Rgb color,
                ParsingClass cls) {
  Image& img = *canvas.image;
  const int x0 = std::max(0, static_cast<int>(std::floor(rx0)));
  const int x1 = std::min(img.width - 1, static_cast<int>(std::ceil(rx1)));
  const int y0 = std::max(0, static_cast<int>(std::floor(ry0)));
  const int y1 = std::min(img.height - 1, static_cast<int>(std::ceil(ry1)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      if (px < rx0 || px > rx1 || py < ry0 || py > ry1) continue;
      img.set(x, y, color);
      canvas.parsing->set(x, y, cls);
    }
  }
}

Rgb person_palette(int person, int slot) {
  static constexpr Rgb kTorso[] = {{200, 60, 60},  {60, 120, 200}, {70, 170, 90},
                                   {190, 150, 40}, {150, 80, 180}, {210, 110, 60}};
  return kTorso[static_cast<size_t>((person * 2 + slot) % 6)];
}

}  // namespace

FixtureScene make_synthetic_scene(uint64_t seed) {
  Rng rng(seed);
  constexpr int kWidths[] = {256, 288, 320};
  constexpr int kHeights[] = {224, 256};
  const int width = kWidths[rng.below(3)];
  const int height = kHeights[rng.below(2)];
  const int personCount = 2 + static_cast<int>(rng.below(3));

  FixtureScene scene;
  scene.annotation.imagePath = "<synthetic>";
  scene.annotation.width = width;
  scene.annotation.height = height;
  scene.image = Image(width, height);

  // simple seeded background gradient
  const uint8_t bgR = static_cast<uint8_t>(90 + rng.below(60));
  const uint8_t bgG = static_cast<uint8_t>(110 + rng.below(60));
  const uint8_t bgB = static_cast<uint8_t>(130 + rng.below(60));
  for (int y = 0; y < height; ++y) {
    const auto fade = static_cast<uint8_t>(40.0 * y / height);
    for (int x = 0; x < width; ++x)
      scene.image.set(x, y, {static_cast<uint8_t>(bgR - fade / 2),
                             static_cast<uint8_t>(bgG - fade / 2),
                             static_cast<uint8_t>(bgB - fade)});
  }

  const double slotWidth = static_cast<double>(width) / personCount;
  for (int p = 0; p < personCount; ++p) {
    GroupAnnotation::Person person;
    person.id = p;
    auto parsing = std::make_shared<ParsingMap>(width, height);
    PersonCanvas canvas{&scene.image, parsing.get()};

    const double cx = slotWidth * (p + 0.5) + rng.uniform(-0.12, 0.12) * slotWidth;
    const double bodyH = height * rng.uniform(0.58, 0.74);
    const double top = height * rng.uniform(0.06, 0.14);
    const double headR = bodyH * 0.085;
    const double headY = top + headR;
    const double shoulderY = headY + headR * 1.7;
    const double shoulderHalf = bodyH * rng.uniform(0.10, 0.13);
    const double hipY = shoulderY + bodyH * 0.34;
    const double hipHalf = shoulderHalf * 0.8;
    const double kneeY = hipY + bodyH * 0.22;
    const double ankleY = hipY + bodyH * 0.44;
    const double limbR = bodyH * 0.045;

    const Rgb skin = {224, 186, 150};
    const Rgb hair = {70, 48, 30};
    const Rgb torsoColor = person_palette(p, 0);
    const Rgb lowerColor = person_palette(p, 1);
    const Rgb legColor = {60, 60, 70};

    struct Pt {
      double x, y;
    };
    auto arm = [&](double side) {
      const Pt shoulder{cx + side * shoulderHalf, shoulderY};
      const double upperLen = bodyH * 0.17;
      const double foreLen = bodyH * 0.16;
      const double a1 = rng.uniform(0.25, 0.95);  // radians out from straight down
      const double a2 = rng.uniform(-0.5, 1.1);
      const Pt elbow{shoulder.x + side * upperLen * std::sin(a1), shoulder.y + upperLen * std::cos(a1)};
      const Pt wrist{elbow.x + side * foreLen * std::sin(a1 + a2), elbow.y + foreLen * std::cos(a1 + a2)};
      return std::array<Pt, 3>{shoulder, elbow, wrist};
    };
    const auto leftArm = arm(+1.0);   // image-left person side chosen as +x for variety
    const auto rightArm = arm(-1.0);

    // legs
    paint_capsule(canvas, cx - hipHalf * 0.6, hipY, cx - hipHalf * 0.7, kneeY, limbR, legColor,
                  ParsingClass::Legs);
    paint_capsule(canvas, cx - hipHalf * 0.7, kneeY, cx - hipHalf * 0.7, ankleY, limbR, legColor,
                  ParsingClass::Legs);
    paint_capsule(canvas, cx + hipHalf * 0.6, hipY, cx + hipHalf * 0.7, kneeY, limbR, legColor,
                  ParsingClass::Legs);
    paint_capsule(canvas, cx + hipHalf * 0.7, kneeY, cx + hipHalf * 0.7, ankleY, limbR, legColor,
                  ParsingClass::Legs);
    // lower clothes over the hips
    paint_rect(canvas, cx - hipHalf * 1.15, hipY - bodyH * 0.02, cx + hipHalf * 1.15,
               hipY + bodyH * 0.16, lowerColor, ParsingClass::LowerClothes);
    // torso
    paint_rect(canvas, cx - shoulderHalf, shoulderY - limbR, cx + shoulderHalf, hipY, torsoColor,
               ParsingClass::TorsoClothes);
    // arms and hands
    for (const auto& armPts : {leftArm, rightArm}) {
      paint_capsule(canvas, armPts[0].x, armPts[0].y, armPts[1].x, armPts[1].y, limbR * 0.9,
                    torsoColor, ParsingClass::Arms);
      paint_capsule(canvas, armPts[1].x, armPts[1].y, armPts[2].x, armPts[2].y, limbR * 0.8, skin,
                    ParsingClass::Arms);
      paint_disc(canvas, armPts[2].x, armPts[2].y, limbR, skin, ParsingClass::Hands);
    }
    // head: hair cap then face
    paint_disc(canvas, cx, headY - headR * 0.25, headR * 1.1, hair, ParsingClass::Hair);
    paint_disc(canvas, cx, headY + headR * 0.12, headR * 0.92, skin, ParsingClass::Face);

    auto set_joint = [&person](Joint j, double x, double y, double conf = 1.0) {
      person.skeleton.at(j) = {x, y, conf};
    };
    const double earConf = rng.bernoulli(0.2) ? 0.0 : 1.0;
    set_joint(Joint::Nose, cx, headY);
    set_joint(Joint::LeftEye, cx + headR * 0.35, headY - headR * 0.15);
    set_joint(Joint::RightEye, cx - headR * 0.35, headY - headR * 0.15);
    set_joint(Joint::LeftEar, cx + headR * 0.8, headY, earConf);
    set_joint(Joint::RightEar, cx - headR * 0.8, headY, earConf);
    set_joint(Joint::LeftShoulder, leftArm[0].x, leftArm[0].y);
    set_joint(Joint::RightShoulder, rightArm[0].x, rightArm[0].y);
    set_joint(Joint::LeftElbow, leftArm[1].x, leftArm[1].y);
    set_joint(Joint::RightElbow, rightArm[1].x, rightArm[1].y);
    set_joint(Joint::LeftWrist, leftArm[2].x, leftArm[2].y);
    set_joint(Joint::RightWrist, rightArm[2].x, rightArm[2].y);
    set_joint(Joint::LeftHip, cx + hipHalf * 0.6, hipY);
    set_joint(Joint::RightHip, cx - hipHalf * 0.6, hipY);
    set_joint(Joint::LeftKnee, cx + hipHalf * 0.7, kneeY);
    set_joint(Joint::RightKnee, cx - hipHalf * 0.7, kneeY);
    set_joint(Joint::LeftAnkle, cx + hipHalf * 0.7, ankleY);
    set_joint(Joint::RightAnkle, cx - hipHalf * 0.7, ankleY);

    // Full-body box around everything drawn, with margin; edge persons may
    // poke past the canvas so clamping paths get exercised.
    double minX = cx - shoulderHalf, maxX = cx + shoulderHalf;
    double minY = top - headR * 0.6, maxY = ankleY + limbR;
    for (const auto& armPts : {leftArm, rightArm})
      for (const Pt& pt : armPts) {
        minX = std::min(minX, pt.x - limbR * 1.5);
        maxX = std::max(maxX, pt.x + limbR * 1.5);
        maxY = std::max(maxY, pt.y + limbR * 1.5);
      }
    minX = std::min(minX, cx - headR * 1.2);
    maxX = std::max(maxX, cx + headR * 1.2);
    const double margin = bodyH * 0.03;
    person.bbox = {minX - margin, minY - margin, maxX + margin, maxY + margin};
    if (rng.bernoulli(0.2)) person.bbox.x1 -= rng.uniform(5.0, 25.0);
    if (rng.bernoulli(0.2)) person.bbox.x2 += rng.uniform(5.0, 25.0);

    person.parsing = std::move(parsing);
    scene.annotation.persons.push_back(std::move(person));
  }
  return scene;
}

FixtureDataset make_synthetic_dataset(const std::string& rootDir, const FixtureOptions& options) {
  FixtureDataset ds;
  ds.annotationsDir = (fs::path(rootDir) / "annotations").string();
  ds.imagesDir = (fs::path(rootDir) / "images").string();
  ds.parsingDir = (fs::path(rootDir) / "parsing").string();
  fs::create_directories(ds.annotationsDir);
  fs::create_directories(ds.imagesDir);
  fs::create_directories(ds.parsingDir);

  for (int i = 0; i < options.count; ++i) {
    const FixtureScene scene = make_synthetic_scene(derive_seed(options.seed, static_cast<uint64_t>(i)));
    char stem[32];
    std::snprintf(stem, sizeof(stem), "img_%04d", i);

    const std::string imageName = std::string(stem) + ".png";
    write_png_rgb((fs::path(ds.imagesDir) / imageName).string(), scene.image);

    nlohmann::ordered_json doc;
    doc["image"] = imageName;
    doc["width"] = scene.annotation.width;
    doc["height"] = scene.annotation.height;
    doc["persons"] = nlohmann::ordered_json::array();
    for (const auto& person : scene.annotation.persons) {
      const std::string parsingName = std::string(stem) + "_p" + std::to_string(person.id) + ".png";
      write_png_gray((fs::path(ds.parsingDir) / parsingName).string(), person.parsing->width,
                     person.parsing->height, person.parsing->labels);

      nlohmann::ordered_json kps = nlohmann::ordered_json::array();
      for (const Keypoint& kp : person.skeleton.joints)
        kps.push_back({kp.x, kp.y, kp.confidence});
      doc["persons"].push_back({{"id", person.id},
                                {"bbox", {person.bbox.x1, person.bbox.y1, person.bbox.x2,
                                          person.bbox.y2}},
                                {"keypoints", std::move(kps)},
                                {"parsing", "../parsing/" + parsingName}});
    }

    const std::string annPath = (fs::path(ds.annotationsDir) / (std::string(stem) + ".json")).string();
    std::ofstream out(annPath);
    if (!out) raise(Errc::IoError, "cannot write fixture annotation: " + annPath);
    out << doc.dump(2) << "\n";
    ds.annotationFiles.push_back(annPath);
  }
  return ds;
}

}  // namespace gf
