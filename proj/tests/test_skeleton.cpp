// Copyright (c) 2026 The groupforge Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "groupforge/core/error.hpp"
#include "groupforge/core/seed.hpp"
#include "groupforge/skeleton/augment.hpp"
#include "groupforge/skeleton/rasterize.hpp"

using namespace gf;

namespace {

Skeleton arm_skeleton() {
  Skeleton s;
  s.at(Joint::LeftShoulder) = {0, 10, 1.0};
  s.at(Joint::LeftElbow) = {10, 10, 1.0};
  s.at(Joint::LeftWrist) = {20, 10, 1.0};
  return s;
}

Skeleton random_full_skeleton(Rng& rng) {
  Skeleton s;
  for (Keypoint& kp : s.joints) kp = {rng.uniform(0, 200), rng.uniform(0, 200), 1.0};
  return s;
}

// Independent rotation oracle on the complex plane (y-down plane keeps the
// same matrix, exp(i*theta) with +theta turning x toward +y).
std::complex<double> rotate_cplx(std::complex<double> p, std::complex<double> pivot,
                                 double angleDeg) {
  const double rad = angleDeg * std::numbers::pi / 180.0;
  return pivot + (p - pivot) * std::polar(1.0, rad);
}

// Independent splitmix64 harness, re-implemented from the documented
// generator contract rather than reusing Rng.
struct HarnessRng {
  uint64_t state;
  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  uint64_t below(uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }
};

}  // namespace

TEST_CASE("rotate_limb unit rotation in y-down coordinates") {
  const Skeleton s = arm_skeleton();
  const Skeleton rotated = rotate_limb(s, Joint::LeftElbow, 90.0);
  CHECK(rotated.at(Joint::LeftWrist).x == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rotated.at(Joint::LeftWrist).y == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(rotated.at(Joint::LeftShoulder).x == 0.0);  // upstream joints untouched
  CHECK(rotated.at(Joint::LeftElbow).x == 10.0);
}

TEST_CASE("rotate_limb with angle zero is the identity") {
  const Skeleton s = arm_skeleton();
  CHECK(rotate_limb(s, Joint::LeftElbow, 0.0) == s);
}

TEST_CASE("shoulder pivot moves elbow and wrist, distances preserved") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Skeleton s = random_full_skeleton(rng);
    const double angle = rng.uniform(-170, 170);
    const Skeleton rotated = rotate_limb(s, Joint::LeftShoulder, angle);

    const Keypoint& pivot = s.at(Joint::LeftShoulder);
    for (Joint j : {Joint::LeftElbow, Joint::LeftWrist}) {
      const auto expected = rotate_cplx({s.at(j).x, s.at(j).y}, {pivot.x, pivot.y}, angle);
      CHECK(rotated.at(j).x == doctest::Approx(expected.real()).epsilon(1e-9));
      CHECK(rotated.at(j).y == doctest::Approx(expected.imag()).epsilon(1e-9));

      const double before = std::hypot(s.at(j).x - pivot.x, s.at(j).y - pivot.y);
      const double after = std::hypot(rotated.at(j).x - pivot.x, rotated.at(j).y - pivot.y);
      CHECK(std::abs(after - before) <= 1e-9 * (1.0 + before));
    }
    // everything outside the left arm chain is untouched
    CHECK(rotated.at(Joint::RightWrist) == s.at(Joint::RightWrist));
    CHECK(rotated.at(Joint::Nose) == s.at(Joint::Nose));
  }
}

TEST_CASE("rotate then rotate back recovers the skeleton") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const Skeleton s = random_full_skeleton(rng);
    const Joint pivots[] = {Joint::LeftShoulder, Joint::LeftElbow, Joint::RightShoulder,
                            Joint::RightElbow, Joint::LeftHip, Joint::RightKnee};
    const Joint pivot = pivots[rng.below(6)];
    const double angle = rng.uniform(-170, 170);
    const Skeleton roundTrip = rotate_limb(rotate_limb(s, pivot, angle), pivot, -angle);
    for (int j = 0; j < kJointCount; ++j) {
      CHECK(std::abs(roundTrip.joints[j].x - s.joints[j].x) <= 1e-6);
      CHECK(std::abs(roundTrip.joints[j].y - s.joints[j].y) <= 1e-6);
    }
  }
}

TEST_CASE("rotate_limb rejects missing joints") {
  Skeleton s = arm_skeleton();
  s.at(Joint::LeftWrist).confidence = 0.0;
  CHECK_THROWS_AS(rotate_limb(s, Joint::LeftElbow, 30.0), Error);
  CHECK_THROWS_AS(rotate_limb(s, Joint::LeftShoulder, 30.0), Error);
  CHECK_THROWS_AS(rotate_limb(Skeleton{}, Joint::LeftElbow, 30.0), Error);
}

TEST_CASE("augment_skeleton with a degenerate range is the identity") {
  AugmentPolicy policy = AugmentPolicy::defaults();
  policy.angleMinDeg = 0.0;
  policy.angleMaxDeg = 0.0;
  const Skeleton s = arm_skeleton();
  // only left-arm limbs available on this skeleton
  const auto [out, record] = augment_skeleton(s, SeedSpec{1, 1}, policy);
  CHECK(out == s);
  REQUIRE(record.rotations.size() == 1);
  CHECK(record.rotations[0].angleDeg == 0.0);
}

TEST_CASE("augment_skeleton is a pure function of the seed") {
  Rng rng(6);
  const Skeleton s = random_full_skeleton(rng);
  const AugmentPolicy policy = AugmentPolicy::defaults();
  const auto [a1, r1] = augment_skeleton(s, SeedSpec{42, 9}, policy);
  const auto [a2, r2] = augment_skeleton(s, SeedSpec{42, 9}, policy);
  CHECK(a1 == a2);
  REQUIRE(r1.rotations.size() == r2.rotations.size());
  for (size_t i = 0; i < r1.rotations.size(); ++i) {
    CHECK(r1.rotations[i].limb == r2.rotations[i].limb);
    CHECK(r1.rotations[i].angleDeg == r2.rotations[i].angleDeg);
  }
}

TEST_CASE("augment draws replay on an independent splitmix64 harness") {
  Rng seedRng(7);
  AugmentPolicy policy;
  policy.candidateLimbs = {{Side::Right, LimbSegment::Forearm}};
  policy.angleMinDeg = 15.0;
  policy.angleMaxDeg = 75.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Skeleton s = random_full_skeleton(seedRng);
    const SeedSpec seed{seedRng.next_u64(), 3};
    const auto [out, record] = augment_skeleton(s, seed, policy);
    REQUIRE(record.rotations.size() == 1);
    const double angle = record.rotations[0].angleDeg;
    CHECK(std::abs(angle) >= 15.0);
    CHECK(std::abs(angle) <= 75.0);

    // replay: one candidate -> below(1) consumes one draw, then magnitude,
    // then the sign bit
    HarnessRng harness{seed.mixed()};
    (void)harness.below(1);
    const double magnitude = 15.0 + (75.0 - 15.0) * harness.nextDouble();
    const double sign = (harness.next() & 1u) ? 1.0 : -1.0;
    CHECK(angle == doctest::Approx(magnitude * sign).epsilon(1e-12));
  }
}

TEST_CASE("augment_skeleton reports NoRotatableLimb") {
  Skeleton s;  // everything missing
  CHECK_THROWS_AS(augment_skeleton(s, SeedSpec{0, 0}, AugmentPolicy::defaults()), Error);
}

TEST_CASE("limb_region boxes") {
  const Skeleton s = arm_skeleton();
  const BBox forearm = limb_region(s, {Side::Left, LimbSegment::Forearm}, 0.25);
  CHECK(forearm == BBox{7.5, 7.5, 22.5, 12.5});

  const BBox flat = limb_region(s, {Side::Left, LimbSegment::Forearm}, 0.0);
  CHECK(flat == BBox{10.0, 10.0, 20.0, 10.0});  // degenerate height

  const BBox hand = limb_region(s, {Side::Left, LimbSegment::Hand}, 0.25, 0.4);
  CHECK(hand == BBox{16.0, 6.0, 24.0, 14.0});

  Skeleton missing = s;
  missing.at(Joint::LeftWrist).confidence = 0.0;
  CHECK_THROWS_AS(limb_region(missing, {Side::Left, LimbSegment::Forearm}, 0.25), Error);
}

TEST_CASE("limb_region always contains both endpoints") {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const Skeleton s = random_full_skeleton(rng);
    for (Side side : {Side::Left, Side::Right}) {
      for (LimbSegment seg : {LimbSegment::UpperArm, LimbSegment::Forearm}) {
        const BBox box = limb_region(s, {side, seg}, rng.uniform(0.0, 0.5));
        const Joint a = seg == LimbSegment::UpperArm
                            ? (side == Side::Left ? Joint::LeftShoulder : Joint::RightShoulder)
                            : (side == Side::Left ? Joint::LeftElbow : Joint::RightElbow);
        const Joint b = seg == LimbSegment::UpperArm
                            ? (side == Side::Left ? Joint::LeftElbow : Joint::RightElbow)
                            : (side == Side::Left ? Joint::LeftWrist : Joint::RightWrist);
        for (Joint j : {a, b}) {
          CHECK(s.at(j).x >= box.x1);
          CHECK(s.at(j).x <= box.x2);
          CHECK(s.at(j).y >= box.y1);
          CHECK(s.at(j).y <= box.y2);
        }
      }
    }
  }
}

TEST_CASE("topology is a 16-edge tree with arm chains") {
  const auto limbs = limb_topology();
  CHECK(limbs.size() == 16);
  std::set<int> children;
  for (const Limb& l : limbs) CHECK(children.insert(static_cast<int>(l.child)).second);
  CHECK(children.size() == 16);  // every joint except the root appears once as child
  CHECK(children.find(static_cast<int>(Joint::Nose)) == children.end());

  const auto leftChain = chain_after(Joint::LeftShoulder);
  REQUIRE(leftChain.size() == 2);
  CHECK(leftChain[0] == Joint::LeftElbow);
  CHECK(leftChain[1] == Joint::LeftWrist);
}

TEST_CASE("rasterize_skeleton basics") {
  const Skeleton empty;  // all confidence zero
  const Image black = rasterize_skeleton(empty, 64, 64);
  for (uint8_t v : black.rgb) CHECK(v == 0);

  Rng rng(9);
  const Skeleton s = random_full_skeleton(rng);
  CHECK(rasterize_skeleton(s, 128, 128) == rasterize_skeleton(s, 128, 128));

  // confidence above zero must not matter
  Skeleton half = s;
  for (Keypoint& kp : half.joints) kp.confidence = 0.5;
  CHECK(rasterize_skeleton(half, 128, 128) == rasterize_skeleton(s, 128, 128));
}

TEST_CASE("single limb pixel count equals the brute-force capsule area") {
  Skeleton s;
  s.at(Joint::LeftShoulder) = {100, 256, 1.0};
  s.at(Joint::LeftElbow) = {300, 256, 1.0};
  SkeletonStyle style;
  style.lineWidth = 3.0;
  style.jointRadiusFactor = 1.0;  // joint discs stay inside the capsule
  const Image map = rasterize_skeleton(s, 512, 512, style);

  size_t drawn = 0;
  for (size_t i = 0; i < map.rgb.size(); i += 3)
    drawn += (map.rgb[i] | map.rgb[i + 1] | map.rgb[i + 2]) != 0;

  const double radius = 3.0 / 2.0;  // min(512,512)/512 keeps the width as-is
  size_t expected = 0;
  for (int y = 0; y < 512; ++y)
    for (int x = 0; x < 512; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      const double t = std::clamp((px - 100.0) / 200.0, 0.0, 1.0);
      const double dx = px - (100.0 + 200.0 * t);
      const double dy = py - 256.0;
      expected += dx * dx + dy * dy <= radius * radius;
    }
  CHECK(drawn == expected);
}
