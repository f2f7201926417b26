/*
 * Copyright 2026 The funnelnav Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "funnelnav/geometry.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(NormalizeAngle, WrapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(normalize_angle(0.0), 0.0);
  EXPECT_DOUBLE_EQ(normalize_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(normalize_angle(-kPi), kPi);
  EXPECT_NEAR(normalize_angle(3 * kPi), kPi, 1e-12);
  EXPECT_NEAR(normalize_angle(2 * kPi + 0.25), 0.25, 1e-12);
  EXPECT_NEAR(normalize_angle(-0.5 - 4 * kPi), -0.5, 1e-12);
}

TEST(Project, LandmarkOnOpticalAxisIsCentered) {
  const auto u = project({1, 5.0, 0.0}, Pose(0, 0, 0), CameraModel{});
  ASSERT_TRUE(u.has_value());
  EXPECT_DOUBLE_EQ(*u, 0.0);
}

TEST(Project, MirroredLandmarksGiveOppositeCoordinates) {
  const CameraModel cam;
  const Pose pose(1.0, 2.0, 0.7);
  // Two landmarks at equal depth, mirrored across the heading line.
  const double c = std::cos(0.7), s = std::sin(0.7);
  const Landmark left{1, 1.0 + 4 * c - 0.5 * s, 2.0 + 4 * s + 0.5 * c};
  const Landmark right{2, 1.0 + 4 * c + 0.5 * s, 2.0 + 4 * s - 0.5 * c};
  const auto ul = project(left, pose, cam);
  const auto ur = project(right, pose, cam);
  ASSERT_TRUE(ul && ur);
  EXPECT_NEAR(*ul, -*ur, 1e-12);
  EXPECT_LT(*ul, 0.0);
}

TEST(Project, FocalLengthTwoHundredExample) {
  CameraModel cam;
  cam.focal_length = 200.0;
  // Facing +x, so the robot's right is -y.
  const auto u = project({1, 4.0, -1.0}, Pose(0, 0, 0), cam);
  ASSERT_TRUE(u.has_value());
  EXPECT_DOUBLE_EQ(*u, 50.0);
}

TEST(Project, HiddenBehindOrTooCloseOrBeyondBorder) {
  const CameraModel cam;
  EXPECT_FALSE(project({1, -2.0, 0.0}, Pose(0, 0, 0), cam));
  EXPECT_FALSE(project({1, 0.05, 0.0}, Pose(0, 0, 0), cam));
  // |u| = 277 * 2 / 1 > 160.
  EXPECT_FALSE(project({1, 1.0, 2.0}, Pose(0, 0, 0), cam));
  // Exactly at the border is still visible.
  CameraModel edge;
  edge.focal_length = 160.0;
  const auto u = project({1, 2.0, -2.0}, Pose(0, 0, 0), edge);
  ASSERT_TRUE(u);
  EXPECT_DOUBLE_EQ(*u, 160.0);
}

TEST(Project, ScaleConsistent) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.5, 6.0), l(-2.0, 2.0);
  const CameraModel cam;
  for (int i = 0; i < 200; ++i) {
    const double depth = d(rng), lat = l(rng);
    const auto a = project({1, depth, -lat}, Pose(0, 0, 0), cam);
    const auto b = project({1, 2 * depth, -2 * lat}, Pose(0, 0, 0), cam);
    ASSERT_EQ(a.has_value(), b.has_value());
    if (a) {
      EXPECT_NEAR(*a, *b, 1e-9);
    }
  }
}

TEST(Project, ApproachAlongAxisMovesFeaturesOutward) {
  const CameraModel cam;
  const Landmark l{1, 10.0, 0.8};
  double last = 0.0;
  for (int i = 0; i < 90; ++i) {
    const auto u = project(l, Pose(0.1 * i, 0, 0), cam);
    if (!u) break;
    EXPECT_GE(std::abs(*u), last);
    last = std::abs(*u);
  }
}

TEST(VisibleSet, EmptyWorldAndLandmarkBehind) {
  const World empty({-5, -5, 5, 5}, {});
  EXPECT_TRUE(visible_set(empty, Pose(0, 0, 0), CameraModel{}).empty());
  const World behind({-5, -5, 5, 5}, {{7, -3.0, 0.0}});
  EXPECT_TRUE(visible_set(behind, Pose(0, 0, 0), CameraModel{}).empty());
}

TEST(VisibleSet, HandComputedGrid) {
  const World w({-10, -10, 10, 10},
                {{1, 2.0, 0.0}, {2, 4.0, 1.0}, {3, 4.0, -1.0}, {4, 1.0, 3.0},
                 {5, -1.0, 0.0}});
  const Observations obs = visible_set(w, Pose(0, 0, 0), CameraModel{});
  ASSERT_EQ(obs.size(), 3u);
  EXPECT_DOUBLE_EQ(obs.at(1), 0.0);
  EXPECT_DOUBLE_EQ(obs.at(2), -277.0 / 4.0);
  EXPECT_DOUBLE_EQ(obs.at(3), 277.0 / 4.0);
}

TEST(Step, StillAndRotationInPlace) {
  const Pose p(1.0, -2.0, 0.3);
  EXPECT_EQ(step(p, {0, 0}, 0.1), p);
  const Pose q = step(Pose(0, 0, 0), {0, kPi}, 1.0);
  EXPECT_DOUBLE_EQ(q.x, 0.0);
  EXPECT_DOUBLE_EQ(q.y, 0.0);
  EXPECT_NEAR(q.theta, kPi, 1e-12);
}

TEST(Step, QuarterArcMatchesFineEuler) {
  const Pose exact = step(Pose(0, 0, 0), {1.0, 1.0}, kPi / 2);
  // Independent reference: forward Euler with a very small step.
  double x = 0, y = 0, th = 0;
  const double h = 1e-5;
  const int n = static_cast<int>(std::lround((kPi / 2) / h));
  const double hh = (kPi / 2) / n;
  for (int i = 0; i < n; ++i) {
    x += std::cos(th) * hh;
    y += std::sin(th) * hh;
    th += hh;
  }
  EXPECT_NEAR(exact.x, x, 1e-4);
  EXPECT_NEAR(exact.y, y, 1e-4);
  EXPECT_NEAR(exact.x, 1.0, 1e-12);
  EXPECT_NEAR(exact.y, 1.0, 1e-12);
  EXPECT_NEAR(exact.theta, kPi / 2, 1e-12);
}

TEST(Step, CompositionIsExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> v(0.0, 1.0), w(-2.0, 2.0),
      t(0.01, 2.0), th(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const Pose p(v(rng), v(rng), th(rng));
    const MotionCommand c{v(rng), i % 10 == 0 ? 0.0 : w(rng)};
    const double a = t(rng), b = t(rng);
    const Pose two = step(step(p, c, a), c, b);
    const Pose one = step(p, c, a + b);
    EXPECT_NEAR(two.x, one.x, 1e-9);
    EXPECT_NEAR(two.y, one.y, 1e-9);
    EXPECT_NEAR(normalize_angle(two.theta - one.theta), 0.0, 1e-9);
  }
}

TEST(Step, RotationInPlaceNeverTranslates) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> w(-5.0, 5.0);
  Pose p(0.4, -1.2, 0.1);
  for (int i = 0; i < 100; ++i) {
    const Pose q = step(p, {0.0, w(rng)}, 0.37);
    EXPECT_EQ(q.x, p.x);
    EXPECT_EQ(q.y, p.y);
    p = q;
  }
}

TEST(MotionCommandTest, Radius) {
  EXPECT_TRUE(std::isinf(MotionCommand{0.3, 0.0}.radius()));
  EXPECT_DOUBLE_EQ((MotionCommand{0.3, -0.3}.radius()), 1.0);
  EXPECT_DOUBLE_EQ((MotionCommand{0.0, 0.3}.radius()), 0.0);
}

TEST(WorldTest, RejectsDuplicatesAndOutOfBounds) {
  EXPECT_THROW(World({-1, -1, 1, 1}, {{1, 0, 0}, {1, 0.5, 0}}), ConfigError);
  EXPECT_THROW(World({-1, -1, 1, 1}, {{1, 2, 0}}), ConfigError);
}

TEST(WorldTest, FindWithoutAndCollisions) {
  const World w({-2, -2, 2, 2}, {{3, 1, 1}, {1, 0, 0}, {2, -1, 0}},
                {{0.5, -0.5, 1.0, 0.5}});
  ASSERT_NE(w.find(2), nullptr);
  EXPECT_EQ(w.find(9), nullptr);
  EXPECT_EQ(w.landmarks().front().id, 1);
  const World less = w.without({1, 3});
  ASSERT_EQ(less.landmarks().size(), 1u);
  EXPECT_EQ(less.landmarks()[0].id, 2);
  EXPECT_FALSE(w.collides({0, 0}, 0.1));
  EXPECT_TRUE(w.collides({0.45, 0}, 0.1));
  EXPECT_TRUE(w.collides({1.95, 0}, 0.1));
  EXPECT_TRUE(w.collides({3, 0}, 0.0));
}

TEST(CameraModelTest, Validate) {
  CameraModel c;
  EXPECT_NO_THROW(c.validate());
  c.half_width = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

}  // namespace
}  // namespace funnelnav
