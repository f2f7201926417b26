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

#include "funnelnav/sloped_controller.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "funnelnav/errors.h"
#include "oracles.h"

namespace funnelnav {
namespace {

MatchSet from_pairs(std::initializer_list<std::pair<double, double>> uv) {
  MatchSet m;
  int id = 0;
  for (auto [c, j] : uv) m.push_back({++id, c, j});
  return m;
}

MatchSet random_set(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-160, 160), jitter(-20, 20);
  MatchSet m;
  for (int i = 0; i < n; ++i) {
    const double j = u(rng);
    m.push_back({i, j + jitter(rng), j});
  }
  return m;
}

int direction(const MotionCommand& c) {
  return c.omega > 0 ? 1 : (c.omega < 0 ? -1 : 0);
}

TEST(PitchSlope, Examples) {
  EXPECT_DOUBLE_EQ(compute_s_y(from_pairs({{-10, -10}, {30, 30}})), 0.0);
  EXPECT_DOUBLE_EQ(compute_s_y(from_pairs({{-20, -40}, {20, 40}})), 0.5);
  EXPECT_THROW(compute_s_y(from_pairs({{1, 2}})), DegenerateSpreadError);
}

TEST(PitchSlope, DecreasesAlongStraightApproach) {
  std::mt19937_64 rng(31);
  const World w = testing::corridor_world(rng);
  const CameraModel cam;
  Keyframe kf;
  kf.observations = visible_set(w, Pose(8.0, 0, 0), cam);
  double last = 2.0;
  for (int i = 0; i < 100; ++i) {
    const Pose p(6.0 + 0.0199 * i, 0, 0);
    const double sy = compute_s_y(match(visible_set(w, p, cam), kf, NoiseModel{}));
    EXPECT_LT(sy, last - 1e-9) << "pose " << i;
    last = sy;
  }
  EXPECT_GT(last, 0.0);
}

TEST(PitchSlope, TranslationInvariant) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 200; ++i) {
    MatchSet m = random_set(rng, 2 + i % 10);
    const double before = compute_s_y(m);
    for (MatchPair& p : m) p.u_current += 17.5;
    EXPECT_NEAR(compute_s_y(m), before, 1e-9);
  }
}

TEST(RollSlope, Examples) {
  const SlopedParams p;
  EXPECT_DOUBLE_EQ(compute_s_x(from_pairs({{-10, -10}, {20, 20}}), p), 0.0);
  EXPECT_DOUBLE_EQ(compute_s_x(from_pairs({{-5, -10}, {25, 20}}), p), 0.75);
  EXPECT_THROW(compute_s_x(MatchSet{}, p), EmptyMatchError);
}

TEST(RollSlope, FloorGuardsSmallMedians) {
  const SlopedParams p;  // floor 5 px
  EXPECT_DOUBLE_EQ(compute_s_x(from_pairs({{3, 1}}), p), 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(compute_s_x(from_pairs({{3, 0}}), p), 3.0 / 5.0);
}

TEST(RollSlope, ScaleInvariantPerSide) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> k(0.1, 10.0);
  SlopedParams p;
  p.norm_floor = 1e-9;
  for (int i = 0; i < 200; ++i) {
    MatchSet m = random_set(rng, 1 + i % 12);
    const double before = compute_s_x(m, p);
    const double kl = k(rng), kr = k(rng);
    for (MatchPair& q : m) {
      const double s = q.u_keyframe < 0 ? kl : kr;
      q.u_current *= s;
      q.u_keyframe *= s;
    }
    EXPECT_NEAR(compute_s_x(m, p), before, 1e-9 * (1 + std::abs(before)));
  }
}

TEST(RadiusPolicy, LinearExamples) {
  const SlopedParams p;
  EXPECT_EQ(radius_policy(0.0, p).v, 0.0);
  const TurnProfile one = radius_policy(1.0, p);
  EXPECT_DOUBLE_EQ(one.v / one.omega_mag, p.v_max / p.omega_max);
  const TurnProfile half = radius_policy(0.5, p);
  EXPECT_DOUBLE_EQ(half.v / half.omega_mag, 0.5 * p.v_max / p.omega_max);
  EXPECT_EQ(radius_policy(-0.4, p).v, 0.0);
  EXPECT_DOUBLE_EQ(radius_policy(3.0, p).v, p.v_max);
}

TEST(RadiusPolicy, MonotoneAndByName) {
  const SlopedParams p;
  for (const char* name : {"linear", "quadratic"}) {
    const RadiusPolicy f = radius_policy_by_name(name);
    double last = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const TurnProfile t = f(i / 100.0, p);
      const double r = t.v / t.omega_mag;
      EXPECT_GE(r, last);
      last = r;
    }
  }
  EXPECT_DOUBLE_EQ(quadratic_radius_policy(0.5, p).v, 0.25 * p.v_max);
  EXPECT_THROW(radius_policy_by_name("cubic"), ConfigError);
}

TEST(SlopedCommand, ForwardOnPath) {
  const SlopedParams p;
  // Both sides inside, identical relative shrink: S_x = 0.
  const MatchSet m = from_pairs({{-5, -10}, {-15, -30}, {10, 20}, {40, 80}});
  const SlopedState s = sloped_state(m, p);
  EXPECT_TRUE(s.inside());
  EXPECT_EQ(sloped_command(s, p), (MotionCommand{p.v_max, 0.0}));
}

TEST(SlopedCommand, SharpLeftNearRotationInPlace) {
  const SlopedParams p;
  // Right side only, shifted left by a pure rotation: spread unchanged.
  const MatchSet m = from_pairs({{60, 74}, {79, 93}, {20, 34}, {55, 69}});
  const SlopedState s = sloped_state(m, p);
  ASSERT_TRUE(s.inside());
  ASSERT_TRUE(s.s_y.has_value());
  EXPECT_NEAR(*s.s_y, 0.0, 1e-12);
  EXPECT_LT(s.s_x, -p.sx_epsilon);
  const MotionCommand c = sloped_command(s, p);
  EXPECT_NEAR(c.v, 0.0, 1e-12);
  EXPECT_EQ(c.omega, p.omega_max);
}

TEST(SlopedCommand, AmbiguityCasesSeparatedByPitch) {
  const SlopedParams p;
  const MatchSet rotated = from_pairs({{60, 74}, {79, 93}, {20, 34}, {55, 69}});
  const MatchSet behind = from_pairs({{55.5, 74}, {69.75, 93}, {25.5, 34}, {51.75, 69}});
  const MotionCommand a = sloped_command(rotated, p);
  const MotionCommand b = sloped_command(behind, p);
  EXPECT_GT(a.omega, 0.0);
  EXPECT_GT(b.omega, 0.0);
  EXPECT_LT(a.radius(), 0.25 * b.radius());
}

TEST(SlopedCommand, RightMagnitudeViolationTurnsRight) {
  const SlopedParams p;
  const MatchSet m = from_pairs({{-5, -10}, {30, 20}, {50, 40}});
  const SlopedState s = sloped_state(m, p);
  EXPECT_FALSE(s.constraints[kRightMagnitude]);
  EXPECT_LT(sloped_command(s, p).omega, 0.0);
}

TEST(SlopedCommand, OutsideEachConstraint) {
  const SlopedParams p;
  auto with = [](std::array<bool, 4> c, double sx) {
    SlopedState s;
    s.s_y = 0.5;
    s.s_x = sx;
    s.constraints = c;
    return s;
  };
  EXPECT_LT(sloped_command(with({false, true, true, true}, 0.2), p).omega, 0);
  EXPECT_LT(sloped_command(with({true, true, true, false}, 0.2), p).omega, 0);
  EXPECT_GT(sloped_command(with({true, false, true, true}, -0.2), p).omega, 0);
  EXPECT_GT(sloped_command(with({true, true, false, true}, -0.2), p).omega, 0);
  // Conflicting violations defer to the roll sign.
  EXPECT_GT(sloped_command(with({false, false, true, true}, -0.2), p).omega, 0);
  EXPECT_LT(sloped_command(with({false, false, true, true}, 0.2), p).omega, 0);
  // Radius follows the pitch; without a pitch, rotate in place.
  EXPECT_DOUBLE_EQ(sloped_command(with({false, true, true, true}, 0.2), p).v,
                   0.5 * p.v_max);
  SlopedState none = with({false, true, true, true}, 0.2);
  none.s_y.reset();
  EXPECT_EQ(sloped_command(none, p), (MotionCommand{0.0, -p.omega_max}));
  // Inside without a pitch: forward.
  SlopedState inside = with({true, true, true, true}, -0.7);
  inside.s_y.reset();
  EXPECT_EQ(sloped_command(inside, p), (MotionCommand{p.v_max, 0.0}));
}

TEST(SlopedCommand, MirrorSymmetry) {
  std::mt19937_64 rng(34);
  const SlopedParams p;
  for (int i = 0; i < 500; ++i) {
    MatchSet m = random_set(rng, 2 + i % 12);
    MatchSet mirrored = m;
    bool on_axis = false;
    for (MatchPair& q : mirrored) {
      q.u_current = -q.u_current;
      q.u_keyframe = -q.u_keyframe;
      on_axis |= q.u_keyframe == 0.0;
    }
    if (on_axis) continue;
    const SlopedState a = sloped_state(m, p), b = sloped_state(mirrored, p);
    EXPECT_NEAR(a.s_x, -b.s_x, 1e-12);
    ASSERT_EQ(a.s_y.has_value(), b.s_y.has_value());
    if (a.s_y) EXPECT_NEAR(*a.s_y, *b.s_y, 1e-12);
    const MotionCommand ca = sloped_command(a, p), cb = sloped_command(b, p);
    EXPECT_NEAR(ca.v, cb.v, 1e-12);
    EXPECT_EQ(direction(ca), -direction(cb));
  }
}

TEST(SlopedCommand, DirectionFromRollSignSpeedFromPitch) {
  const SlopedParams p;
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> sx(-2.0, 2.0), sy(-0.5, 1.5);
  for (int i = 0; i < 500; ++i) {
    SlopedState s;
    s.s_x = sx(rng);
    s.s_y = sy(rng);
    SlopedState t = s;
    // Same side of the dead band, different magnitude and pitch.
    t.s_x = s.s_x * 1.7;
    if (std::abs(s.s_x) <= p.sx_epsilon) t.s_x = s.s_x * 0.5;
    const MotionCommand a = sloped_command(s, p);
    EXPECT_EQ(direction(a), direction(sloped_command(t, p)));
    t = s;
    t.s_y = sy(rng);
    const MotionCommand b = sloped_command(t, p);
    EXPECT_EQ(direction(a), direction(b));
    if (direction(a) != 0) {
      EXPECT_DOUBLE_EQ(a.v, p.v_max * std::clamp(*s.s_y, 0.0, 1.0));
    }
  }
}

TEST(SlopedState, AtDestinationKeyframe) {
  std::mt19937_64 rng(36);
  const World w = testing::corridor_world(rng);
  const CameraModel cam;
  const SlopedParams p;
  Keyframe kf;
  kf.observations = visible_set(w, Pose(5.0, 0.1, 0.05), cam);
  const MatchSet exact = match(visible_set(w, Pose(5.0, 0.1, 0.05), cam), kf, NoiseModel{});
  const SlopedState at = sloped_state(exact, p);
  EXPECT_EQ(at.s_x, 0.0);
  ASSERT_TRUE(at.s_y.has_value());
  EXPECT_EQ(*at.s_y, 0.0);
  // The strict magnitude constraints sit exactly on their boundary here; a
  // hair before the keyframe all four hold.
  const double c = std::cos(0.05), s = std::sin(0.05);
  const Pose before(5.0 - 1e-6 * c, 0.1 - 1e-6 * s, 0.05);
  const SlopedState near =
      sloped_state(match(visible_set(w, before, cam), kf, NoiseModel{}), p);
  EXPECT_TRUE(near.inside());
  EXPECT_NEAR(near.s_x, 0.0, 1e-5);
  EXPECT_NEAR(*near.s_y, 0.0, 1e-5);
}

TEST(SlopedState, MissingSideLeavesConstraintsSatisfied) {
  const SlopedState s = sloped_state(from_pairs({{10, 20}, {30, 40}}), SlopedParams{});
  EXPECT_FALSE(s.mu_l_c.has_value());
  EXPECT_TRUE(s.constraints[kLeftMagnitude]);
  EXPECT_TRUE(s.constraints[kLeftSign]);
  EXPECT_THROW(sloped_state(MatchSet{}, SlopedParams{}), EmptyMatchError);
}

TEST(SlopedParamsTest, Validate) {
  SlopedParams p;
  EXPECT_NO_THROW(p.validate());
  p.sx_epsilon = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace funnelnav
