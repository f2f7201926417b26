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

#include <algorithm>
#include <cmath>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

bool same_sign(double a, double b) {
  return a == 0.0 || b == 0.0 || std::signbit(a) == std::signbit(b);
}

struct SideMedians {
  std::optional<double> current;
  std::optional<double> keyframe;
};

SideMedians side_medians(const MatchSet& side) {
  if (side.empty()) return {};
  std::vector<double> c, k;
  c.reserve(side.size());
  k.reserve(side.size());
  for (const MatchPair& p : side) {
    c.push_back(p.u_current);
    k.push_back(p.u_keyframe);
  }
  return {median(std::move(c)), median(std::move(k))};
}

double roll_term(const SideMedians& s, double floor) {
  if (!s.current) return 0.0;
  return (*s.current - *s.keyframe) / std::max(std::abs(*s.keyframe), floor);
}

}  // namespace

void SlopedParams::validate() const {
  if (!(v_max > 0.0) || !(omega_max > 0.0) || !(sx_epsilon > 0.0) ||
      !(norm_floor > 0.0)) {
    throw ConfigError(
        "sloped: v_max, omega_max, sx_epsilon and norm_floor must be positive");
  }
}

TurnProfile radius_policy(double s_y, const SlopedParams& p) {
  return {p.v_max * std::clamp(s_y, 0.0, 1.0), p.omega_max};
}

TurnProfile quadratic_radius_policy(double s_y, const SlopedParams& p) {
  const double s = std::clamp(s_y, 0.0, 1.0);
  return {p.v_max * s * s, p.omega_max};
}

RadiusPolicy radius_policy_by_name(const std::string& name) {
  if (name == "linear") return radius_policy;
  if (name == "quadratic") return quadratic_radius_policy;
  throw ConfigError("sloped: unknown radius policy '" + name + "'");
}

double compute_s_y(const MatchSet& m) { return 1.0 - std_ratio(m); }

double compute_s_x(const MatchSet& m, const SlopedParams& p) {
  if (m.empty()) throw EmptyMatchError("roll slope of an empty match set");
  const auto [left, right] = split_sides(m);
  return roll_term(side_medians(left), p.norm_floor) +
         roll_term(side_medians(right), p.norm_floor);
}

SlopedState sloped_state(const MatchSet& m, const SlopedParams& p) {
  if (m.empty()) throw EmptyMatchError("sloped controller: no matches");
  const auto [left, right] = split_sides(m);
  const SideMedians l = side_medians(left);
  const SideMedians r = side_medians(right);

  SlopedState s;
  if (auto ratio = try_std_ratio(m)) s.s_y = 1.0 - *ratio;
  s.s_x = roll_term(l, p.norm_floor) + roll_term(r, p.norm_floor);
  s.mu_l_c = l.current;
  s.mu_l_j = l.keyframe;
  s.mu_r_c = r.current;
  s.mu_r_j = r.keyframe;
  if (r.current) {
    s.constraints[kRightMagnitude] = std::abs(*r.current) < std::abs(*r.keyframe);
    s.constraints[kRightSign] = same_sign(*r.current, *r.keyframe);
  }
  if (l.current) {
    s.constraints[kLeftMagnitude] = std::abs(*l.current) < std::abs(*l.keyframe);
    s.constraints[kLeftSign] = same_sign(*l.current, *l.keyframe);
  }
  return s;
}

MotionCommand sloped_command(const SlopedState& s, const SlopedParams& p,
                             const RadiusPolicy& policy) {
  int turn = 0;  // +1 left, -1 right
  if (s.inside()) {
    if (std::abs(s.s_x) <= p.sx_epsilon || !s.s_y) return {p.v_max, 0.0};
    turn = s.s_x < 0.0 ? 1 : -1;
  } else {
    // Leaving across the right median's magnitude line or the left median's
    // sign line means the robot drifted left of the lane.
    const bool wants_right =
        !s.constraints[kRightMagnitude] || !s.constraints[kLeftSign];
    const bool wants_left =
        !s.constraints[kLeftMagnitude] || !s.constraints[kRightSign];
    if (wants_right && wants_left) {
      turn = s.s_x < 0.0 ? 1 : -1;
    } else {
      turn = wants_left ? 1 : -1;
    }
  }
  const TurnProfile t =
      s.s_y ? policy(*s.s_y, p) : TurnProfile{0.0, p.omega_max};
  return {t.v, turn * t.omega_mag};
}

MotionCommand sloped_command(const MatchSet& m, const SlopedParams& p,
                             const RadiusPolicy& policy) {
  return sloped_command(sloped_state(m, p), p, policy);
}

}  // namespace funnelnav
