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

#include "funnelnav/standard_controller.h"

#include <algorithm>
#include <cmath>

#include "funnelnav/errors.h"

namespace funnelnav {

const char* to_string(Steer s) {
  switch (s) {
    case Steer::kForward:
      return "forward";
    case Steer::kLeft:
      return "left";
    case Steer::kRight:
      return "right";
  }
  return "?";
}

void StandardParams::validate() const {
  if (!(v0 > 0.0) || !(omega0 > 0.0)) {
    throw ConfigError("standard: v0 and omega0 must be positive");
  }
}

Steer feature_vote(double u_c, double u_j) {
  const bool same_sign =
      u_c == 0.0 || u_j == 0.0 || std::signbit(u_c) == std::signbit(u_j);
  const bool inside_magnitude = std::abs(u_c) < std::abs(u_j);
  // u_j == 0 is treated as a right-side feature.
  const bool right_side = u_j >= 0.0;
  // A sign flip dominates when both constraints fail.
  if (!same_sign) return right_side ? Steer::kLeft : Steer::kRight;
  if (!inside_magnitude) return right_side ? Steer::kRight : Steer::kLeft;
  return Steer::kForward;
}

SteerDecision standard_decision(const MatchSet& m) {
  if (m.empty()) throw EmptyMatchError("standard controller: no matches");
  SteerDecision d;
  for (const MatchPair& p : m) {
    switch (feature_vote(p.u_current, p.u_keyframe)) {
      case Steer::kForward:
        ++d.n_forward;
        break;
      case Steer::kLeft:
        ++d.n_left;
        break;
      case Steer::kRight:
        ++d.n_right;
        break;
    }
  }
  if (d.n_forward >= d.n_left && d.n_forward >= d.n_right) {
    d.direction = Steer::kForward;
  } else if (d.n_left >= d.n_right) {
    d.direction = Steer::kLeft;
  } else {
    d.direction = Steer::kRight;
  }
  return d;
}

MotionCommand standard_command(const MatchSet& m, const StandardParams& p) {
  switch (standard_decision(m).direction) {
    case Steer::kForward:
      return {p.v0, 0.0};
    case Steer::kLeft:
      return {p.v0, p.omega0};
    case Steer::kRight:
      return {p.v0, -p.omega0};
  }
  return {p.v0, 0.0};
}

bool inside_combined_lane(const MatchSet& m) {
  return std::all_of(m.begin(), m.end(), [](const MatchPair& p) {
    return feature_vote(p.u_current, p.u_keyframe) == Steer::kForward;
  });
}

}  // namespace funnelnav
