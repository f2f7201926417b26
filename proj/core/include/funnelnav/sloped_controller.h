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

// Sloped funnel lane controller.
//
// All matched features are split by the side they occupy in the destination
// keyframe and each side is summarised by its median. A single lane is built
// from the two medians (four constraints), and two slopes are added:
//
//   pitch  S_y = 1 - sigma(current) / sigma(keyframe)
//   roll   S_x = (mu_l^c - mu_l^j) / |mu_l^j| + (mu_r^c - mu_r^j) / |mu_r^j|
//
// The roll sign picks the turn direction inside the lane; the pitch sets the
// turning radius, shrinking to rotation in place as S_y approaches 0.

#ifndef FUNNELNAV_SLOPED_CONTROLLER_H_
#define FUNNELNAV_SLOPED_CONTROLLER_H_

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "funnelnav/geometry.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

struct SlopedParams {
  double v_max = 0.3;       // m/s
  double omega_max = 0.3;   // rad/s
  double sx_epsilon = 0.05; // dead band standing in for "S_x == 0"
  double norm_floor = 5.0;  // px, lower bound on |mu^j| in the roll terms

  void validate() const;
};

// Forward speed and yaw-rate magnitude for a turn.
struct TurnProfile {
  double v = 0.0;
  double omega_mag = 0.0;
};

// Maps the pitch slope to a turn. Must be monotone: smaller S_y, smaller
// radius.
using RadiusPolicy = std::function<TurnProfile(double s_y, const SlopedParams&)>;

// v = v_max * clamp(S_y, 0, 1), omega = omega_max, so the radius grows
// linearly from 0 (rotation in place) to v_max / omega_max.
TurnProfile radius_policy(double s_y, const SlopedParams& p);
// Alternative: radius proportional to clamp(S_y, 0, 1)^2.
TurnProfile quadratic_radius_policy(double s_y, const SlopedParams& p);

// Looks up a policy by name ("linear" or "quadratic"); throws ConfigError.
RadiusPolicy radius_policy_by_name(const std::string& name);

// Constraint order: right magnitude, left magnitude, right sign, left sign.
enum ConstraintIndex { kRightMagnitude = 0, kLeftMagnitude, kRightSign, kLeftSign };

struct SlopedState {
  std::optional<double> s_y;  // absent when the spread is degenerate
  double s_x = 0.0;
  std::optional<double> mu_l_c, mu_l_j, mu_r_c, mu_r_j;
  // A side without features leaves its two constraints satisfied.
  std::array<bool, 4> constraints{true, true, true, true};

  bool inside() const {
    return constraints[0] && constraints[1] && constraints[2] && constraints[3];
  }
};

// Throws DegenerateSpreadError when the std ratio is unavailable.
double compute_s_y(const MatchSet& m);

// Throws EmptyMatchError on an empty set.
double compute_s_x(const MatchSet& m, const SlopedParams& p);

// Medians, slopes and constraints for one tick. Throws EmptyMatchError.
SlopedState sloped_state(const MatchSet& m, const SlopedParams& p);

// Command for an already computed state.
MotionCommand sloped_command(const SlopedState& s, const SlopedParams& p,
                             const RadiusPolicy& policy = radius_policy);

MotionCommand sloped_command(const MatchSet& m, const SlopedParams& p,
                             const RadiusPolicy& policy = radius_policy);

}  // namespace funnelnav

#endif  // FUNNELNAV_SLOPED_CONTROLLER_H_
