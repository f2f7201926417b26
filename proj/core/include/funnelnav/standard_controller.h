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

// Baseline funnel lane controller: every matched feature votes for a
// direction from its two funnel constraints and the majority wins. Speeds are
// fixed, so every turn has the same radius v0 / omega0.

#ifndef FUNNELNAV_STANDARD_CONTROLLER_H_
#define FUNNELNAV_STANDARD_CONTROLLER_H_

#include "funnelnav/geometry.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

enum class Steer { kForward, kLeft, kRight };

const char* to_string(Steer s);

struct StandardParams {
  double v0 = 0.3;      // m/s
  double omega0 = 0.3;  // rad/s

  void validate() const;
};

struct SteerDecision {
  Steer direction = Steer::kForward;
  int n_forward = 0;
  int n_left = 0;
  int n_right = 0;
};

// Vote of one feature with current coordinate u_c and keyframe coordinate
// u_j. For a right-side keyframe feature, |u_c| >= |u_j| means the robot left
// the lane to the left (turn right) and a sign flip means it left to the
// right (turn left); left-side features mirror this. A zero coordinate
// matches either sign.
Steer feature_vote(double u_c, double u_j);

// Tally over all pairs; ties prefer forward, then left, then right.
// Throws EmptyMatchError on an empty set.
SteerDecision standard_decision(const MatchSet& m);

MotionCommand standard_command(const MatchSet& m, const StandardParams& p);

// True when every pair votes forward, i.e. the pose lies in the combined
// funnel lane of the matched features.
bool inside_combined_lane(const MatchSet& m);

}  // namespace funnelnav

#endif  // FUNNELNAV_STANDARD_CONTROLLER_H_
