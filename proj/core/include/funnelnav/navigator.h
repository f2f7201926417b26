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

// Repeat phase: follow a visual path segment by segment, switching keyframes
// on the spread/median criterion and stopping to re-match when too few
// features survive.

#ifndef FUNNELNAV_NAVIGATOR_H_
#define FUNNELNAV_NAVIGATOR_H_

#include <optional>
#include <string>
#include <vector>

#include "funnelnav/geometry.h"
#include "funnelnav/sloped_controller.h"
#include "funnelnav/standard_controller.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

enum class ControllerKind { kStandard, kSloped };

const char* to_string(ControllerKind c);
// Throws ConfigError on anything but "standard" / "sloped".
ControllerKind controller_from_string(const std::string& name);

struct NavigatorConfig {
  double threshold1_ed = 10.0;    // px, switch when ED drops below
  int threshold2_features = 4;    // minimum matches to keep driving
  int threshold3_time = 50;       // stopped ticks before giving up
  double dt = 0.1;                // s
  int max_ticks = 3000;
  double robot_radius = 0.0;      // m, for contact reporting only
  ControllerKind controller = ControllerKind::kSloped;
  StandardParams standard;
  SlopedParams sloped;
  std::string radius_policy = "linear";

  void validate() const;
};

enum class Outcome { kDone, kLost, kTimeout, kCollision };

const char* to_string(Outcome o);

struct TickRecord {
  int tick = 0;
  Pose pose;          // truth pose when the image was taken
  int segment = 0;    // active segment; destination keyframe is segment + 1
  MotionCommand cmd;  // zero on switch and stopped ticks
  int nmf = 0;
  std::optional<double> std_ratio;
  std::optional<double> ed;
  std::optional<double> mse;
  std::optional<SlopedState> sloped;
  std::vector<std::string> events;  // switch, stop, recovered + terminal tag
};

struct RunTrace {
  std::vector<TickRecord> ticks;
  Outcome outcome = Outcome::kTimeout;
  Pose final_pose;
  int switches = 0;
};

// StdRatio > 1 and ED < threshold1. Without a usable StdRatio, ED below
// half the threshold suffices. An empty set never switches.
bool should_switch(const MatchSet& m, const NavigatorConfig& cfg);

// Throws InvalidPathError when the path is malformed or the start pose sees
// fewer than threshold2 features of the first segment's store.
RunTrace navigate(const World& world, const CameraModel& cam,
                  const VisualPath& path, const Pose& start,
                  const NavigatorConfig& cfg, const NoiseModel& noise);

}  // namespace funnelnav

#endif  // FUNNELNAV_NAVIGATOR_H_
