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

// Teach phase: drive a scripted path, then pick keyframes from the recorded
// frame sequence by feature attrition.

#ifndef FUNNELNAV_TEACH_H_
#define FUNNELNAV_TEACH_H_

#include <cstddef>
#include <vector>

#include "funnelnav/geometry.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

struct ScriptStep {
  MotionCommand cmd;
  double duration = 0.0;  // seconds
};

struct TeachScript {
  Pose start_pose;
  double dt = 0.1;
  std::vector<ScriptStep> steps;
  // The start frame must see at least this many landmarks.
  int min_features = 4;

  void validate() const;
};

// Raw recording: one pose and one observation set per frame. Frame 0 is the
// start pose; each step contributes round(duration / dt) frames (at least 1).
struct TeachRecording {
  std::vector<Pose> poses;
  std::vector<Observations> frames;
};

TeachRecording drive(const World& world, const CameraModel& cam,
                     const TeachScript& script);

struct KeyframeSelection {
  std::vector<std::size_t> frame_indices;
  std::vector<std::vector<TrackedFeature>> segment_features;
};

// Tracks the features of the current keyframe frame by frame (an id stays
// tracked while it is visible in every frame). When the tracked fraction
// drops below 0.5 the previous frame becomes the next keyframe and tracking
// restarts from it. If that previous frame is the keyframe itself, the
// current frame is taken instead. The final frame always closes the path.
// A segment store may come out empty; record() rejects that.
KeyframeSelection select_keyframes(const std::vector<Observations>& frames);

// Throws TeachDegenerateError when the start frame sees fewer than
// min_features landmarks, any frame sees fewer than two, or a keyframe
// transition shares no features.
VisualPath record(const World& world, const CameraModel& cam,
                  const TeachScript& script);

// Same, also returning the raw frame poses for plotting.
VisualPath record(const World& world, const CameraModel& cam,
                  const TeachScript& script, std::vector<Pose>* trajectory);

}  // namespace funnelnav

#endif  // FUNNELNAV_TEACH_H_
