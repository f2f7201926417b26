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

#include "funnelnav/teach.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

constexpr double kKeepFraction = 0.5;

std::vector<int> ids_of(const Observations& obs) {
  std::vector<int> ids;
  ids.reserve(obs.size());
  for (const auto& kv : obs) ids.push_back(kv.first);
  return ids;
}

std::vector<int> still_visible(const std::vector<int>& tracked,
                               const Observations& frame) {
  std::vector<int> out;
  for (int id : tracked) {
    if (frame.count(id)) out.push_back(id);
  }
  return out;
}

std::vector<TrackedFeature> store(const std::vector<int>& ids,
                                  const Observations& start,
                                  const Observations& end) {
  std::vector<TrackedFeature> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back({id, start.at(id), end.at(id)});
  return out;
}

// A keyframe that sees nothing is replaced at the next frame.
bool below_threshold(std::size_t tracked, std::size_t initial) {
  return initial == 0 || static_cast<double>(tracked) <
         kKeepFraction * static_cast<double>(initial);
}

}  // namespace

void TeachScript::validate() const {
  if (!(dt > 0.0)) throw ConfigError("teach: dt must be positive");
  if (steps.empty()) throw ConfigError("teach: script has no steps");
  for (const ScriptStep& s : steps) {
    if (!(s.duration > 0.0)) {
      throw ConfigError("teach: step durations must be positive");
    }
    if (s.cmd.v < 0.0) throw ConfigError("teach: v must be non-negative");
  }
  if (min_features < 2) throw ConfigError("teach: min_features must be >= 2");
}

TeachRecording drive(const World& world, const CameraModel& cam,
                     const TeachScript& script) {
  script.validate();
  TeachRecording rec;
  Pose pose = script.start_pose;
  rec.poses.push_back(pose);
  rec.frames.push_back(visible_set(world, pose, cam));
  for (const ScriptStep& s : script.steps) {
    const long n = std::max(1L, std::lround(s.duration / script.dt));
    for (long k = 0; k < n; ++k) {
      pose = step(pose, s.cmd, script.dt);
      rec.poses.push_back(pose);
      rec.frames.push_back(visible_set(world, pose, cam));
    }
  }
  return rec;
}

KeyframeSelection select_keyframes(const std::vector<Observations>& frames) {
  if (frames.size() < 2) {
    throw TeachDegenerateError("teach drive produced fewer than two frames");
  }
  KeyframeSelection sel;
  std::size_t kf = 0;
  std::vector<int> tracked = ids_of(frames[0]);
  std::size_t initial = tracked.size();
  sel.frame_indices.push_back(0);

  auto close_segment = [&](std::size_t end, const std::vector<int>& ids) {
    sel.segment_features.push_back(store(ids, frames[kf], frames[end]));
    sel.frame_indices.push_back(end);
    kf = end;
    tracked = ids_of(frames[kf]);
    initial = tracked.size();
  };

  for (std::size_t i = 1; i < frames.size(); ++i) {
    std::vector<int> next = still_visible(tracked, frames[i]);
    if (!below_threshold(next.size(), initial)) {
      tracked = std::move(next);
      continue;
    }
    if (i - 1 != kf) {
      close_segment(i - 1, tracked);
      next = still_visible(tracked, frames[i]);
      if (!below_threshold(next.size(), initial)) {
        tracked = std::move(next);
        continue;
      }
    }
    // More than half lost in a single frame after the keyframe.
    close_segment(i, next);
  }
  if (kf != frames.size() - 1) close_segment(frames.size() - 1, tracked);
  return sel;
}

VisualPath record(const World& world, const CameraModel& cam,
                  const TeachScript& script, std::vector<Pose>* trajectory) {
  cam.validate();
  TeachRecording rec = drive(world, cam, script);
  if (static_cast<int>(rec.frames.front().size()) < script.min_features) {
    throw TeachDegenerateError(
        "start pose sees " + std::to_string(rec.frames.front().size()) +
        " landmarks, fewer than min_features = " +
        std::to_string(script.min_features));
  }
  for (std::size_t i = 0; i < rec.frames.size(); ++i) {
    if (rec.frames[i].size() < 2) {
      throw TeachDegenerateError("teach frame " + std::to_string(i) +
                                 " sees fewer than two landmarks");
    }
  }
  KeyframeSelection sel = select_keyframes(rec.frames);
  for (std::size_t k = 0; k < sel.segment_features.size(); ++k) {
    if (sel.segment_features[k].empty()) {
      throw TeachDegenerateError(
          "keyframes at frames " + std::to_string(sel.frame_indices[k]) +
          " and " + std::to_string(sel.frame_indices[k + 1]) +
          " share no features");
    }
  }
  VisualPath path;
  for (std::size_t k = 0; k < sel.frame_indices.size(); ++k) {
    const std::size_t f = sel.frame_indices[k];
    path.keyframes.push_back(
        {static_cast<int>(k), rec.poses[f], rec.frames[f]});
  }
  path.segment_features = std::move(sel.segment_features);
  if (trajectory) *trajectory = std::move(rec.poses);
  return path;
}

VisualPath record(const World& world, const CameraModel& cam,
                  const TeachScript& script) {
  return record(world, cam, script, nullptr);
}

}  // namespace funnelnav
