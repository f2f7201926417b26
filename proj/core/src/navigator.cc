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

#include "funnelnav/navigator.h"

#include <algorithm>
#include <string>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

void fill_statistics(const MatchSet& m, TickRecord& rec) {
  rec.nmf = static_cast<int>(m.size());
  rec.std_ratio = try_std_ratio(m);
  if (!m.empty()) {
    rec.ed = median_distance(m);
    rec.mse = mse(m);
  } else {
    rec.ed.reset();
    rec.mse.reset();
  }
}

void check_start(const World& world, const CameraModel& cam,
                 const VisualPath& path, const Pose& start,
                 const NavigatorConfig& cfg) {
  const Observations seen = visible_set(world, start, cam);
  int count = 0;
  for (const TrackedFeature& f : path.segment_features.front()) {
    if (seen.count(f.id)) ++count;
  }
  if (count < cfg.threshold2_features) {
    throw InvalidPathError("start pose sees " + std::to_string(count) +
                           " features of the first segment, need " +
                           std::to_string(cfg.threshold2_features));
  }
}

}  // namespace

const char* to_string(ControllerKind c) {
  return c == ControllerKind::kStandard ? "standard" : "sloped";
}

ControllerKind controller_from_string(const std::string& name) {
  if (name == "standard") return ControllerKind::kStandard;
  if (name == "sloped") return ControllerKind::kSloped;
  throw ConfigError("unknown controller '" + name + "'");
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kDone:
      return "done";
    case Outcome::kLost:
      return "lost";
    case Outcome::kTimeout:
      return "timeout";
    case Outcome::kCollision:
      return "collision";
  }
  return "?";
}

void NavigatorConfig::validate() const {
  if (!(threshold1_ed > 0.0)) {
    throw ConfigError("navigator: threshold1_ed must be positive");
  }
  if (threshold2_features < 2) {
    throw ConfigError("navigator: threshold2_features must be >= 2");
  }
  if (threshold3_time < 1 || max_ticks < 1) {
    throw ConfigError("navigator: threshold3_time and max_ticks must be >= 1");
  }
  if (!(dt > 0.0)) throw ConfigError("navigator: dt must be positive");
  if (robot_radius < 0.0) {
    throw ConfigError("navigator: robot_radius must be non-negative");
  }
  standard.validate();
  sloped.validate();
  radius_policy_by_name(radius_policy);
}

bool should_switch(const MatchSet& m, const NavigatorConfig& cfg) {
  if (m.empty()) return false;
  const double ed = median_distance(m);
  if (auto ratio = try_std_ratio(m)) {
    return *ratio > 1.0 && ed < cfg.threshold1_ed;
  }
  return ed < 0.5 * cfg.threshold1_ed;
}

RunTrace navigate(const World& world, const CameraModel& cam,
                  const VisualPath& path, const Pose& start,
                  const NavigatorConfig& cfg, const NoiseModel& noise) {
  cfg.validate();
  noise.validate();
  path.validate(cam);
  check_start(world, cam, path, start, cfg);

  const RadiusPolicy policy = radius_policy_by_name(cfg.radius_policy);
  const int last_segment = static_cast<int>(path.segment_count()) - 1;
  NoiseStream stream(noise);

  RunTrace trace;
  Pose pose = start;
  int segment = 0;
  MatchSet tracked;
  bool rematch = true;
  int stopped_ticks = 0;

  auto finish = [&](TickRecord rec, Outcome o) {
    rec.events.emplace_back(to_string(o));
    trace.ticks.push_back(std::move(rec));
    trace.outcome = o;
    trace.final_pose = pose;
    return trace;
  };

  for (int tick = 0; tick < cfg.max_ticks; ++tick) {
    TickRecord rec;
    rec.tick = tick;
    rec.pose = pose;
    rec.segment = segment;

    const Observations seen = visible_set(world, pose, cam);
    const Keyframe* dest = &path.keyframes[segment + 1];
    MatchSet m = rematch ? match(seen, *dest, stream)
                         : track(tracked, seen, stream);
    if (stopped_ticks > 0 &&
        static_cast<int>(m.size()) >= cfg.threshold2_features) {
      rec.events.emplace_back("recovered");
      stopped_ticks = 0;
    }
    rematch = false;
    fill_statistics(m, rec);

    if (should_switch(m, cfg)) {
      rec.events.emplace_back("switch");
      ++trace.switches;
      if (segment == last_segment) return finish(std::move(rec), Outcome::kDone);
      ++segment;
      dest = &path.keyframes[segment + 1];
      tracked = match(seen, *dest, stream);
      stopped_ticks = 0;
      trace.ticks.push_back(std::move(rec));
      continue;
    }

    if (static_cast<int>(m.size()) >= cfg.threshold2_features) {
      if (cfg.controller == ControllerKind::kSloped) {
        SlopedState state = sloped_state(m, cfg.sloped);
        rec.cmd = sloped_command(state, cfg.sloped, policy);
        rec.sloped = std::move(state);
      } else {
        rec.cmd = standard_command(m, cfg.standard);
      }
      tracked = std::move(m);
      pose = step(pose, rec.cmd, cfg.dt);
      if (world.collides(pose.position(), cfg.robot_radius)) {
        return finish(std::move(rec), Outcome::kCollision);
      }
      trace.ticks.push_back(std::move(rec));
      continue;
    }

    // Too few features: hold still and re-match against the destination.
    rec.events.emplace_back("stop");
    rematch = true;
    if (++stopped_ticks >= cfg.threshold3_time) {
      return finish(std::move(rec), Outcome::kLost);
    }
    trace.ticks.push_back(std::move(rec));
  }
  trace.outcome = Outcome::kTimeout;
  trace.final_pose = pose;
  if (!trace.ticks.empty()) trace.ticks.back().events.emplace_back("timeout");
  return trace;
}

}  // namespace funnelnav
