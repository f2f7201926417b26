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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

constexpr double kStraightOmega = 1e-9;

}  // namespace

double normalize_angle(double angle) {
  double a = std::remainder(angle, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

void CameraModel::validate() const {
  if (!(focal_length > 0.0) || !(half_width > 0.0) || !(min_depth > 0.0)) {
    throw ConfigError(
        "camera: focal_length, half_width and min_depth must be positive");
  }
}

double Rect::distance_to(Vec2 p) const {
  const double dx = std::max({min_x - p.x, 0.0, p.x - max_x});
  const double dy = std::max({min_y - p.y, 0.0, p.y - max_y});
  return std::hypot(dx, dy);
}

World::World(Rect bounds, std::vector<Landmark> landmarks,
             std::vector<Rect> obstacles)
    : bounds_(bounds),
      landmarks_(std::move(landmarks)),
      obstacles_(std::move(obstacles)) {
  std::sort(landmarks_.begin(), landmarks_.end(),
            [](const Landmark& a, const Landmark& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < landmarks_.size(); ++i) {
    if (i > 0 && landmarks_[i].id == landmarks_[i - 1].id) {
      throw ConfigError("world: duplicate landmark id " +
                        std::to_string(landmarks_[i].id));
    }
    if (!bounds_.contains({landmarks_[i].x, landmarks_[i].y})) {
      throw ConfigError("world: landmark " + std::to_string(landmarks_[i].id) +
                        " lies outside the bounds");
    }
  }
}

const Landmark* World::find(int id) const {
  auto it = std::lower_bound(
      landmarks_.begin(), landmarks_.end(), id,
      [](const Landmark& l, int key) { return l.id < key; });
  if (it == landmarks_.end() || it->id != id) return nullptr;
  return &*it;
}

World World::without(const std::vector<int>& removed_ids) const {
  std::vector<Landmark> kept;
  kept.reserve(landmarks_.size());
  for (const Landmark& l : landmarks_) {
    if (std::find(removed_ids.begin(), removed_ids.end(), l.id) ==
        removed_ids.end()) {
      kept.push_back(l);
    }
  }
  return World(bounds_, std::move(kept), obstacles_);
}

bool World::collides(Vec2 p, double radius) const {
  if (p.x - radius < bounds_.min_x || p.x + radius > bounds_.max_x ||
      p.y - radius < bounds_.min_y || p.y + radius > bounds_.max_y) {
    return true;
  }
  return std::any_of(obstacles_.begin(), obstacles_.end(),
                     [&](const Rect& r) { return r.distance_to(p) <= radius; });
}

double MotionCommand::radius() const {
  if (std::abs(omega) < kStraightOmega) {
    return std::numeric_limits<double>::infinity();
  }
  return v / std::abs(omega);
}

std::optional<double> project(const Landmark& landmark, const Pose& pose,
                              const CameraModel& cam) {
  const double dx = landmark.x - pose.x;
  const double dy = landmark.y - pose.y;
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  const double depth = dx * c + dy * s;
  const double lateral_left = -dx * s + dy * c;
  if (depth < cam.min_depth) return std::nullopt;
  const double u = cam.focal_length * (-lateral_left) / depth;
  if (std::abs(u) > cam.half_width) return std::nullopt;
  return u;
}

Observations visible_set(const World& world, const Pose& pose,
                         const CameraModel& cam) {
  Observations out;
  for (const Landmark& l : world.landmarks()) {
    if (auto u = project(l, pose, cam)) out.emplace_hint(out.end(), l.id, *u);
  }
  return out;
}

Pose step(const Pose& pose, const MotionCommand& cmd, double dt) {
  if (std::abs(cmd.omega) < kStraightOmega) {
    return Pose(pose.x + cmd.v * dt * std::cos(pose.theta),
                pose.y + cmd.v * dt * std::sin(pose.theta), pose.theta);
  }
  const double r = cmd.v / cmd.omega;
  const double heading = pose.theta + cmd.omega * dt;
  return Pose(pose.x + r * (std::sin(heading) - std::sin(pose.theta)),
              pose.y - r * (std::cos(heading) - std::cos(pose.theta)), heading);
}

}  // namespace funnelnav
