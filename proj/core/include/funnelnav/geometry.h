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

// Planar world model: landmarks, a 1D pinhole camera looking along the
// robot heading, and exact unicycle integration.

#ifndef FUNNELNAV_GEOMETRY_H_
#define FUNNELNAV_GEOMETRY_H_

#include <map>
#include <optional>
#include <vector>

namespace funnelnav {

// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

// Robot pose in the world plane. Heading is CCW-positive, 0 along world +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Pose() = default;
  Pose(double x_in, double y_in, double theta_in)
      : x(x_in), y(y_in), theta(normalize_angle(theta_in)) {}

  Vec2 position() const { return {x, y}; }

  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Landmark {
  int id = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Landmark&, const Landmark&) = default;
};

// Image spans [-half_width, +half_width] pixels; u > 0 is the right side.
struct CameraModel {
  double focal_length = 277.0;
  double half_width = 160.0;
  double min_depth = 0.1;

  // Throws ConfigError when any field is not strictly positive.
  void validate() const;
};

// Axis-aligned rectangle, [min_x, max_x] x [min_y, max_y].
struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  // Euclidean distance from p to the rectangle (0 inside).
  double distance_to(Vec2 p) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

class World {
 public:
  World() = default;
  // Throws ConfigError on duplicate ids or landmarks outside bounds.
  World(Rect bounds, std::vector<Landmark> landmarks,
        std::vector<Rect> obstacles = {});

  const Rect& bounds() const { return bounds_; }
  const std::vector<Landmark>& landmarks() const { return landmarks_; }
  const std::vector<Rect>& obstacles() const { return obstacles_; }

  const Landmark* find(int id) const;

  // Copy of this world without the given landmark ids.
  World without(const std::vector<int>& removed_ids) const;

  // True when a disc of `radius` at p touches an obstacle or leaves the
  // bounds. Obstacles only report contact; they never hide landmarks.
  bool collides(Vec2 p, double radius) const;

  friend bool operator==(const World&, const World&) = default;

 private:
  Rect bounds_;
  std::vector<Landmark> landmarks_;  // sorted by id
  std::vector<Rect> obstacles_;
};

// Translational speed v >= 0 and signed yaw rate omega (CCW-positive).
struct MotionCommand {
  double v = 0.0;
  double omega = 0.0;

  // Turning radius v / |omega|; infinite when driving straight.
  double radius() const;

  friend bool operator==(const MotionCommand&, const MotionCommand&) = default;
};

// Horizontal image coordinate per landmark id.
using Observations = std::map<int, double>;

// Horizontal image coordinate of `landmark` seen from `pose`, or nothing when
// it is closer than min_depth along the optical axis or beyond the border.
std::optional<double> project(const Landmark& landmark, const Pose& pose,
                              const CameraModel& cam);

Observations visible_set(const World& world, const Pose& pose,
                         const CameraModel& cam);

// Exact unicycle integration over dt (> 0). Near-zero yaw rates integrate as
// a straight line.
Pose step(const Pose& pose, const MotionCommand& cmd, double dt);

}  // namespace funnelnav

#endif  // FUNNELNAV_GEOMETRY_H_
