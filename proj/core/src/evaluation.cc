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

#include "funnelnav/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "funnelnav/errors.h"
#include "funnelnav/standard_controller.h"

namespace funnelnav {
namespace {

double squared_distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

void require_points(const std::vector<Vec2>& points) {
  if (points.empty()) throw ConfigError("metrics need at least one point");
}

// Signed bearing of `target` from `from` looking along `heading`, positive to
// the right, and its depth along the heading.
struct Bearing {
  double angle;
  double depth;
};

Bearing bearing(Vec2 from, double heading, Vec2 target) {
  const double dx = target.x - from.x;
  const double dy = target.y - from.y;
  const double hx = std::cos(heading);
  const double hy = std::sin(heading);
  const double depth = dx * hx + dy * hy;
  const double left = hx * dy - hy * dx;
  return {std::atan2(-left, depth), depth};
}

bool same_side(double a, double b) {
  return a == 0.0 || b == 0.0 || std::signbit(a) == std::signbit(b);
}

}  // namespace

double accuracy(const std::vector<Vec2>& points, Vec2 goal) {
  require_points(points);
  double acc = 0.0;
  for (Vec2 p : points) acc += squared_distance(p, goal);
  return std::sqrt(acc / static_cast<double>(points.size()));
}

Vec2 mean_point(const std::vector<Vec2>& points) {
  require_points(points);
  Vec2 mu;
  for (Vec2 p : points) {
    mu.x += p.x;
    mu.y += p.y;
  }
  mu.x /= static_cast<double>(points.size());
  mu.y /= static_cast<double>(points.size());
  return mu;
}

double repeatability(const std::vector<Vec2>& points) {
  return accuracy(points, mean_point(points));
}

GridMask funnel_oracle(const Keyframe& kf, const World& world,
                       const CameraModel& cam, const GridSpec& grid) {
  struct Lane {
    Vec2 landmark;
    double keyframe_bearing;
  };
  const double heading = kf.pose_truth.theta;
  std::vector<Lane> lanes;
  for (const auto& [id, u] : kf.observations) {
    const Landmark* l = world.find(id);
    if (!l) continue;
    const Vec2 pos{l->x, l->y};
    lanes.push_back({pos, bearing(kf.pose_truth.position(), heading, pos).angle});
  }
  GridMask mask(static_cast<std::size_t>(grid.nx) * grid.ny, false);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 p = grid.at(ix, iy);
      bool inside = !lanes.empty();
      for (const Lane& lane : lanes) {
        const Bearing b = bearing(p, heading, lane.landmark);
        if (b.depth < cam.min_depth || !same_side(b.angle, lane.keyframe_bearing) ||
            !(std::abs(b.angle) < std::abs(lane.keyframe_bearing))) {
          inside = false;
          break;
        }
      }
      mask[static_cast<std::size_t>(iy) * grid.nx + ix] = inside;
    }
  }
  return mask;
}

GridMask controller_inside(const Keyframe& kf, const World& world,
                           const CameraModel& cam, const GridSpec& grid) {
  const NoiseModel exact{};
  GridMask mask(static_cast<std::size_t>(grid.nx) * grid.ny, false);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 p = grid.at(ix, iy);
      const Pose pose(p.x, p.y, kf.pose_truth.theta);
      const MatchSet m = match(visible_set(world, pose, cam), kf, exact);
      mask[static_cast<std::size_t>(iy) * grid.nx + ix] =
          !m.empty() && m.size() == kf.observations.size() &&
          inside_combined_lane(m);
    }
  }
  return mask;
}

OracleAgreement compare_with_oracle(const Keyframe& kf, const World& world,
                                    const CameraModel& cam,
                                    const GridSpec& grid) {
  const GridMask truth = funnel_oracle(kf, world, cam, grid);
  const GridMask claimed = controller_inside(kf, world, cam, grid);
  OracleAgreement out;
  out.total = grid.nx * grid.ny;
  auto at = [&](int ix, int iy) {
    return truth[static_cast<std::size_t>(iy) * grid.nx + ix];
  };
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const std::size_t i = static_cast<std::size_t>(iy) * grid.nx + ix;
      if (truth[i] == claimed[i]) {
        ++out.agree;
        continue;
      }
      out.disagreements.push_back(grid.at(ix, iy));
      bool boundary = false;
      for (int dy = -1; dy <= 1 && !boundary; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int jx = ix + dx;
          const int jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= grid.nx || jy >= grid.ny) continue;
          if (at(jx, jy) != truth[i]) {
            boundary = true;
            break;
          }
        }
      }
      if (boundary) ++out.near_boundary;
    }
  }
  return out;
}

void Scenario::validate() const {
  if (runs < 1) throw ConfigError("scenario: runs must be >= 1");
  if (!(success_tolerance > 0.0)) {
    throw ConfigError("scenario: success_tolerance must be positive");
  }
  if (controllers.empty()) throw ConfigError("scenario: no controllers");
  camera.validate();
  teach.validate();
  noise.validate();
  navigator.validate();
  if (!world.bounds().contains(repeat_start.position())) {
    throw ConfigError("scenario: repeat start lies outside the world bounds");
  }
}

std::uint64_t run_seed(std::uint64_t base, int run) {
  // splitmix64 finalizer over (base, run).
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(run) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int batch_threads() {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FUNNEL_NAV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return hw;
}

MetricsReport summarize(const Scenario& s, const VisualPath& path,
                        ControllerKind controller,
                        const std::vector<RunResult>& runs) {
  MetricsReport r;
  r.controller = controller;
  r.goal = path.keyframes.back().pose_truth.position();
  for (const RunResult& run : runs) {
    const Vec2 end = run.trace.final_pose.position();
    r.final_points.push_back(end);
    switch (run.trace.outcome) {
      case Outcome::kDone:
        ++r.outcomes.done;
        if (std::sqrt(squared_distance(end, r.goal)) < s.success_tolerance) {
          ++r.successes;
        }
        break;
      case Outcome::kLost:
        ++r.outcomes.lost;
        break;
      case Outcome::kTimeout:
        ++r.outcomes.timeout;
        break;
      case Outcome::kCollision:
        ++r.outcomes.collision;
        break;
    }
  }
  r.accuracy = accuracy(r.final_points, r.goal);
  r.repeatability = repeatability(r.final_points);
  return r;
}

ControllerReport run_repeats(const Scenario& s, const VisualPath& path,
                             ControllerKind controller, int threads) {
  const World world = s.repeat_world();
  NavigatorConfig cfg = s.navigator;
  cfg.controller = controller;

  std::vector<RunResult> runs(static_cast<std::size_t>(s.runs));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int i = next++; i < s.runs; i = next++) {
      try {
        NoiseModel noise = s.noise;
        noise.seed = run_seed(s.noise.seed, i);
        runs[i] = {noise.seed,
                   navigate(world, s.camera, path, s.repeat_start, cfg, noise)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::clamp(threads, 1, s.runs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  ControllerReport report;
  report.metrics = summarize(s, path, controller, runs);
  report.runs = std::move(runs);
  return report;
}

ScenarioResult run_scenario(const Scenario& s, int threads) {
  s.validate();
  ScenarioResult result;
  result.path = record(s.world, s.camera, s.teach, &result.teach_trajectory);
  for (ControllerKind c : s.controllers) {
    result.reports.push_back(run_repeats(s, result.path, c, threads));
  }
  return result;
}

}  // namespace funnelnav
