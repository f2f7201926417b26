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

// Scenario batches, end-point metrics and the geometric funnel lane oracle.

#ifndef FUNNELNAV_EVALUATION_H_
#define FUNNELNAV_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "funnelnav/geometry.h"
#include "funnelnav/navigator.h"
#include "funnelnav/teach.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

// Root-mean-square distance of the points to the goal. Throws ConfigError on
// an empty list.
double accuracy(const std::vector<Vec2>& points, Vec2 goal);

// Root-mean-square distance of the points to their own mean.
double repeatability(const std::vector<Vec2>& points);

Vec2 mean_point(const std::vector<Vec2>& points);

// Regular grid of positions; all sampled poses share one heading.
struct GridSpec {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;
  int nx = 200;
  int ny = 200;

  double step_x() const { return nx > 1 ? (max_x - min_x) / (nx - 1) : 0.0; }
  double step_y() const { return ny > 1 ? (max_y - min_y) / (ny - 1) : 0.0; }
  Vec2 at(int ix, int iy) const {
    return {min_x + ix * step_x(), min_y + iy * step_y()};
  }
};

// Inside/outside flags over the grid, row-major: index = iy * nx + ix.
using GridMask = std::vector<bool>;

// Ground-truth combined funnel lane of `kf` by plane geometry: for each
// landmark the candidate position must see it at least min_depth ahead, on
// the same side of the heading line as the keyframe did, and at a strictly
// smaller bearing. Uses the keyframe's truth pose and heading.
GridMask funnel_oracle(const Keyframe& kf, const World& world,
                       const CameraModel& cam, const GridSpec& grid);

// What the baseline controller believes at the same grid poses: every
// keyframe feature is matched (noise free) and votes forward.
GridMask controller_inside(const Keyframe& kf, const World& world,
                           const CameraModel& cam, const GridSpec& grid);

struct OracleAgreement {
  int total = 0;
  int agree = 0;
  std::vector<Vec2> disagreements;
  // Disagreements with an oracle boundary within one grid step.
  int near_boundary = 0;

  double fraction() const {
    return total ? static_cast<double>(agree) / total : 0.0;
  }
};

OracleAgreement compare_with_oracle(const Keyframe& kf, const World& world,
                                    const CameraModel& cam,
                                    const GridSpec& grid);

struct OracleSpec {
  Pose keyframe_pose;
  GridSpec grid;
};

struct Scenario {
  std::string name;
  World world;
  CameraModel camera;
  TeachScript teach;
  Pose repeat_start;
  NoiseModel noise;
  NavigatorConfig navigator;
  int runs = 1;
  double success_tolerance = 0.3;
  std::vector<ControllerKind> controllers{ControllerKind::kStandard,
                                          ControllerKind::kSloped};
  // Landmarks present while teaching but gone during repeat runs.
  std::vector<int> removed_landmarks;
  std::optional<OracleSpec> oracle;

  void validate() const;
  World repeat_world() const { return world.without(removed_landmarks); }
};

struct OutcomeCounts {
  int done = 0;
  int lost = 0;
  int timeout = 0;
  int collision = 0;
};

struct MetricsReport {
  ControllerKind controller = ControllerKind::kSloped;
  double accuracy = 0.0;
  double repeatability = 0.0;
  Vec2 goal;
  std::vector<Vec2> final_points;
  OutcomeCounts outcomes;
  // Runs that reached "done" with the end point within success_tolerance.
  int successes = 0;
};

struct RunResult {
  std::uint64_t seed = 0;
  RunTrace trace;
};

struct ControllerReport {
  MetricsReport metrics;
  std::vector<RunResult> runs;
};

struct ScenarioResult {
  VisualPath path;
  std::vector<Pose> teach_trajectory;
  std::vector<ControllerReport> reports;  // one per scenario controller
};

// Seed of repeat run `run` derived from the scenario seed.
std::uint64_t run_seed(std::uint64_t base, int run);

// Worker count from FUNNEL_NAV_THREADS (defaults to hardware concurrency).
int batch_threads();

// Repeat runs of one controller over a recorded path. Runs are independent
// and may execute on `threads` workers; results are ordered by run index.
ControllerReport run_repeats(const Scenario& s, const VisualPath& path,
                             ControllerKind controller, int threads = 1);

MetricsReport summarize(const Scenario& s, const VisualPath& path,
                        ControllerKind controller,
                        const std::vector<RunResult>& runs);

// Teach once, then run every configured controller. Failed runs contribute
// their stopping point to the metrics.
ScenarioResult run_scenario(const Scenario& s, int threads = 1);

}  // namespace funnelnav

#endif  // FUNNELNAV_EVALUATION_H_
