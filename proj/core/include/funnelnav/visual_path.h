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

// Keyframes, visual paths, simulated feature correspondence and the feature
// statistics computed over a set of matches.

#ifndef FUNNELNAV_VISUAL_PATH_H_
#define FUNNELNAV_VISUAL_PATH_H_

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "funnelnav/geometry.h"

namespace funnelnav {

struct Keyframe {
  int index = 0;
  // Ground truth for evaluation and reporting. Controllers never read it.
  Pose pose_truth;
  Observations observations;

  friend bool operator==(const Keyframe&, const Keyframe&) = default;
};

// A feature tracked across a whole segment, with its coordinate in the
// segment's start and end keyframes.
struct TrackedFeature {
  int id = 0;
  double u_start = 0.0;
  double u_end = 0.0;

  friend bool operator==(const TrackedFeature&,
                         const TrackedFeature&) = default;
};

struct VisualPath {
  std::vector<Keyframe> keyframes;
  // segment_features[j] spans keyframes[j] -> keyframes[j + 1].
  std::vector<std::vector<TrackedFeature>> segment_features;

  std::size_t segment_count() const {
    return keyframes.empty() ? 0 : keyframes.size() - 1;
  }

  // Throws InvalidPathError unless there are >= 2 keyframes, each with
  // non-empty observations inside the image border, consecutive keyframes
  // share an id, and there is one feature store per segment.
  void validate(const CameraModel& cam) const;

  friend bool operator==(const VisualPath&, const VisualPath&) = default;
};

// One correspondence: the coordinate in the current image (u_current) and in
// the keyframe image (u_keyframe).
struct MatchPair {
  int id = 0;
  double u_current = 0.0;
  double u_keyframe = 0.0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

// Matches sorted by id; ids are unique.
using MatchSet = std::vector<MatchPair>;

struct NoiseModel {
  // Chance that a common feature fails to match on a full (re)match.
  double dropout_prob = 0.0;
  double pixel_sigma = 0.0;
  // Chance per tick that a tracked feature is lost between full matches.
  double track_loss_prob = 0.002;
  std::uint64_t seed = 0;

  // Throws ConfigError unless both probabilities lie in [0, 1) and
  // pixel_sigma >= 0.
  void validate() const;
};

// Seeded random stream for one repeat run. Every draw happens in ascending
// landmark-id order so runs replay exactly.
class NoiseStream {
 public:
  explicit NoiseStream(const NoiseModel& model);

  const NoiseModel& model() const { return model_; }

  // One uniform draw; true when the feature survives a full match.
  bool survives();
  // One uniform draw; true when a tracked feature survives this tick.
  bool keeps_track();
  // Additive pixel noise, Gaussian truncated at +-3 sigma (0 when sigma = 0,
  // without consuming a draw).
  double pixel_noise();

 private:
  NoiseModel model_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Intersection of current observations with the keyframe, thinned by dropout
// and with pixel noise on the current coordinates.
MatchSet match(const Observations& current, const Keyframe& kf,
               NoiseStream& noise);
// Same, drawing from a fresh stream seeded by `noise.seed`.
MatchSet match(const Observations& current, const Keyframe& kf,
               const NoiseModel& noise);

// Frame-to-frame tracking of an existing match set: pairs whose landmark is
// still visible and that survive a track-loss draw keep their keyframe
// coordinate and get a freshly measured current coordinate.
MatchSet track(const MatchSet& tracked, const Observations& current,
               NoiseStream& noise);

// Population standard deviation of the current / keyframe columns.
double sigma_current(const MatchSet& m);
double sigma_keyframe(const MatchSet& m);

// sigma(current) / sigma(keyframe). Throws DegenerateSpreadError with fewer
// than two pairs or zero keyframe spread.
double std_ratio(const MatchSet& m);
std::optional<double> try_std_ratio(const MatchSet& m);

// Median of a non-empty list; mean of the middle two for even sizes.
double median(std::vector<double> values);

// |median(current) - median(keyframe)|. Throws EmptyMatchError when empty.
double median_distance(const MatchSet& m);

// Mean squared coordinate difference. Throws EmptyMatchError when empty.
double mse(const MatchSet& m);

// Partition by the sign of the keyframe coordinate. Zero goes right.
std::pair<MatchSet, MatchSet> split_sides(const MatchSet& m);

}  // namespace funnelnav

#endif  // FUNNELNAV_VISUAL_PATH_H_
