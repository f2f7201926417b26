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

#include "funnelnav/visual_path.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "funnelnav/errors.h"

namespace funnelnav {
namespace {

constexpr double kTruncation = 3.0;

double population_sigma(const MatchSet& m, double MatchPair::*column) {
  if (m.empty()) return 0.0;
  double mean = 0.0;
  for (const MatchPair& p : m) mean += p.*column;
  mean /= static_cast<double>(m.size());
  double acc = 0.0;
  for (const MatchPair& p : m) {
    const double d = p.*column - mean;
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(m.size()));
}

std::vector<double> column(const MatchSet& m, double MatchPair::*col) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const MatchPair& p : m) out.push_back(p.*col);
  return out;
}

}  // namespace

void VisualPath::validate(const CameraModel& cam) const {
  if (keyframes.size() < 2) {
    throw InvalidPathError("visual path needs at least two keyframes");
  }
  if (segment_features.size() != keyframes.size() - 1) {
    throw InvalidPathError("visual path needs one feature store per segment");
  }
  for (std::size_t j = 0; j < keyframes.size(); ++j) {
    const Keyframe& kf = keyframes[j];
    if (kf.observations.empty()) {
      throw InvalidPathError("keyframe " + std::to_string(j) +
                             " has no observations");
    }
    for (const auto& [id, u] : kf.observations) {
      if (std::abs(u) > cam.half_width) {
        throw InvalidPathError("keyframe " + std::to_string(j) +
                               " observation outside the image border");
      }
    }
    if (j == 0) continue;
    const Observations& prev = keyframes[j - 1].observations;
    const bool shares = std::any_of(
        kf.observations.begin(), kf.observations.end(),
        [&](const auto& kv) { return prev.count(kv.first) > 0; });
    if (!shares) {
      throw InvalidPathError("keyframes " + std::to_string(j - 1) + " and " +
                             std::to_string(j) + " share no observation");
    }
  }
}

void NoiseModel::validate() const {
  if (!(dropout_prob >= 0.0 && dropout_prob < 1.0)) {
    throw ConfigError("noise: dropout_prob must lie in [0, 1)");
  }
  if (!(track_loss_prob >= 0.0 && track_loss_prob < 1.0)) {
    throw ConfigError("noise: track_loss_prob must lie in [0, 1)");
  }
  if (!(pixel_sigma >= 0.0)) {
    throw ConfigError("noise: pixel_sigma must be non-negative");
  }
}

NoiseStream::NoiseStream(const NoiseModel& model)
    : model_(model), engine_(model.seed) {}

bool NoiseStream::survives() {
  return uniform_(engine_) >= model_.dropout_prob;
}

bool NoiseStream::keeps_track() {
  return uniform_(engine_) >= model_.track_loss_prob;
}

double NoiseStream::pixel_noise() {
  if (model_.pixel_sigma <= 0.0) return 0.0;
  double z = normal_(engine_);
  while (std::abs(z) > kTruncation) z = normal_(engine_);
  return z * model_.pixel_sigma;
}

MatchSet match(const Observations& current, const Keyframe& kf,
               NoiseStream& noise) {
  MatchSet out;
  auto a = current.begin();
  auto b = kf.observations.begin();
  while (a != current.end() && b != kf.observations.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      if (noise.survives()) {
        out.push_back({a->first, a->second + noise.pixel_noise(), b->second});
      }
      ++a;
      ++b;
    }
  }
  return out;
}

MatchSet match(const Observations& current, const Keyframe& kf,
               const NoiseModel& noise) {
  NoiseStream stream(noise);
  return match(current, kf, stream);
}

MatchSet track(const MatchSet& tracked, const Observations& current,
               NoiseStream& noise) {
  MatchSet out;
  out.reserve(tracked.size());
  for (const MatchPair& p : tracked) {
    auto it = current.find(p.id);
    if (it == current.end()) continue;
    if (!noise.keeps_track()) continue;
    out.push_back({p.id, it->second + noise.pixel_noise(), p.u_keyframe});
  }
  return out;
}

double sigma_current(const MatchSet& m) {
  return population_sigma(m, &MatchPair::u_current);
}

double sigma_keyframe(const MatchSet& m) {
  return population_sigma(m, &MatchPair::u_keyframe);
}

std::optional<double> try_std_ratio(const MatchSet& m) {
  if (m.size() < 2) return std::nullopt;
  const double denom = sigma_keyframe(m);
  if (!(denom > 0.0)) return std::nullopt;
  return sigma_current(m) / denom;
}

double std_ratio(const MatchSet& m) {
  if (auto r = try_std_ratio(m)) return *r;
  throw DegenerateSpreadError(
      "std ratio needs >= 2 matches with non-zero keyframe spread");
}

double median(std::vector<double> values) {
  if (values.empty()) throw EmptyMatchError("median of an empty list");
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

double median_distance(const MatchSet& m) {
  if (m.empty()) throw EmptyMatchError("median distance of an empty match set");
  return std::abs(median(column(m, &MatchPair::u_current)) -
                  median(column(m, &MatchPair::u_keyframe)));
}

double mse(const MatchSet& m) {
  if (m.empty()) throw EmptyMatchError("mse of an empty match set");
  double acc = 0.0;
  for (const MatchPair& p : m) {
    const double d = p.u_current - p.u_keyframe;
    acc += d * d;
  }
  return acc / static_cast<double>(m.size());
}

std::pair<MatchSet, MatchSet> split_sides(const MatchSet& m) {
  std::pair<MatchSet, MatchSet> sides;
  for (const MatchPair& p : m) {
    (p.u_keyframe < 0.0 ? sides.first : sides.second).push_back(p);
  }
  return sides;
}

}  // namespace funnelnav
