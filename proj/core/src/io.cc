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

#include "funnelnav/io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "funnelnav/errors.h"
#include "json.hpp"

namespace funnelnav {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr char kPathFormat[] = "funnelnav.visual_path/1";
constexpr double kDegToRad = std::numbers::pi / 180.0;

json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
}

// Wraps library type errors with the offending context.
template <typename T>
T get(const json& j, const char* key, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(ctx + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(ctx + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key, ctx);
}

Vec2 parse_point(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(ctx + ": expected [x, y]");
  }
  try {
    return {j[0].get<double>(), j[1].get<double>()};
  } catch (const json::exception& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

Rect parse_rect(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError(ctx + ": expected [min_x, min_y, max_x, max_y]");
  }
  try {
    Rect r{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
           j[3].get<double>()};
    if (!(r.min_x <= r.max_x && r.min_y <= r.max_y)) {
      throw ConfigError(ctx + ": min corner exceeds max corner");
    }
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
}

// {"x", "y", "theta"} in radians or {"x", "y", "theta_deg"}.
Pose parse_pose(const json& j, const std::string& ctx) {
  const double x = get<double>(j, "x", ctx);
  const double y = get<double>(j, "y", ctx);
  double theta = 0.0;
  if (j.contains("theta_deg")) {
    theta = get<double>(j, "theta_deg", ctx) * kDegToRad;
  } else {
    theta = get_or<double>(j, "theta", 0.0, ctx);
  }
  return Pose(x, y, theta);
}

ordered_json pose_json(const Pose& p) {
  return ordered_json{{"x", p.x}, {"y", p.y}, {"theta", p.theta}};
}

ordered_json rect_json(const Rect& r) {
  return ordered_json::array({r.min_x, r.min_y, r.max_x, r.max_y});
}

World world_from(const json& j, const std::string& ctx) {
  const Rect bounds = parse_rect(j.contains("bounds") ? j["bounds"] : json(),
                                 ctx + ".bounds");
  std::vector<Landmark> landmarks;
  int max_id = -1;
  if (j.contains("landmarks")) {
    for (const json& l : j["landmarks"]) {
      const std::string lctx = ctx + ".landmarks";
      Landmark lm{get<int>(l, "id", lctx), get<double>(l, "x", lctx),
                  get<double>(l, "y", lctx)};
      max_id = std::max(max_id, lm.id);
      landmarks.push_back(lm);
    }
  }
  if (j.contains("landmark_lines")) {
    for (const json& line : j["landmark_lines"]) {
      const std::string lctx = ctx + ".landmark_lines";
      const Vec2 from = parse_point(line.value("from", json()), lctx + ".from");
      const Vec2 to = parse_point(line.value("to", json()), lctx + ".to");
      const double spacing = get<double>(line, "spacing", lctx);
      if (!(spacing > 0.0)) throw ConfigError(lctx + ": spacing must be > 0");
      int id = get_or<int>(line, "first_id", max_id + 1, lctx);
      const double len = std::hypot(to.x - from.x, to.y - from.y);
      const int n = static_cast<int>(std::floor(len / spacing + 1e-9)) + 1;
      for (int k = 0; k < n; ++k) {
        const double t = len > 0.0 ? k * spacing / len : 0.0;
        landmarks.push_back({id, from.x + t * (to.x - from.x),
                             from.y + t * (to.y - from.y)});
        max_id = std::max(max_id, id);
        ++id;
      }
    }
  }
  std::vector<Rect> obstacles;
  if (j.contains("obstacles")) {
    for (const json& o : j["obstacles"]) {
      obstacles.push_back(parse_rect(o, ctx + ".obstacles"));
    }
  }
  return World(bounds, std::move(landmarks), std::move(obstacles));
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

World parse_world(const std::string& text, const std::string& source) {
  return world_from(parse(text, source), source);
}

std::string world_to_json(const World& world) {
  ordered_json j;
  j["bounds"] = rect_json(world.bounds());
  j["landmarks"] = ordered_json::array();
  for (const Landmark& l : world.landmarks()) {
    j["landmarks"].push_back(ordered_json{{"id", l.id}, {"x", l.x}, {"y", l.y}});
  }
  j["obstacles"] = ordered_json::array();
  for (const Rect& r : world.obstacles()) j["obstacles"].push_back(rect_json(r));
  return j.dump(2) + "\n";
}

VisualPath parse_visual_path(const std::string& text,
                             const std::string& source) {
  const json j = parse(text, source);
  if (get_or<std::string>(j, "format", kPathFormat, source) != kPathFormat) {
    throw ConfigError(source + ": unsupported format tag");
  }
  VisualPath path;
  for (const json& k : get<json>(j, "keyframes", source)) {
    const std::string kctx = source + ".keyframes";
    Keyframe kf;
    kf.index = get<int>(k, "index", kctx);
    kf.pose_truth = parse_pose(get<json>(k, "pose", kctx), kctx + ".pose");
    for (const json& o : get<json>(k, "observations", kctx)) {
      if (!o.is_array() || o.size() != 2) {
        throw ConfigError(kctx + ".observations: expected [id, u]");
      }
      kf.observations[o[0].get<int>()] = o[1].get<double>();
    }
    path.keyframes.push_back(std::move(kf));
  }
  for (const json& seg : get<json>(j, "segments", source)) {
    std::vector<TrackedFeature> features;
    for (const json& f : seg) {
      if (!f.is_array() || f.size() != 3) {
        throw ConfigError(source + ".segments: expected [id, u_start, u_end]");
      }
      features.push_back(
          {f[0].get<int>(), f[1].get<double>(), f[2].get<double>()});
    }
    path.segment_features.push_back(std::move(features));
  }
  return path;
}

std::string visual_path_to_json(const VisualPath& path) {
  ordered_json j;
  j["format"] = kPathFormat;
  j["keyframes"] = ordered_json::array();
  for (const Keyframe& kf : path.keyframes) {
    ordered_json k;
    k["index"] = kf.index;
    k["pose"] = pose_json(kf.pose_truth);
    k["observations"] = ordered_json::array();
    for (const auto& [id, u] : kf.observations) {
      k["observations"].push_back(ordered_json::array({id, u}));
    }
    j["keyframes"].push_back(std::move(k));
  }
  j["segments"] = ordered_json::array();
  for (const auto& seg : path.segment_features) {
    ordered_json s = ordered_json::array();
    for (const TrackedFeature& f : seg) {
      s.push_back(ordered_json::array({f.id, f.u_start, f.u_end}));
    }
    j["segments"].push_back(std::move(s));
  }
  return j.dump(1) + "\n";
}

Scenario parse_scenario(const std::string& text,
                        const std::filesystem::path& base_dir,
                        const std::string& source) {
  const json j = parse(text, source);
  if (!j.is_object()) throw ConfigError(source + ": expected an object");
  Scenario s;
  s.name = get_or<std::string>(j, "name", "scenario", source);

  if (j.contains("world")) {
    s.world = world_from(j["world"], source + ".world");
  } else if (j.contains("world_file")) {
    const std::filesystem::path wp =
        base_dir / get<std::string>(j, "world_file", source);
    s.world = parse_world(read_text_file(wp), wp.string());
  } else {
    throw ConfigError(source + ": needs 'world' or 'world_file'");
  }

  if (j.contains("camera")) {
    const json& c = j["camera"];
    const std::string ctx = source + ".camera";
    s.camera.focal_length =
        get_or<double>(c, "focal_length", s.camera.focal_length, ctx);
    s.camera.half_width = get_or<double>(c, "half_width", s.camera.half_width, ctx);
    s.camera.min_depth = get_or<double>(c, "min_depth", s.camera.min_depth, ctx);
  }

  {
    const std::string ctx = source + ".teach";
    const json& t = get<json>(j, "teach", source);
    s.teach.start_pose = parse_pose(get<json>(t, "start", ctx), ctx + ".start");
    s.teach.dt = get_or<double>(t, "dt", s.teach.dt, ctx);
    s.teach.min_features = get_or<int>(t, "min_features", s.teach.min_features, ctx);
    for (const json& st : get<json>(t, "steps", ctx)) {
      const std::string sctx = ctx + ".steps";
      ScriptStep step;
      step.cmd.v = get_or<double>(st, "v", 0.0, sctx);
      if (st.contains("omega_deg")) {
        step.cmd.omega = get<double>(st, "omega_deg", sctx) * kDegToRad;
      } else {
        step.cmd.omega = get_or<double>(st, "omega", 0.0, sctx);
      }
      step.duration = get<double>(st, "duration", sctx);
      s.teach.steps.push_back(step);
    }
  }

  s.repeat_start = s.teach.start_pose;
  if (j.contains("repeat")) {
    const json& r = j["repeat"];
    const std::string ctx = source + ".repeat";
    if (r.contains("start")) s.repeat_start = parse_pose(r["start"], ctx + ".start");
    s.runs = get_or<int>(r, "runs", s.runs, ctx);
    s.noise.seed = get_or<std::uint64_t>(r, "seed", 0, ctx);
    s.removed_landmarks =
        get_or<std::vector<int>>(r, "removed_landmarks", {}, ctx);
    if (r.contains("controllers")) {
      s.controllers.clear();
      for (const std::string& c : get<std::vector<std::string>>(r, "controllers", ctx)) {
        s.controllers.push_back(controller_from_string(c));
      }
    }
  }

  if (j.contains("noise")) {
    const json& n = j["noise"];
    const std::string ctx = source + ".noise";
    s.noise.dropout_prob = get_or<double>(n, "dropout_prob", 0.0, ctx);
    s.noise.pixel_sigma = get_or<double>(n, "pixel_sigma", 0.0, ctx);
    s.noise.track_loss_prob =
        get_or<double>(n, "track_loss_prob", s.noise.track_loss_prob, ctx);
  }

  NavigatorConfig& nav = s.navigator;
  if (j.contains("navigator")) {
    const json& n = j["navigator"];
    const std::string ctx = source + ".navigator";
    nav.threshold1_ed = get_or<double>(n, "threshold1_ed", nav.threshold1_ed, ctx);
    nav.threshold2_features =
        get_or<int>(n, "threshold2_features", nav.threshold2_features, ctx);
    nav.threshold3_time = get_or<int>(n, "threshold3_time", nav.threshold3_time, ctx);
    nav.dt = get_or<double>(n, "dt", nav.dt, ctx);
    nav.max_ticks = get_or<int>(n, "max_ticks", nav.max_ticks, ctx);
    nav.robot_radius = get_or<double>(n, "robot_radius", nav.robot_radius, ctx);
  }
  if (j.contains("standard")) {
    const json& p = j["standard"];
    const std::string ctx = source + ".standard";
    nav.standard.v0 = get_or<double>(p, "v0", nav.standard.v0, ctx);
    nav.standard.omega0 = get_or<double>(p, "omega0", nav.standard.omega0, ctx);
  }
  if (j.contains("sloped")) {
    const json& p = j["sloped"];
    const std::string ctx = source + ".sloped";
    nav.sloped.v_max = get_or<double>(p, "v_max", nav.sloped.v_max, ctx);
    nav.sloped.omega_max = get_or<double>(p, "omega_max", nav.sloped.omega_max, ctx);
    nav.sloped.sx_epsilon =
        get_or<double>(p, "sx_epsilon", nav.sloped.sx_epsilon, ctx);
    nav.sloped.norm_floor =
        get_or<double>(p, "norm_floor", nav.sloped.norm_floor, ctx);
    nav.radius_policy =
        get_or<std::string>(p, "radius_policy", nav.radius_policy, ctx);
  }
  s.success_tolerance =
      get_or<double>(j, "success_tolerance", s.success_tolerance, source);

  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    const std::string ctx = source + ".oracle";
    OracleSpec spec;
    spec.keyframe_pose = parse_pose(get<json>(o, "keyframe", ctx), ctx + ".keyframe");
    const json& g = get<json>(o, "grid", ctx);
    const Vec2 xr = parse_point(get<json>(g, "x", ctx + ".grid"), ctx + ".grid.x");
    const Vec2 yr = parse_point(get<json>(g, "y", ctx + ".grid"), ctx + ".grid.y");
    spec.grid = {xr.x, xr.y, yr.x, yr.y, get_or<int>(g, "nx", 200, ctx),
                 get_or<int>(g, "ny", 200, ctx)};
    if (spec.grid.nx < 1 || spec.grid.ny < 1) {
      throw ConfigError(ctx + ".grid: nx and ny must be >= 1");
    }
    s.oracle = spec;
  }

  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.parent_path(), path.string());
}

std::string trace_to_jsonl(const RunTrace& trace, ControllerKind controller,
                           std::uint64_t seed) {
  std::string out;
  for (const TickRecord& t : trace.ticks) {
    ordered_json j;
    j["tick"] = t.tick;
    j["x"] = t.pose.x;
    j["y"] = t.pose.y;
    j["theta"] = t.pose.theta;
    j["segment"] = t.segment;
    j["v"] = t.cmd.v;
    j["omega"] = t.cmd.omega;
    j["nmf"] = t.nmf;
    j["std_ratio"] = optional_json(t.std_ratio);
    j["ed"] = optional_json(t.ed);
    j["mse"] = optional_json(t.mse);
    if (t.sloped) {
      j["s_x"] = t.sloped->s_x;
      j["s_y"] = optional_json(t.sloped->s_y);
      j["mu_l_c"] = optional_json(t.sloped->mu_l_c);
      j["mu_l_j"] = optional_json(t.sloped->mu_l_j);
      j["mu_r_c"] = optional_json(t.sloped->mu_r_c);
      j["mu_r_j"] = optional_json(t.sloped->mu_r_j);
      j["constraints"] = t.sloped->constraints;
    }
    j["events"] = t.events;
    out += j.dump();
    out += '\n';
  }
  ordered_json summary;
  summary["summary"] = true;
  summary["controller"] = to_string(controller);
  summary["seed"] = seed;
  summary["outcome"] = to_string(trace.outcome);
  summary["ticks"] = trace.ticks.size();
  summary["switches"] = trace.switches;
  summary["final"] = pose_json(trace.final_pose);
  out += summary.dump();
  out += '\n';
  return out;
}

std::string metrics_to_json(const std::string& scenario_name,
                            const std::vector<MetricsReport>& reports) {
  ordered_json j;
  j["scenario"] = scenario_name;
  j["controllers"] = ordered_json::array();
  for (const MetricsReport& r : reports) {
    ordered_json c;
    c["controller"] = to_string(r.controller);
    c["runs"] = r.final_points.size();
    c["accuracy"] = r.accuracy;
    c["repeatability"] = r.repeatability;
    c["goal"] = ordered_json::array({r.goal.x, r.goal.y});
    c["final_points"] = ordered_json::array();
    for (Vec2 p : r.final_points) {
      c["final_points"].push_back(ordered_json::array({p.x, p.y}));
    }
    c["outcomes"] = ordered_json{{"done", r.outcomes.done},
                                 {"lost", r.outcomes.lost},
                                 {"timeout", r.outcomes.timeout},
                                 {"collision", r.outcomes.collision}};
    c["successes"] = r.successes;
    j["controllers"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

std::string keyframe_table_csv(const VisualPath& path) {
  std::string out = "index,observations,x,y,theta\n";
  for (const Keyframe& kf : path.keyframes) {
    out += std::to_string(kf.index) + "," +
           std::to_string(kf.observations.size()) + "," + num(kf.pose_truth.x) +
           "," + num(kf.pose_truth.y) + "," + num(kf.pose_truth.theta) + "\n";
  }
  return out;
}

std::string trajectories_csv(const std::vector<Pose>& teach,
                             const std::vector<ControllerReport>& reports) {
  std::string out = "series,point,x,y\n";
  for (std::size_t i = 0; i < teach.size(); ++i) {
    out += "teach," + std::to_string(i) + "," + num(teach[i].x) + "," +
           num(teach[i].y) + "\n";
  }
  for (const ControllerReport& r : reports) {
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
      const std::string series = std::string(to_string(r.metrics.controller)) +
                                 "_run" + std::to_string(k);
      const RunTrace& t = r.runs[k].trace;
      std::size_t i = 0;
      for (const TickRecord& tick : t.ticks) {
        out += series + "," + std::to_string(i++) + "," + num(tick.pose.x) +
               "," + num(tick.pose.y) + "\n";
      }
      out += series + "," + std::to_string(i) + "," + num(t.final_pose.x) +
             "," + num(t.final_pose.y) + "\n";
    }
  }
  return out;
}

}  // namespace funnelnav
