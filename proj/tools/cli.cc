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

#include "cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "funnelnav/errors.h"
#include "funnelnav/evaluation.h"
#include "funnelnav/io.h"
#include "funnelnav/teach.h"
#include "json.hpp"

namespace funnelnav::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> controller;
  bool force = false;
};

// Thrown for invocation problems that are not config contents (e.g. an
// existing output directory).
class UsageError : public Error {
 public:
  using Error::Error;
};

void prepare_out_dir(const Options& o) {
  const fs::path dir(o.out_dir);
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      throw UsageError(o.out_dir + " exists and is not a directory");
    }
    if (!fs::is_empty(dir) && !o.force) {
      throw UsageError("refusing to overwrite non-empty " + o.out_dir +
                       " (pass --force)");
    }
  }
  fs::create_directories(dir);
}

// Timestamps live only here so every other output is reproducible.
void write_meta(const Options& o, const std::string& subcommand) {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        now.time_since_epoch())
                        .count();
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["config"] = o.config;
  j["unix_time"] = secs;
  if (o.seed) j["seed_override"] = *o.seed;
  if (o.controller) j["controller_override"] = *o.controller;
  write_text_file(fs::path(o.out_dir) / "run_meta.json", j.dump(2) + "\n");
}

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.config);
  if (o.seed) s.noise.seed = *o.seed;
  if (o.controller) s.controllers = {controller_from_string(*o.controller)};
  return s;
}

std::string fixed(double v, int precision = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void print_table(std::ostream& out, const Scenario& s,
                 const std::vector<ControllerReport>& reports) {
  out << "scenario " << s.name << " (" << s.runs << " runs per controller)\n";
  out << "controller  acc[m]  rep[m]  done  lost  timeout  collision\n";
  for (const ControllerReport& r : reports) {
    const MetricsReport& m = r.metrics;
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s  %6s  %6s  %4d  %4d  %7d  %9d\n",
                  to_string(m.controller), fixed(m.accuracy).c_str(),
                  fixed(m.repeatability).c_str(), m.outcomes.done,
                  m.outcomes.lost, m.outcomes.timeout, m.outcomes.collision);
    out << line;
  }
}

void write_runs(const fs::path& dir, const std::vector<ControllerReport>& reports) {
  const fs::path traces = dir / "traces";
  fs::create_directories(traces);
  for (const ControllerReport& r : reports) {
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
      const std::string name = std::string(to_string(r.metrics.controller)) +
                               "_run" + std::to_string(k) + ".jsonl";
      write_text_file(traces / name,
                      trace_to_jsonl(r.runs[k].trace, r.metrics.controller,
                                     r.runs[k].seed));
    }
  }
}

std::vector<MetricsReport> metrics_of(const std::vector<ControllerReport>& rs) {
  std::vector<MetricsReport> out;
  for (const ControllerReport& r : rs) out.push_back(r.metrics);
  return out;
}

int cmd_teach(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  prepare_out_dir(o);
  std::vector<Pose> trajectory;
  const VisualPath path = record(s.world, s.camera, s.teach, &trajectory);
  const fs::path dir(o.out_dir);
  write_text_file(dir / "visual_path.json", visual_path_to_json(path));
  write_text_file(dir / "keyframes.csv", keyframe_table_csv(path));
  write_text_file(dir / "trajectories.csv", trajectories_csv(trajectory, {}));
  write_meta(o, "teach");
  out << "recorded " << path.keyframes.size() << " keyframes from "
      << trajectory.size() << " frames -> " << (dir / "visual_path.json").string()
      << "\n";
  return kExitOk;
}

int cmd_repeat(const Options& o, std::ostream& out) {
  Scenario s = load(o);
  s.runs = 1;
  prepare_out_dir(o);
  const ScenarioResult result = run_scenario(s, 1);
  const fs::path dir(o.out_dir);
  write_text_file(dir / "visual_path.json", visual_path_to_json(result.path));
  write_runs(dir, result.reports);
  write_text_file(dir / "metrics.json",
                  metrics_to_json(s.name, metrics_of(result.reports)));
  write_text_file(dir / "trajectories.csv",
                  trajectories_csv(result.teach_trajectory, result.reports));
  write_meta(o, "repeat");
  for (const ControllerReport& r : result.reports) {
    const RunTrace& t = r.runs.front().trace;
    out << to_string(r.metrics.controller) << ": " << to_string(t.outcome)
        << " after " << t.ticks.size() << " ticks, error "
        << fixed(r.metrics.accuracy) << " m\n";
  }
  return kExitOk;
}

int cmd_batch(const Options& o, std::ostream& out, const char* name) {
  const Scenario s = load(o);
  prepare_out_dir(o);
  const ScenarioResult result = run_scenario(s, batch_threads());
  const fs::path dir(o.out_dir);
  write_text_file(dir / "visual_path.json", visual_path_to_json(result.path));
  write_text_file(dir / "metrics.json",
                  metrics_to_json(s.name, metrics_of(result.reports)));
  write_runs(dir, result.reports);
  write_text_file(dir / "trajectories.csv",
                  trajectories_csv(result.teach_trajectory, result.reports));
  write_meta(o, name);
  print_table(out, s, result.reports);
  return kExitOk;
}

int cmd_oracle_check(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  if (!s.oracle) throw ConfigError(o.config + ": no 'oracle' section");
  if (s.world.landmarks().empty()) {
    throw TeachDegenerateError("oracle check needs at least one landmark");
  }
  Keyframe kf;
  kf.pose_truth = s.oracle->keyframe_pose;
  kf.observations = visible_set(s.world, kf.pose_truth, s.camera);
  if (kf.observations.empty()) {
    throw TeachDegenerateError("oracle keyframe sees no landmarks");
  }
  prepare_out_dir(o);
  const OracleAgreement a = compare_with_oracle(kf, s.world, s.camera, s.oracle->grid);
  const fs::path dir(o.out_dir);
  nlohmann::ordered_json j;
  j["scenario"] = s.name;
  j["grid"] = {{"nx", s.oracle->grid.nx}, {"ny", s.oracle->grid.ny}};
  j["features"] = kf.observations.size();
  j["total"] = a.total;
  j["agree"] = a.agree;
  j["agreement"] = a.fraction();
  j["disagreements"] = a.disagreements.size();
  j["near_boundary"] = a.near_boundary;
  write_text_file(dir / "oracle_report.json", j.dump(2) + "\n");
  std::string csv = "x,y\n";
  for (Vec2 p : a.disagreements) {
    csv += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
  }
  write_text_file(dir / "disagreements.csv", csv);
  write_meta(o, "oracle-check");
  out << "agreement " << fixed(100.0 * a.fraction(), 2) << "% (" << a.agree
      << "/" << a.total << "), " << a.disagreements.size()
      << " disagreements, " << a.near_boundary << " near a boundary\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Funnel lane teach-and-repeat navigation simulator", "funnelnav"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "Scenario config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_dir, "Output directory")->required();
    sub->add_option("--seed", o.seed, "Override the scenario seed");
    sub->add_option("--controller", o.controller, "standard or sloped")
        ->check(CLI::IsMember({"standard", "sloped"}));
    sub->add_flag("--force", o.force, "Write into a non-empty output directory");
  };
  CLI::App* teach = app.add_subcommand("teach", "Record a visual path");
  CLI::App* repeat = app.add_subcommand("repeat", "One repeat run per controller");
  CLI::App* compare =
      app.add_subcommand("compare", "Batch runs of both controllers on identical seeds");
  CLI::App* oracle =
      app.add_subcommand("oracle-check", "Controller vs geometric funnel lane oracle");
  CLI::App* metrics =
      app.add_subcommand("metrics", "Accuracy and repeatability of a batch");
  for (CLI::App* sub : {teach, repeat, compare, oracle, metrics}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (teach->parsed()) return cmd_teach(o, out);
    if (repeat->parsed()) return cmd_repeat(o, out);
    if (compare->parsed()) {
      if (o.controller) {
        throw UsageError("compare always runs both controllers");
      }
      return cmd_batch(o, out, "compare");
    }
    if (metrics->parsed()) return cmd_batch(o, out, "metrics");
    if (oracle->parsed()) return cmd_oracle_check(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TeachDegenerateError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InvalidPathError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace funnelnav::cli
