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

#include <algorithm>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "funnelnav/errors.h"
#include "funnelnav/teach.h"
#include "oracles.h"

namespace funnelnav {
namespace {

std::string scenario_path(const std::string& name) {
  return std::string(FUNNELNAV_SCENARIO_DIR) + "/" + name;
}

TEST(Io, WorldRoundTrip) {
  const World w({-1, -2, 3, 4}, {{1, 0.5, 0.25}, {7, -0.125, 3.0}},
                {{0, 0, 1, 1}});
  EXPECT_EQ(parse_world(world_to_json(w)), w);
}

TEST(Io, VisualPathRoundTrip) {
  std::mt19937_64 rng(71);
  const World w = testing::corridor_world(rng);
  TeachScript script;
  script.steps = {{{0.3, 0.05}, 12.0}};
  const VisualPath path = record(w, CameraModel{}, script);
  ASSERT_GE(path.keyframes.size(), 2u);
  EXPECT_EQ(parse_visual_path(visual_path_to_json(path)), path);
}

TEST(Io, SyntaxErrorsCarryLine) {
  try {
    parse_world("{\n  \"bounds\": [0, 0, 1, 1],\n  \"landmarks\": [,]\n}");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Io, SemanticErrors) {
  EXPECT_THROW(parse_world(R"({"bounds": [0, 0, 1]})"), ConfigError);
  EXPECT_THROW(parse_world(R"({"bounds": [1, 0, 0, 1], "landmarks": []})"),
               ConfigError);
  EXPECT_THROW(parse_world(R"({"bounds": [0, 0, 1, 1],
      "landmarks": [{"id": 1, "x": 0.5, "y": 0.5}, {"id": 1, "x": 0.2, "y": 0.2}]})"),
               ConfigError);
  EXPECT_THROW(parse_scenario("[]"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"name": "x"})"), ConfigError);
  EXPECT_THROW(parse_visual_path(R"({"format": "other"})"), ConfigError);
  EXPECT_THROW(load_scenario(scenario_path("missing.json")), ConfigError);
}

TEST(Io, ShippedScenariosParse) {
  for (const auto& entry :
       std::filesystem::directory_iterator(FUNNELNAV_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    SCOPED_TRACE(entry.path().string());
    const Scenario s = load_scenario(entry.path());
    EXPECT_NO_THROW(s.validate());
    EXPECT_FALSE(s.name.empty());
  }
}

TEST(Io, ScenarioFields) {
  const Scenario s = load_scenario(scenario_path("rotation_in_place.json"));
  EXPECT_EQ(s.runs, 10);
  EXPECT_DOUBLE_EQ(s.noise.dropout_prob, 0.1);
  EXPECT_DOUBLE_EQ(s.noise.pixel_sigma, 1.0);
  EXPECT_EQ(s.controllers.size(), 2u);
  const Scenario two = load_scenario(scenario_path("two_feature.json"));
  ASSERT_TRUE(two.oracle.has_value());
  EXPECT_EQ(two.oracle->grid.nx, 200);
  EXPECT_EQ(two.world.landmarks().size(), 2u);
}

TEST(Io, TraceAndMetricsAreStable) {
  Scenario s = load_scenario(scenario_path("straight_corridor.json"));
  s.runs = 1;
  const ScenarioResult r = run_scenario(s);
  const RunResult& run = r.reports.front().runs.front();
  const std::string a = trace_to_jsonl(run.trace, ControllerKind::kStandard, run.seed);
  EXPECT_EQ(a, trace_to_jsonl(run.trace, ControllerKind::kStandard, run.seed));
  // One line per tick plus the summary.
  EXPECT_EQ(static_cast<std::size_t>(std::count(a.begin(), a.end(), '\n')),
            run.trace.ticks.size() + 1);
  std::vector<MetricsReport> m;
  for (const ControllerReport& c : r.reports) m.push_back(c.metrics);
  EXPECT_NE(metrics_to_json(s.name, m).find("\"accuracy\""), std::string::npos);
  const std::string csv = keyframe_table_csv(r.path);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')),
            r.path.keyframes.size() + 1);
}

}  // namespace
}  // namespace funnelnav
