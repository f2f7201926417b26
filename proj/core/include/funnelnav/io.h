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

// JSON file formats: worlds, visual paths, scenarios, run traces (JSON Lines)
// and metrics reports. Field names are documented in docs/formats.md.
//
// Every parse failure surfaces as ConfigError; syntax errors carry the line
// and column reported by the parser.

#ifndef FUNNELNAV_IO_H_
#define FUNNELNAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "funnelnav/evaluation.h"
#include "funnelnav/geometry.h"
#include "funnelnav/navigator.h"
#include "funnelnav/visual_path.h"

namespace funnelnav {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

World parse_world(const std::string& text, const std::string& source = "world");
std::string world_to_json(const World& world);

VisualPath parse_visual_path(const std::string& text,
                             const std::string& source = "visual path");
std::string visual_path_to_json(const VisualPath& path);

// `base_dir` resolves a "world_file" reference.
Scenario parse_scenario(const std::string& text,
                        const std::filesystem::path& base_dir = {},
                        const std::string& source = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

// One JSON object per tick followed by a summary object, newline separated.
std::string trace_to_jsonl(const RunTrace& trace, ControllerKind controller,
                           std::uint64_t seed);

std::string metrics_to_json(const std::string& scenario_name,
                            const std::vector<MetricsReport>& reports);

// index, observation count and truth pose per keyframe, CSV.
std::string keyframe_table_csv(const VisualPath& path);

// Plot-ready coordinates: series,point,x,y rows for the teach trajectory and
// each repeat run.
std::string trajectories_csv(const std::vector<Pose>& teach,
                             const std::vector<ControllerReport>& reports);

}  // namespace funnelnav

#endif  // FUNNELNAV_IO_H_
