// Copyright 2026 The mrfs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON serialization for instances and schedules.
//
// Instance:
//   { "jobs": [ { "id": 0, "weight": 1 | "3/2",
//                 "map_tasks":    [ { "proc_times": { "m1": 3, ... } } ],
//                 "reduce_tasks": [ { "proc_times": { "r1": 2, ... } } ],
//                 "shuffle_times": [[t_00, t_01, ...], ...] } ],   // optional
//     "map_processors": ["m1", ...], "reduce_processors": ["r1", ...],
//     "input_processors": ["s1", ...] }                            // optional
//
// Schedule:
//   { "placements": [ { "kind": "map"|"reduce"|"shuffle", "job": <job id>,
//                       "task": k, "map_task": k (shuffle only),
//                       "processor": "m1", "start": 0, "end": 3 } ],
//     "job_completion": { "<job id>": C_j }, "objective": 5 | "11/2" }
//
// Phase schedules additionally carry "phase" and "task_completion". Canonical
// form is what the writers emit: sorted keys, integers and rational strings,
// no floating point.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mrfs/model.hpp"

namespace mrfs {

using Json = nlohmann::json;

Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& value, const std::string& path);

Json to_json(const Instance& instance);
// Parses and runs check_instance. Throws InstanceError (with path) for
// structural or invariant problems.
Instance instance_from_json(const Json& json);
Instance load_instance(std::istream& in);
Instance load_instance_file(const std::string& path);

std::string canonical_json(const Json& json);
std::string canonical_json(const Instance& instance);
// FNV-1a of the canonical instance text, as 16 hex digits.
std::string instance_digest(const Instance& instance);

Json to_json(const Instance& instance, const MergedSchedule& schedule);
Json to_json(const Instance& instance, const PhaseSchedule& schedule);
// Reads placements and the stored completion/objective fields verbatim so
// that validate_schedule can compare them with recomputed values.
MergedSchedule merged_schedule_from_json(const Instance& instance,
                                         const Json& json);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace mrfs
