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

#include <doctest.h>

#include "helpers.hpp"
#include "mrfs/validate.hpp"

using namespace mrfs;
using mrfs::testing::parse_instance;

namespace {

// Two jobs: job 0 has two map tasks and one reduce task with transfers
// (1, 2); job 1 has one map and one reduce task and no transfer time.
const char* kInstance = R"({
  "jobs": [
    {"id": 0, "weight": 1,
     "map_tasks": [{"proc_times": {"m1": 3, "m2": 3}},
                   {"proc_times": {"m1": 2, "m2": 2}}],
     "reduce_tasks": [{"proc_times": {"r1": 2, "r2": 2}}],
     "shuffle_times": [[1], [2]]},
    {"id": 1, "weight": 2,
     "map_tasks": [{"proc_times": {"m1": 1, "m2": 1}}],
     "reduce_tasks": [{"proc_times": {"r1": 1, "r2": 1}}],
     "shuffle_times": [[0]]}
  ],
  "map_processors": ["m1", "m2"],
  "reduce_processors": ["r1", "r2"],
  "input_processors": ["s1", "s2"]
})";

TaskRef map(std::size_t job, std::size_t k) { return {Phase::kMap, job, k, 0}; }
TaskRef red(std::size_t job) { return {Phase::kReduce, job, 0, 0}; }
TaskRef sh(std::size_t job, std::size_t k) { return {Phase::kShuffle, job, 0, k}; }

// Valid in msr-same mode: objective 1*8 + 2*2 = 12.
std::vector<Placement> same_placements() {
  return {{map(0, 0), "m1", 0, 3},  {map(0, 1), "m2", 1, 3},
          {map(1, 0), "m2", 0, 1},  {sh(0, 0), "r1", 3, 4},
          {sh(0, 1), "r1", 4, 6},   {red(0), "r1", 6, 8},
          {sh(1, 0), "r2", 1, 1},   {red(1), "r2", 1, 2}};
}

std::vector<Placement> mr_placements() {
  std::vector<Placement> out;
  for (const auto& p : same_placements()) {
    if (p.task.phase != Phase::kShuffle) out.push_back(p);
  }
  return out;
}

ValidationReport check(const Instance& inst, std::vector<Placement> placements,
                       ValidationMode mode) {
  return validate_schedule(inst, make_merged_schedule(inst, std::move(placements)),
                           mode);
}

Placement& find(std::vector<Placement>& placements, const TaskRef& ref) {
  for (auto& p : placements) {
    if (p.task == ref) return p;
  }
  throw std::logic_error("no such placement");
}

}  // namespace

TEST_SUITE("validate") {
  TEST_CASE("modes parse by name") {
    CHECK(parse_mode("mr") == ValidationMode::kMr);
    CHECK(parse_mode("msr-same") == ValidationMode::kMsrSame);
    CHECK(parse_mode("msr-separate") == ValidationMode::kMsrSeparate);
    CHECK(mode_name(ValidationMode::kMsrSeparate) == "msr-separate");
    CHECK_THROWS(parse_mode("msr"));
  }

  TEST_CASE("valid schedules pass") {
    const Instance inst = parse_instance(kInstance);
    const auto same = check(inst, same_placements(), ValidationMode::kMsrSame);
    CHECK(same.ok());
    CHECK(same.objective == 12);
    CHECK(same.job_completion == std::vector<Time>{8, 2});
    CHECK(check(inst, mr_placements(), ValidationMode::kMr).ok());
  }

  TEST_CASE("shuffles are foreign tasks in mr mode") {
    const Instance inst = parse_instance(kInstance);
    CHECK(check(inst, same_placements(), ValidationMode::kMr).has("unknown-task"));
  }

  TEST_CASE("missing and duplicate tasks") {
    const Instance inst = parse_instance(kInstance);
    auto placements = mr_placements();
    placements.pop_back();
    CHECK(check(inst, placements, ValidationMode::kMr).has("missing"));
    placements = mr_placements();
    placements.push_back(placements.front());
    CHECK(check(inst, placements, ValidationMode::kMr).has("duplicate"));
  }

  TEST_CASE("processor, duration and start checks") {
    const Instance inst = parse_instance(kInstance);
    auto placements = mr_placements();
    find(placements, map(0, 0)).processor = "r1";
    CHECK(check(inst, placements, ValidationMode::kMr).has("processor"));

    placements = mr_placements();
    find(placements, map(0, 0)).end = 4;
    CHECK(check(inst, placements, ValidationMode::kMr).has("duration"));

    placements = mr_placements();
    find(placements, map(1, 0)) = {map(1, 0), "m2", -1, 0};
    CHECK(check(inst, placements, ValidationMode::kMr).has("negative-start"));
  }

  TEST_CASE("overlap ignores zero-length placements") {
    const Instance inst = parse_instance(kInstance);
    auto placements = mr_placements();
    find(placements, map(0, 1)) = {map(0, 1), "m2", 0, 2};
    const auto report = check(inst, placements, ValidationMode::kMr);
    CHECK(report.has("overlap"));

    // Job 1's zero-length transfer at time 7 lies inside job 0's reduce
    // window on r2 without counting as overlap.
    placements.clear();
    for (auto p : same_placements()) {
      if (p.task.phase != Phase::kMap) p.processor = "r2";
      placements.push_back(p);
    }
    find(placements, sh(1, 0)) = {sh(1, 0), "r2", 7, 7};
    find(placements, red(1)) = {red(1), "r2", 8, 9};
    const auto shared = check(inst, placements, ValidationMode::kMsrSame);
    CHECK(shared.ok());
    CHECK(shared.objective == 26);
  }

  TEST_CASE("reduce waits for all maps of its job") {
    const Instance inst = parse_instance(kInstance);
    auto placements = mr_placements();
    find(placements, red(0)) = {red(0), "r1", 2, 4};
    const auto report = check(inst, placements, ValidationMode::kMr);
    REQUIRE(report.has("precedence"));
    CHECK(report.violations[0].message.rfind(
              "precedence: reduce starts before map completion", 0) == 0);
  }

  TEST_CASE("transfer rules") {
    const Instance inst = parse_instance(kInstance);
    auto placements = same_placements();
    // Transfer from map 0 (ends at 3) starting at 2.
    find(placements, sh(0, 0)) = {sh(0, 0), "r1", 2, 3};
    CHECK(check(inst, placements, ValidationMode::kMsrSame).has("property-i"));

    placements = same_placements();
    find(placements, red(0)) = {red(0), "r1", 5, 7};
    CHECK(check(inst, placements, ValidationMode::kMsrSame)
              .has("shuffle-before-reduce"));

    // Same mode: a transfer must run on its reduce task's processor.
    placements = same_placements();
    find(placements, sh(0, 0)).processor = "r2";
    CHECK(check(inst, placements, ValidationMode::kMsrSame).has("processor"));

    // Separate mode: transfers belong on the paired input processor.
    CHECK(check(inst, same_placements(), ValidationMode::kMsrSeparate)
              .has("processor"));
    placements = same_placements();
    for (auto& p : placements) {
      if (p.task.phase == Phase::kShuffle) p.processor = p.processor == "r1" ? "s1" : "s2";
    }
    CHECK(check(inst, placements, ValidationMode::kMsrSeparate).ok());
  }

  TEST_CASE("transfers into one reduce processor are serialized") {
    const Instance inst = parse_instance(kInstance);
    auto placements = same_placements();
    find(placements, sh(0, 1)) = {sh(0, 1), "r1", 3, 5};
    find(placements, red(0)) = {red(0), "r1", 5, 7};
    const auto report = check(inst, placements, ValidationMode::kMsrSame);
    REQUIRE(report.has("property-iv"));
    bool tagged = false;
    for (const auto& v : report.violations) {
      if (v.rule == "property-iv") tagged = v.message.rfind("Property (iv)", 0) == 0;
    }
    CHECK(tagged);
  }

  TEST_CASE("stored completion and objective must match") {
    const Instance inst = parse_instance(kInstance);
    MergedSchedule s = make_merged_schedule(inst, mr_placements());
    s.objective += 1;
    CHECK(validate_schedule(inst, s, ValidationMode::kMr).has("objective"));
    s = make_merged_schedule(inst, mr_placements());
    s.job_completion[0] = 9;
    CHECK(validate_schedule(inst, s, ValidationMode::kMr).has("completion"));
  }

  TEST_CASE("phase schedules validate on their pool") {
    const Instance inst = parse_instance(kInstance);
    const PhaseSchedule good = make_phase_schedule(
        inst, Phase::kMap,
        {{map(0, 0), "m1", 0, 3}, {map(0, 1), "m2", 0, 2}, {map(1, 0), "m2", 2, 3}});
    CHECK(validate_phase_schedule(inst, good).ok());
    const PhaseSchedule bad = make_phase_schedule(
        inst, Phase::kMap,
        {{map(0, 0), "m1", 0, 3}, {map(0, 1), "m1", 1, 3}, {map(1, 0), "m2", 2, 3}});
    CHECK(validate_phase_schedule(inst, bad).has("overlap"));
  }
}
