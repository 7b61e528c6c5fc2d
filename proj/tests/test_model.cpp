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

#include <sstream>

#include "helpers.hpp"
#include "mrfs/io.hpp"

using namespace mrfs;
using mrfs::testing::parse_instance;

namespace {

const char* kOneJob = R"({
  "jobs": [{"id": 4, "weight": "3/2",
            "map_tasks": [{"proc_times": {"m1": 3, "m2": 5}}],
            "reduce_tasks": [{"proc_times": {"r1": 2}}],
            "shuffle_times": [[1]]}],
  "map_processors": ["m1", "m2"],
  "reduce_processors": ["r1"],
  "input_processors": ["s1"]
})";

std::string error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const InstanceError& error) {
    return error.what();
  }
  return "";
}

std::string with_job(const std::string& job) {
  return R"({"jobs": [)" + job +
         R"(], "map_processors": ["m1"], "reduce_processors": ["r1"]})";
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("rationals parse integers and fractions only") {
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(to_string(Rational(3, 2)) == "3/2");
    CHECK(to_string(Rational(4)) == "4");
    CHECK(mrfs::ceil(Rational(7, 2)) == 4);
    CHECK(mrfs::pow(Rational(3, 2), 3) == Rational(27, 8));
  }

  TEST_CASE("instance json round trip is canonical") {
    const Instance inst = parse_instance(kOneJob);
    CHECK(inst.jobs[0].id == 4);
    CHECK(inst.jobs[0].weight == Rational(3, 2));
    CHECK(inst.jobs[0].map_tasks[0].proc_times == std::vector<Time>{3, 5});
    CHECK(inst.jobs[0].shuffle_total(0) == 1);
    const std::string text = canonical_json(inst);
    CHECK(text.back() == '\n');
    CHECK(canonical_json(parse_instance(text)) == text);
    CHECK(text.find("\"weight\": \"3/2\"") != std::string::npos);
  }

  TEST_CASE("digest identifies instances") {
    const Instance a = parse_instance(kOneJob);
    Instance b = a;
    CHECK(instance_digest(a) == instance_digest(b));
    CHECK(instance_digest(a).size() == 16);
    b.jobs[0].map_tasks[0].proc_times[0] = 4;
    CHECK(instance_digest(a) != instance_digest(b));
  }

  TEST_CASE("invalid instances are rejected with a path") {
    const std::string map = R"("map_tasks": [{"proc_times": {"m1": 1}}])";
    const std::string reduce = R"("reduce_tasks": [{"proc_times": {"r1": 1}}])";
    CHECK(error_of(with_job(R"({"id": 0, "weight": 0, )" + map + ", " + reduce +
                            "}"))
              .find("weight must be positive") != std::string::npos);
    CHECK(error_of(with_job(R"({"id": 0, "weight": 1, "map_tasks": [], )" +
                            reduce + "}"))
              .find("job needs at least one map task") != std::string::npos);
    CHECK(error_of(with_job(
              R"({"id": 0, "weight": 1, "map_tasks": [{"proc_times": {"m1": 0}}], )" +
              reduce + "}"))
              .find("processing times must be positive integers") !=
          std::string::npos);
    CHECK(error_of(with_job(
              R"({"id": 0, "weight": 1, "map_tasks": [{"proc_times": {"m1": 1.5}}], )" +
              reduce + "}"))
              .find("jobs[0].map_tasks[0].proc_times.m1") != std::string::npos);
    CHECK(error_of(with_job(
              R"({"id": 0, "weight": 1, "map_tasks": [{"proc_times": {}}], )" +
              reduce + "}")) != "");
    CHECK(error_of(with_job(R"({"id": 0, "weight": 1, )" + map + ", " + reduce +
                            R"(, "shuffle_times": [[1, 2]]})"))
              .find("shuffle matrix dimension") != std::string::npos);
    CHECK(error_of(with_job(R"({"id": 0, "weight": 1, )" + map + ", " + reduce +
                            R"(, "shuffle_times": [[-1]]})"))
              .find("shuffle times must be non-negative") != std::string::npos);
    CHECK(error_of(R"({"jobs": [], "map_processors": [], "reduce_processors": ["r1"]})")
              .find("processor pool is empty") != std::string::npos);
  }

  TEST_CASE("input processors must pair with reduce processors") {
    std::string text = kOneJob;
    text.replace(text.find(R"(["s1"])"), 6, R"(["s1", "s2"])");
    CHECK(error_of(text).find("input_processors") != std::string::npos);
  }

  TEST_CASE("phase schedules reject missing and duplicate tasks") {
    const Instance inst = parse_instance(kOneJob);
    const Placement map{{Phase::kMap, 0, 0, 0}, "m1", 0, 3};
    CHECK_THROWS_AS(make_phase_schedule(inst, Phase::kMap, {}), std::logic_error);
    CHECK_THROWS_AS(make_phase_schedule(inst, Phase::kMap, {map, map}),
                    std::logic_error);
    const PhaseSchedule ok = make_phase_schedule(inst, Phase::kMap, {map});
    CHECK(ok.job_completion == std::vector<Time>{3});
  }

  TEST_CASE("merged schedule objective uses reduce completion") {
    const Instance inst = parse_instance(kOneJob);
    const MergedSchedule s = make_merged_schedule(
        inst, {{{Phase::kMap, 0, 0, 0}, "m1", 0, 3},
               {{Phase::kReduce, 0, 0, 0}, "r1", 4, 6}});
    CHECK(s.job_completion == std::vector<Time>{6});
    CHECK(s.objective == 9);
  }

  TEST_CASE("schedule json round trip") {
    const Instance inst = parse_instance(kOneJob);
    const MergedSchedule s = make_merged_schedule(
        inst, {{{Phase::kMap, 0, 0, 0}, "m1", 0, 3},
               {{Phase::kShuffle, 0, 0, 0}, "r1", 3, 4},
               {{Phase::kReduce, 0, 0, 0}, "r1", 4, 6}});
    const Json json = to_json(inst, s);
    const MergedSchedule back = merged_schedule_from_json(inst, json);
    CHECK(canonical_json(to_json(inst, back)) == canonical_json(json));
    CHECK(back.objective == 9);
  }

  TEST_CASE("generator is deterministic per seed") {
    GeneratorConfig config;
    config.seed = 11;
    const Instance a = generate_instance(config);
    const Instance b = generate_instance(config);
    CHECK(canonical_json(a) == canonical_json(b));
    config.seed = 12;
    CHECK(canonical_json(generate_instance(config)) != canonical_json(a));
    CHECK(a.input_processors.has_value());
    CHECK(a.has_shuffle());
    config.jobs = 0;
    CHECK_THROWS_AS(generate_instance(config), std::invalid_argument);
  }
}
