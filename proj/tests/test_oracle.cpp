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

#include <algorithm>
#include <numeric>
#include <optional>

#include "helpers.hpp"
#include "mrfs/oracle.hpp"
#include "mrfs/shuffle.hpp"
#include "mrfs/validate.hpp"

using namespace mrfs;
using mrfs::testing::parse_instance;
using mrfs::testing::tiny_instance;

namespace {

// Naive reference search: every assignment vector times every global
// priority permutation; a processor runs its tasks in priority order. No
// dominance pruning.
template <class Visit>
void for_each_assignment_and_order(std::size_t n, std::size_t m, Visit&& visit) {
  std::vector<std::size_t> assign(n, 0);
  std::vector<std::size_t> order(n);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    do {
      visit(assign, order);
    } while (std::next_permutation(order.begin(), order.end()));
    std::size_t pos = 0;
    while (pos < n && ++assign[pos] == m) assign[pos++] = 0;
    if (pos == n) break;
  }
}

// Completion per task when tasks run in `order` on their assigned
// processors, each starting no earlier than release[t].
std::vector<Time> timed(const PhaseTasks& tasks, const std::vector<std::size_t>& assign,
                        const std::vector<std::size_t>& order,
                        const std::vector<Time>& release) {
  std::vector<Time> clock(tasks.processors.size(), 0);
  std::vector<Time> end(tasks.tasks.size(), 0);
  for (const std::size_t t : order) {
    const std::size_t i = assign[t];
    clock[i] = std::max(clock[i], release[t]) + tasks.tasks[t].proc_times[i];
    end[t] = clock[i];
  }
  return end;
}

std::vector<Time> per_job(const PhaseTasks& tasks, const std::vector<Time>& end) {
  std::vector<Time> out(tasks.job_count, 0);
  for (std::size_t t = 0; t < end.size(); ++t) {
    out[tasks.tasks[t].ref.job] = std::max(out[tasks.tasks[t].ref.job], end[t]);
  }
  return out;
}

Rational naive_phase(const Instance& inst, Phase phase) {
  const PhaseTasks tasks = phase_tasks(inst, phase);
  std::optional<Rational> best;
  const std::vector<Time> zero(tasks.tasks.size(), 0);
  for_each_assignment_and_order(
      tasks.tasks.size(), tasks.processors.size(), [&](const auto& a, const auto& o) {
        const Rational v = weighted_sum(inst, per_job(tasks, timed(tasks, a, o, zero)));
        if (!best || v < *best) best = v;
      });
  return *best;
}

Rational naive_mr(const Instance& inst) {
  const PhaseTasks maps = phase_tasks(inst, Phase::kMap);
  const PhaseTasks reduces = phase_tasks(inst, Phase::kReduce);
  std::vector<std::vector<Time>> releases;
  const std::vector<Time> zero(maps.tasks.size(), 0);
  for_each_assignment_and_order(
      maps.tasks.size(), maps.processors.size(), [&](const auto& a, const auto& o) {
        const auto done = per_job(maps, timed(maps, a, o, zero));
        std::vector<Time> release;
        for (const auto& t : reduces.tasks) release.push_back(done[t.ref.job]);
        releases.push_back(release);
      });
  std::sort(releases.begin(), releases.end());
  releases.erase(std::unique(releases.begin(), releases.end()), releases.end());
  std::optional<Rational> best;
  for_each_assignment_and_order(
      reduces.tasks.size(), reduces.processors.size(), [&](const auto& a, const auto& o) {
        for (const auto& release : releases) {
          const Rational v =
              weighted_sum(inst, per_job(reduces, timed(reduces, a, o, release)));
          if (!best || v < *best) best = v;
        }
      });
  return *best;
}

// Separate input processors, naively: maps, reduce arrangement, and a
// global priority order over the positive transfers.
Rational naive_separate(const Instance& inst) {
  const PhaseTasks maps = phase_tasks(inst, Phase::kMap);
  const PhaseTasks reduces = phase_tasks(inst, Phase::kReduce);
  const std::vector<Time> zero_maps(maps.tasks.size(), 0);
  std::vector<std::vector<Time>> map_ends;
  for_each_assignment_and_order(
      maps.tasks.size(), maps.processors.size(), [&](const auto& a, const auto& o) {
        map_ends.push_back(timed(maps, a, o, zero_maps));
      });
  std::sort(map_ends.begin(), map_ends.end());
  map_ends.erase(std::unique(map_ends.begin(), map_ends.end()), map_ends.end());
  const auto map_index = [&](std::size_t job, std::size_t k) {
    for (std::size_t t = 0; t < maps.tasks.size(); ++t) {
      if (maps.tasks[t].ref.job == job && maps.tasks[t].ref.task == k) return t;
    }
    return maps.tasks.size();
  };
  std::optional<Rational> best;
  for_each_assignment_and_order(
      reduces.tasks.size(), reduces.processors.size(), [&](const auto& a, const auto& o) {
        // Transfers: (reduce task index, map task index, length).
        struct Transfer { std::size_t reduce, map; Time length; };
        std::vector<Transfer> transfers;
        for (std::size_t r = 0; r < reduces.tasks.size(); ++r) {
          const TaskRef ref = reduces.tasks[r].ref;
          const auto& matrix = *inst.jobs[ref.job].shuffle_times;
          for (std::size_t k = 0; k < matrix.size(); ++k) {
            transfers.push_back({r, map_index(ref.job, k), matrix[k][ref.task]});
          }
        }
        std::vector<std::size_t> perm(transfers.size());
        for (const auto& ends : map_ends) {
          std::iota(perm.begin(), perm.end(), 0);
          do {
            std::vector<Time> input_clock(reduces.processors.size(), 0);
            std::vector<Time> release(reduces.tasks.size(), 0);
            for (std::size_t r = 0; r < reduces.tasks.size(); ++r) {
              for (std::size_t t = 0; t < maps.tasks.size(); ++t) {
                if (maps.tasks[t].ref.job == reduces.tasks[r].ref.job) {
                  release[r] = std::max(release[r], ends[t]);
                }
              }
            }
            for (const std::size_t x : perm) {
              const Transfer& tr = transfers[x];
              const Time ready = ends[tr.map];
              if (tr.length == 0) continue;  // never blocks anything
              Time& clock = input_clock[a[tr.reduce]];
              clock = std::max(clock, ready) + tr.length;
              release[tr.reduce] = std::max(release[tr.reduce], clock);
            }
            const Rational v =
                weighted_sum(inst, per_job(reduces, timed(reduces, a, o, release)));
            if (!best || v < *best) best = v;
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
      });
  return *best;
}

Instance small_shuffle_instance(std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  config.jobs = 1 + static_cast<int>(seed % 2);
  config.map_tasks = {1, 2};
  config.reduce_tasks = {1, 1};
  config.map_processors = 2;
  config.reduce_processors = 2;
  config.processing_time = {1, 5};
  config.shuffle_time = {0, 4};
  return generate_instance(config);
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("single task picks its faster processor") {
    const Instance inst = parse_instance(R"({
      "jobs": [{"id": 0, "weight": 1,
                "map_tasks": [{"proc_times": {"m1": 5, "m2": 3}}],
                "reduce_tasks": [{"proc_times": {"r1": 1}}]}],
      "map_processors": ["m1", "m2"], "reduce_processors": ["r1"]})");
    const auto r = brute_force_phase(inst, Phase::kMap);
    CHECK(r.optimum == 3);
    CHECK(r.witness.placements.front().processor == "m2");
    CHECK(r.leaves == 2);
  }

  TEST_CASE("two unit jobs on one processor") {
    const auto r = brute_force_phase(mrfs::testing::load_data("two_unit.json"), Phase::kMap);
    CHECK(r.optimum == 3);
  }

  TEST_CASE("mapreduce hand examples") {
    const Instance one = parse_instance(R"({
      "jobs": [{"id": 0, "weight": 1,
                "map_tasks": [{"proc_times": {"m1": 3}}],
                "reduce_tasks": [{"proc_times": {"r1": 2}}]}],
      "map_processors": ["m1"], "reduce_processors": ["r1"]})");
    CHECK(brute_force_mr(one).optimum == 5);
    const Instance parallel = parse_instance(R"({
      "jobs": [{"id": 0, "weight": 1,
                "map_tasks": [{"proc_times": {"m1": 3, "m2": 3}},
                              {"proc_times": {"m1": 3, "m2": 3}}],
                "reduce_tasks": [{"proc_times": {"r1": 1}}]}],
      "map_processors": ["m1", "m2"], "reduce_processors": ["r1"]})");
    CHECK(brute_force_mr(parallel).optimum == 4);
  }

  TEST_CASE("phase search matches a naive enumeration") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const Instance inst = tiny_instance(seed, 2);
      for (const Phase phase : {Phase::kMap, Phase::kReduce}) {
        CHECK(brute_force_phase(inst, phase).optimum == naive_phase(inst, phase));
      }
    }
  }

  TEST_CASE("mapreduce search matches a naive enumeration") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const Instance inst = tiny_instance(seed, 2);
      const OracleResult r = brute_force_mr(inst);
      CHECK(r.optimum == naive_mr(inst));
      CHECK(validate_schedule(inst, r.witness, ValidationMode::kMr).ok());
    }
  }

  TEST_CASE("separate-processor search matches a naive enumeration") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Instance inst = small_shuffle_instance(seed);
      const OracleResult r = brute_force_msr(inst, ShuffleModel::kSeparate);
      CHECK(r.optimum == naive_separate(inst));
      CHECK(validate_schedule(inst, r.witness, ValidationMode::kMsrSeparate).ok());
    }
  }

  TEST_CASE("shuffle models relate as expected") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const Instance inst = tiny_instance(seed, 2);
      const OracleResult same = brute_force_msr(inst, ShuffleModel::kSame);
      const OracleResult sep = brute_force_msr(inst, ShuffleModel::kSeparate);
      CHECK(validate_schedule(inst, same.witness, ValidationMode::kMsrSame).ok());
      CHECK(validate_schedule(inst, sep.witness, ValidationMode::kMsrSeparate).ok());
      CHECK(sep.optimum <= same.optimum);
      CHECK(same.optimum <= 2 * sep.optimum);
      CHECK(same.optimum >= brute_force_mr(inst).optimum);
    }
  }

  TEST_CASE("zero transfers reduce to mapreduce") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Instance inst = tiny_instance(seed, 2);
      for (auto& job : inst.jobs) {
        for (auto& row : *job.shuffle_times) std::fill(row.begin(), row.end(), 0);
      }
      const Rational mr = brute_force_mr(inst).optimum;
      CHECK(brute_force_msr(inst, ShuffleModel::kSame).optimum == mr);
      CHECK(brute_force_msr(inst, ShuffleModel::kSeparate).optimum == mr);
    }
  }

  TEST_CASE("optimum is monotone in processing times") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      Instance inst = tiny_instance(seed, 2);
      const Rational before = brute_force_mr(inst).optimum;
      for (Time& p : inst.jobs[0].map_tasks[0].proc_times) p = std::max<Time>(1, p - 1);
      CHECK(brute_force_mr(inst).optimum <= before);
    }
  }

  TEST_CASE("cap refuses instead of truncating") {
    const Instance inst = tiny_instance(2);  // three jobs
    REQUIRE(inst.jobs.size() == 3);
    CHECK_THROWS_AS(brute_force_mr(inst, OracleOptions{10}), CapExceeded);
    CHECK_THROWS_AS(brute_force_phase(inst, Phase::kMap, OracleOptions{1}), CapExceeded);
  }

  TEST_CASE("overlapping pools are unsupported") {
    Instance inst = tiny_instance(1);
    inst.reduce_processors = inst.map_processors;
    CHECK_THROWS_AS(brute_force_mr(inst), std::invalid_argument);
  }
}
