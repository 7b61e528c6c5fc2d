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

// Core domain types for multi-task MapReduce scheduling on unrelated
// processors.
//
// An instance holds jobs, each with Map and Reduce tasks and an optional
// matrix of shuffle transfer times, plus the processor pools the phases run
// on. Processing times are stored per task as a vector aligned with the
// pool of the task's phase, so `proc_times[i]` is the time on
// `pool(phase)[i]`.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mrfs/rational.hpp"

namespace mrfs {

enum class Phase { kMap, kReduce, kShuffle };

std::string_view phase_name(Phase phase);
Phase parse_phase(std::string_view name);

struct Task {
  std::vector<Time> proc_times;
};

struct Job {
  int id = 0;
  Rational weight = 1;
  std::vector<Task> map_tasks;
  std::vector<Task> reduce_tasks;
  // shuffle_times[k][r]: transfer time from map task k to reduce task r.
  std::optional<std::vector<std::vector<Time>>> shuffle_times;

  const std::vector<Task>& tasks(Phase phase) const;
  // Total transfer time into reduce task r; zero without a shuffle matrix.
  Time shuffle_total(std::size_t reduce) const;
};

struct Instance {
  std::vector<Job> jobs;
  std::vector<std::string> map_processors;
  std::vector<std::string> reduce_processors;
  // Paired one-to-one with reduce_processors by position.
  std::optional<std::vector<std::string>> input_processors;

  const std::vector<std::string>& pool(Phase phase) const;
  bool pools_disjoint() const;
  bool has_shuffle() const;
  std::size_t task_count(Phase phase) const;
};

// Thrown for malformed or invariant-violating instances. `path` points at the
// offending element, e.g. "jobs[2].map_tasks[0].proc_times.m3".
class InstanceError : public std::runtime_error {
 public:
  InstanceError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Throws InstanceError naming the first violated rule.
void check_instance(const Instance& instance);

// Identifies a task. For shuffle tasks `task` is the destination reduce task
// r and `map_task` the source map task k; otherwise `map_task` is unused.
struct TaskRef {
  Phase phase = Phase::kMap;
  std::size_t job = 0;
  std::size_t task = 0;
  std::size_t map_task = 0;

  friend auto operator<=>(const TaskRef&, const TaskRef&) = default;
};

std::string describe(const Instance& instance, const TaskRef& ref);

// Processing time of a task on a processor, or nullopt if the processor is
// not in the task's pool. Shuffle times are processor independent.
std::optional<Time> processing_time(const Instance& instance,
                                    const TaskRef& ref,
                                    std::string_view processor);

struct Placement {
  TaskRef task;
  std::string processor;
  Time start = 0;
  Time end = 0;

  friend bool operator==(const Placement&, const Placement&) = default;
};

// One phase's tasks placed on that phase's pool.
struct PhaseSchedule {
  Phase phase = Phase::kMap;
  std::vector<Placement> placements;
  // task_completion[job][task]
  std::vector<std::vector<Time>> task_completion;
  // Max over the job's tasks in this phase.
  std::vector<Time> job_completion;
};

// Builds completion tables from placements. Throws std::logic_error when a
// task of the phase is missing or placed twice.
PhaseSchedule make_phase_schedule(const Instance& instance, Phase phase,
                                  std::vector<Placement> placements);

struct MergedSchedule {
  std::vector<Placement> placements;
  // C_j = max over the job's reduce tasks.
  std::vector<Time> job_completion;
  Rational objective = 0;
};

MergedSchedule make_merged_schedule(const Instance& instance,
                                    std::vector<Placement> placements);

// Sum over jobs of w_j * completion[j].
Rational weighted_sum(const Instance& instance,
                      const std::vector<Time>& completion);

// Orders placements by (processor, start, task) for stable output.
void sort_placements(std::vector<Placement>& placements);

// Flat view of one phase: its pool and its tasks in (job, task) order.
struct PhaseTask {
  TaskRef ref;
  std::vector<Time> proc_times;  // aligned with PhaseTasks::processors
};

struct PhaseTasks {
  Phase phase = Phase::kMap;
  std::vector<std::string> processors;
  std::vector<PhaseTask> tasks;
  std::size_t job_count = 0;

  // Sum over tasks of the slowest processing time; an upper bound on the
  // makespan of any idle-free schedule of the phase.
  Time horizon() const;
};

PhaseTasks phase_tasks(const Instance& instance, Phase phase);

}  // namespace mrfs
