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

#include "mrfs/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace mrfs {

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::kMap:
      return "map";
    case Phase::kReduce:
      return "reduce";
    case Phase::kShuffle:
      return "shuffle";
  }
  return "?";
}

Phase parse_phase(std::string_view name) {
  if (name == "map") return Phase::kMap;
  if (name == "reduce") return Phase::kReduce;
  if (name == "shuffle") return Phase::kShuffle;
  throw std::invalid_argument("unknown phase '" + std::string(name) + "'");
}

const std::vector<Task>& Job::tasks(Phase phase) const {
  if (phase == Phase::kMap) return map_tasks;
  if (phase == Phase::kReduce) return reduce_tasks;
  throw std::invalid_argument("shuffle tasks are not stored as Task");
}

Time Job::shuffle_total(std::size_t reduce) const {
  if (!shuffle_times) return 0;
  Time total = 0;
  for (const auto& row : *shuffle_times) total += row.at(reduce);
  return total;
}

const std::vector<std::string>& Instance::pool(Phase phase) const {
  if (phase == Phase::kMap) return map_processors;
  if (phase == Phase::kReduce) return reduce_processors;
  if (!input_processors) {
    throw std::invalid_argument("instance has no input processors");
  }
  return *input_processors;
}

bool Instance::pools_disjoint() const {
  for (const auto& m : map_processors) {
    if (std::find(reduce_processors.begin(), reduce_processors.end(), m) !=
        reduce_processors.end()) {
      return false;
    }
  }
  return true;
}

bool Instance::has_shuffle() const {
  return !jobs.empty() &&
         std::all_of(jobs.begin(), jobs.end(),
                     [](const Job& j) { return j.shuffle_times.has_value(); });
}

std::size_t Instance::task_count(Phase phase) const {
  std::size_t n = 0;
  for (const auto& job : jobs) {
    if (phase == Phase::kShuffle) {
      n += job.map_tasks.size() * job.reduce_tasks.size();
    } else {
      n += job.tasks(phase).size();
    }
  }
  return n;
}

namespace {

void check_pool(const std::vector<std::string>& pool, const std::string& path) {
  if (pool.empty()) throw InstanceError(path, "processor pool is empty");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].empty()) {
      throw InstanceError(path + "[" + std::to_string(i) + "]",
                          "processor id is empty");
    }
    if (!seen.insert(pool[i]).second) {
      throw InstanceError(path + "[" + std::to_string(i) + "]",
                          "duplicate processor id '" + pool[i] + "'");
    }
  }
}

void check_tasks(const std::vector<Task>& tasks,
                 const std::vector<std::string>& pool,
                 const std::string& path) {
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const std::string task_path = path + "[" + std::to_string(k) + "]";
    const auto& times = tasks[k].proc_times;
    if (times.size() != pool.size()) {
      throw InstanceError(task_path + ".proc_times",
                          "needs one entry per processor of the pool");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] <= 0) {
        throw InstanceError(task_path + ".proc_times." + pool[i],
                            "processing times must be positive integers");
      }
    }
  }
}

}  // namespace

void check_instance(const Instance& instance) {
  check_pool(instance.map_processors, "map_processors");
  check_pool(instance.reduce_processors, "reduce_processors");
  if (instance.input_processors) {
    const auto& input = *instance.input_processors;
    check_pool(input, "input_processors");
    if (input.size() != instance.reduce_processors.size()) {
      throw InstanceError("input_processors",
                          "must pair one-to-one with reduce_processors");
    }
    for (const auto& s : input) {
      const auto clash = [&](const std::vector<std::string>& pool) {
        return std::find(pool.begin(), pool.end(), s) != pool.end();
      };
      if (clash(instance.map_processors) || clash(instance.reduce_processors)) {
        throw InstanceError("input_processors",
                            "input processor '" + s +
                                "' also appears in the map or reduce pool");
      }
    }
  }

  std::set<int> ids;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const Job& job = instance.jobs[j];
    const std::string path = "jobs[" + std::to_string(j) + "]";
    if (job.id < 0) throw InstanceError(path + ".id", "job id must be >= 0");
    if (!ids.insert(job.id).second) {
      throw InstanceError(path + ".id",
                          "duplicate job id " + std::to_string(job.id));
    }
    if (job.weight <= 0) {
      throw InstanceError(path + ".weight", "weight must be positive");
    }
    if (job.map_tasks.empty()) {
      throw InstanceError(path + ".map_tasks", "job needs at least one map task");
    }
    if (job.reduce_tasks.empty()) {
      throw InstanceError(path + ".reduce_tasks",
                          "job needs at least one reduce task");
    }
    check_tasks(job.map_tasks, instance.map_processors, path + ".map_tasks");
    check_tasks(job.reduce_tasks, instance.reduce_processors,
                path + ".reduce_tasks");
    if (job.shuffle_times) {
      const auto& matrix = *job.shuffle_times;
      if (matrix.size() != job.map_tasks.size()) {
        throw InstanceError(path + ".shuffle_times",
                            "shuffle matrix dimension: expected " +
                                std::to_string(job.map_tasks.size()) +
                                " rows (one per map task)");
      }
      for (std::size_t k = 0; k < matrix.size(); ++k) {
        const std::string row_path =
            path + ".shuffle_times[" + std::to_string(k) + "]";
        if (matrix[k].size() != job.reduce_tasks.size()) {
          throw InstanceError(row_path,
                              "shuffle matrix dimension: expected " +
                                  std::to_string(job.reduce_tasks.size()) +
                                  " columns (one per reduce task)");
        }
        for (std::size_t r = 0; r < matrix[k].size(); ++r) {
          if (matrix[k][r] < 0) {
            throw InstanceError(row_path + "[" + std::to_string(r) + "]",
                                "shuffle times must be non-negative");
          }
        }
      }
    }
  }
}

std::string describe(const Instance& instance, const TaskRef& ref) {
  const int id = ref.job < instance.jobs.size() ? instance.jobs[ref.job].id
                                                : static_cast<int>(ref.job);
  std::string s = std::string(phase_name(ref.phase)) + "(job " +
                  std::to_string(id) + ", task " + std::to_string(ref.task);
  if (ref.phase == Phase::kShuffle) {
    s += ", from map " + std::to_string(ref.map_task);
  }
  return s + ")";
}

std::optional<Time> processing_time(const Instance& instance,
                                    const TaskRef& ref,
                                    std::string_view processor) {
  if (ref.job >= instance.jobs.size()) return std::nullopt;
  const Job& job = instance.jobs[ref.job];
  if (ref.phase == Phase::kShuffle) {
    if (!job.shuffle_times || ref.map_task >= job.map_tasks.size() ||
        ref.task >= job.reduce_tasks.size()) {
      return std::nullopt;
    }
    return (*job.shuffle_times)[ref.map_task][ref.task];
  }
  const auto& tasks = job.tasks(ref.phase);
  if (ref.task >= tasks.size()) return std::nullopt;
  const auto& pool = instance.pool(ref.phase);
  const auto it = std::find(pool.begin(), pool.end(), processor);
  if (it == pool.end()) return std::nullopt;
  return tasks[ref.task].proc_times[static_cast<std::size_t>(it - pool.begin())];
}

PhaseSchedule make_phase_schedule(const Instance& instance, Phase phase,
                                  std::vector<Placement> placements) {
  PhaseSchedule schedule;
  schedule.phase = phase;
  schedule.task_completion.resize(instance.jobs.size());
  std::vector<std::vector<bool>> seen(instance.jobs.size());
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const auto n = instance.jobs[j].tasks(phase).size();
    schedule.task_completion[j].assign(n, 0);
    seen[j].assign(n, false);
  }
  for (const auto& p : placements) {
    if (p.task.phase != phase || p.task.job >= instance.jobs.size() ||
        p.task.task >= seen[p.task.job].size()) {
      throw std::logic_error("placement " + describe(instance, p.task) +
                             " does not belong to the " +
                             std::string(phase_name(phase)) + " phase");
    }
    if (seen[p.task.job][p.task.task]) {
      throw std::logic_error(describe(instance, p.task) + " placed twice");
    }
    seen[p.task.job][p.task.task] = true;
    schedule.task_completion[p.task.job][p.task.task] = p.end;
  }
  schedule.job_completion.assign(instance.jobs.size(), 0);
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    for (std::size_t k = 0; k < seen[j].size(); ++k) {
      if (!seen[j][k]) {
        throw std::logic_error(
            describe(instance, TaskRef{phase, j, k, 0}) + " is not placed");
      }
      schedule.job_completion[j] =
          std::max(schedule.job_completion[j], schedule.task_completion[j][k]);
    }
  }
  sort_placements(placements);
  schedule.placements = std::move(placements);
  return schedule;
}

MergedSchedule make_merged_schedule(const Instance& instance,
                                    std::vector<Placement> placements) {
  MergedSchedule schedule;
  schedule.job_completion.assign(instance.jobs.size(), 0);
  for (const auto& p : placements) {
    if (p.task.phase == Phase::kReduce && p.task.job < instance.jobs.size()) {
      schedule.job_completion[p.task.job] =
          std::max(schedule.job_completion[p.task.job], p.end);
    }
  }
  schedule.objective = weighted_sum(instance, schedule.job_completion);
  sort_placements(placements);
  schedule.placements = std::move(placements);
  return schedule;
}

Rational weighted_sum(const Instance& instance,
                      const std::vector<Time>& completion) {
  Rational total = 0;
  for (std::size_t j = 0; j < instance.jobs.size() && j < completion.size();
       ++j) {
    total += instance.jobs[j].weight * completion[j];
  }
  return total;
}

void sort_placements(std::vector<Placement>& placements) {
  std::sort(placements.begin(), placements.end(),
            [](const Placement& a, const Placement& b) {
              return std::tie(a.processor, a.start, a.end, a.task) <
                     std::tie(b.processor, b.start, b.end, b.task);
            });
}

Time PhaseTasks::horizon() const {
  Time total = 0;
  for (const auto& task : tasks) {
    total += *std::max_element(task.proc_times.begin(), task.proc_times.end());
  }
  return total;
}

PhaseTasks phase_tasks(const Instance& instance, Phase phase) {
  PhaseTasks out;
  out.phase = phase;
  out.processors = instance.pool(phase);
  out.job_count = instance.jobs.size();
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const auto& tasks = instance.jobs[j].tasks(phase);
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      out.tasks.push_back({TaskRef{phase, j, k, 0}, tasks[k].proc_times});
    }
  }
  return out;
}

}  // namespace mrfs
