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

#include "mrfs/merge.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mrfs/io.hpp"

namespace mrfs {
namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

struct Pending {
  Placement placement;  // processor fixed, times filled in by the merge
  Time width = 0;
  Time length = 0;
  int job_id = 0;
};

// Priority among tasks competing for a processor.
auto priority(const Pending& task) {
  return std::make_tuple(task.width, task.placement.task.phase == Phase::kMap ? 0 : 1,
                         task.job_id, task.placement.task.task);
}

std::vector<Pending> pending_tasks(const Instance& instance,
                                   const PhaseSchedule& schedule,
                                   const WidthVector& widths) {
  std::vector<Pending> out;
  for (const auto& placement : schedule.placements) {
    const std::size_t job = placement.task.job;
    out.push_back({placement, widths.omega.at(job),
                   placement.end - placement.start, instance.jobs[job].id});
  }
  return out;
}

std::map<std::string, std::vector<Pending*>> by_processor(
    std::vector<Pending>& tasks) {
  std::map<std::string, std::vector<Pending*>> out;
  for (auto& task : tasks) out[task.placement.processor].push_back(&task);
  return out;
}

void merge_disjoint(std::vector<Pending>& maps, std::vector<Pending>& reduces) {
  for (auto& [processor, tasks] : by_processor(maps)) {
    std::sort(tasks.begin(), tasks.end(), [](const Pending* lhs, const Pending* rhs) {
      return priority(*lhs) < priority(*rhs);
    });
    Time clock = 0;
    for (Pending* task : tasks) {
      task->placement.start = clock;
      clock += task->length;
      task->placement.end = clock;
    }
  }
  for (auto& [processor, tasks] : by_processor(reduces)) {
    std::vector<Pending*> waiting = tasks;
    Time clock = 0;
    while (!waiting.empty()) {
      auto best = waiting.end();
      Time next_release = kNever;
      for (auto it = waiting.begin(); it != waiting.end(); ++it) {
        if ((*it)->width > clock) {
          next_release = std::min(next_release, (*it)->width);
        } else if (best == waiting.end() || priority(**it) < priority(**best)) {
          best = it;
        }
      }
      if (best == waiting.end()) {
        clock = next_release;
        continue;
      }
      (*best)->placement.start = clock;
      clock += (*best)->length;
      (*best)->placement.end = clock;
      waiting.erase(best);
    }
  }
}

void merge_shared(const Instance& instance, std::vector<Pending>& maps,
                  std::vector<Pending>& reduces) {
  std::vector<std::string> processors = instance.map_processors;
  for (const auto& name : instance.reduce_processors) {
    if (std::find(processors.begin(), processors.end(), name) == processors.end()) {
      processors.push_back(name);
    }
  }
  std::vector<Pending*> waiting;
  for (auto& task : maps) waiting.push_back(&task);
  for (auto& task : reduces) waiting.push_back(&task);
  // Per job: Map tasks not yet started, and the latest Map end so far.
  std::vector<std::size_t> maps_left(instance.jobs.size(), 0);
  std::vector<Time> maps_end(instance.jobs.size(), 0);
  for (const auto& task : maps) ++maps_left[task.placement.task.job];

  std::map<std::string, Time> free_at;
  for (const auto& name : processors) free_at[name] = 0;
  const auto eligible = [&](const Pending& task, Time t) {
    if (task.placement.task.phase == Phase::kMap) return true;
    const std::size_t job = task.placement.task.job;
    return task.width <= t && maps_left[job] == 0 && maps_end[job] <= t;
  };

  Time t = 0;
  while (!waiting.empty()) {
    for (const auto& name : processors) {
      if (free_at[name] > t) continue;
      auto best = waiting.end();
      for (auto it = waiting.begin(); it != waiting.end(); ++it) {
        if ((*it)->placement.processor != name || !eligible(**it, t)) continue;
        if (best == waiting.end() || priority(**it) < priority(**best)) best = it;
      }
      if (best == waiting.end()) continue;
      Pending& task = **best;
      task.placement.start = t;
      task.placement.end = t + task.length;
      free_at[name] = task.placement.end;
      if (task.placement.task.phase == Phase::kMap) {
        const std::size_t job = task.placement.task.job;
        --maps_left[job];
        maps_end[job] = std::max(maps_end[job], task.placement.end);
      }
      waiting.erase(best);
    }
    if (waiting.empty()) break;
    Time next = kNever;
    for (const auto& [name, at] : free_at) {
      if (at > t) next = std::min(next, at);
    }
    for (const Pending* task : waiting) {
      if (task->width > t) next = std::min(next, task->width);
    }
    for (const Time end : maps_end) {
      if (end > t) next = std::min(next, end);
    }
    if (next == kNever) {
      throw std::logic_error("merge: no progress possible");
    }
    t = next;
  }
}

}  // namespace

WidthVector compute_widths(const PhaseSchedule& map_schedule,
                           const PhaseSchedule& reduce_schedule,
                           bool disjoint) {
  const auto& cm = map_schedule.job_completion;
  const auto& cr = reduce_schedule.job_completion;
  if (cm.size() != cr.size()) {
    throw std::invalid_argument("phase schedules cover different job sets");
  }
  WidthVector widths;
  for (std::size_t j = 0; j < cm.size(); ++j) {
    widths.omega.push_back(disjoint ? std::max(cm[j], cr[j]) : cm[j] + cr[j]);
  }
  return widths;
}

MergedSchedule merge_schedules(const Instance& instance,
                               const PhaseSchedule& map_schedule,
                               const PhaseSchedule& reduce_schedule,
                               const WidthVector& widths) {
  auto maps = pending_tasks(instance, map_schedule, widths);
  auto reduces = pending_tasks(instance, reduce_schedule, widths);
  if (instance.pools_disjoint()) {
    merge_disjoint(maps, reduces);
  } else {
    merge_shared(instance, maps, reduces);
  }
  std::vector<Placement> placements;
  for (const auto& task : maps) placements.push_back(task.placement);
  for (const auto& task : reduces) placements.push_back(task.placement);
  return make_merged_schedule(instance, std::move(placements));
}

SolveResult solve_mr(const Instance& instance,
                     const TaskSchedulingOptions& options) {
  SolveResult result;
  result.map_phase = task_scheduling(instance, Phase::kMap, options);
  result.reduce_phase = task_scheduling(instance, Phase::kReduce, options);
  const bool disjoint = instance.pools_disjoint();
  result.widths = compute_widths(result.map_phase.schedule,
                                 result.reduce_phase.schedule, disjoint);
  result.schedule =
      merge_schedules(instance, result.map_phase.schedule,
                      result.reduce_phase.schedule, result.widths);

  RatioReport& report = result.report;
  report.algorithm = "mr";
  report.objective = result.schedule.objective;
  report.map_objective = result.map_phase.objective;
  report.reduce_objective = result.reduce_phase.objective;
  report.lp_map = result.map_phase.lp.objective;
  report.lp_reduce = result.reduce_phase.lp.objective;
  report.lower_bound = std::max(report.lp_map, report.lp_reduce);
  if (disjoint) {
    const double factor =
        to_double(task_scheduling_factor(options.a, options.delta));
    report.certified_bound = 2 * factor * (report.lp_map + report.lp_reduce);
    report.certified_max_bound = 4 * factor * report.lower_bound;
  }
  report.digest = instance_digest(instance);
  return result;
}

}  // namespace mrfs
