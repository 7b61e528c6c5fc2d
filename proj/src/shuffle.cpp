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

#include "mrfs/shuffle.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mrfs {
namespace {

void require_shuffle(const Instance& instance) {
  if (!instance.has_shuffle()) {
    throw std::invalid_argument("shuffle problems need shuffle_times on every job");
  }
}

}  // namespace

Instance fold_shuffle(const Instance& instance) {
  require_shuffle(instance);
  Instance folded = instance;
  folded.input_processors.reset();
  for (auto& job : folded.jobs) {
    for (std::size_t r = 0; r < job.reduce_tasks.size(); ++r) {
      const Time extra = job.shuffle_total(r);
      for (Time& p : job.reduce_tasks[r].proc_times) p += extra;
    }
    job.shuffle_times.reset();
  }
  return folded;
}

MergedSchedule expand_schedule(const Instance& instance,
                               const MergedSchedule& folded) {
  require_shuffle(instance);
  std::vector<Placement> out;
  for (const auto& placement : folded.placements) {
    if (placement.task.phase != Phase::kReduce) {
      out.push_back(placement);
      continue;
    }
    const Job& job = instance.jobs[placement.task.job];
    const auto& matrix = *job.shuffle_times;
    Time clock = placement.start;
    for (std::size_t k = 0; k < matrix.size(); ++k) {
      const Time length = matrix[k][placement.task.task];
      out.push_back({{Phase::kShuffle, placement.task.job, placement.task.task, k},
                     placement.processor, clock, clock + length});
      clock += length;
    }
    out.push_back({placement.task, placement.processor, clock, placement.end});
  }
  return make_merged_schedule(instance, std::move(out));
}

MergedSchedule relocate_to_input_processors(const MergedSchedule& merged,
                                            const Instance& instance) {
  if (!instance.input_processors) {
    throw std::invalid_argument(
        "separate-shuffle variant requires input processors");
  }
  const auto& reduce = instance.reduce_processors;
  std::vector<Placement> out = merged.placements;
  for (auto& placement : out) {
    if (placement.task.phase != Phase::kShuffle) continue;
    const auto it = std::find(reduce.begin(), reduce.end(), placement.processor);
    if (it == reduce.end()) {
      throw std::invalid_argument("shuffle placed outside the reduce pool: " +
                                  placement.processor);
    }
    placement.processor = (*instance.input_processors)[it - reduce.begin()];
  }
  return make_merged_schedule(instance, std::move(out));
}

SolveResult solve_msr_same(const Instance& instance,
                           const TaskSchedulingOptions& options) {
  const Instance folded = fold_shuffle(instance);
  SolveResult result = solve_mr(folded, options);
  result.schedule = expand_schedule(instance, result.schedule);
  RatioReport& report = result.report;
  report.algorithm = "msr-same";
  report.reduce_is_folded = true;
  report.objective = result.schedule.objective;
  report.digest = instance_digest(instance);
  return result;
}

SolveResult solve_msr_separate(const Instance& instance,
                               const TaskSchedulingOptions& options) {
  return solve_msr_separate(instance, solve_msr_same(instance, options),
                            options);
}

SolveResult solve_msr_separate(const Instance& instance, SolveResult same,
                               const TaskSchedulingOptions& options) {
  SolveResult result = std::move(same);
  result.schedule = relocate_to_input_processors(result.schedule, instance);
  RatioReport& report = result.report;
  report.algorithm = "msr-separate";
  report.objective = result.schedule.objective;
  report.lower_bound = std::max(report.lp_map, report.lp_reduce / 2);
  if (report.certified_bound) {
    const double factor =
        to_double(task_scheduling_factor(options.a, options.delta));
    report.certified_bound = 2 * factor * (report.lp_map + report.lp_reduce);
    report.certified_max_bound = 6 * factor * report.lower_bound;
  }
  return result;
}

}  // namespace mrfs
