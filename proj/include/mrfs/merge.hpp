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

// MergeSchedules: combine independent Map and Reduce phase schedules into one
// feasible schedule, keeping every task on its processor.
//
// Each job gets a width w_j = max(C^M_j, C^R_j) (disjoint pools) or
// C^M_j + C^R_j (pools that may share processors). Map processors run their
// tasks back to back by ascending width, so a Map task of job j ends by w_j;
// Reduce processors list-schedule their tasks with release time w_j, so
// C_j <= 2 w_j and the merged objective is at most twice the sum of the two
// phase objectives.

#pragma once

#include <vector>

#include "mrfs/model.hpp"
#include "mrfs/report.hpp"
#include "mrfs/rounding.hpp"

namespace mrfs {

struct WidthVector {
  std::vector<Time> omega;  // per job index
};

WidthVector compute_widths(const PhaseSchedule& map_schedule,
                           const PhaseSchedule& reduce_schedule,
                           bool disjoint);

// With disjoint pools the two sides are scheduled independently. Otherwise a
// single event simulation walks time over the union of the pools: a free
// processor starts its eligible task with the smallest (width, Map before
// Reduce, job id, task index), where a Reduce task is eligible once its width
// has passed and all Map tasks of its job have ended.
MergedSchedule merge_schedules(const Instance& instance,
                               const PhaseSchedule& map_schedule,
                               const PhaseSchedule& reduce_schedule,
                               const WidthVector& widths);

struct SolveResult {
  MergedSchedule schedule;
  RatioReport report;
  TaskSchedulingResult map_phase;
  // The Reduce phase, or the Shuffle-Reduce phase of the folded instance.
  TaskSchedulingResult reduce_phase;
  WidthVector widths;
};

// Certificates: objective <= 2F (LP_M + LP_R) <= 4F max(LP_M, LP_R) with
// F = task_scheduling_factor(a, delta), i.e. 27 and 54 for the defaults.
// Overlapping pools produce a schedule without a certificate.
SolveResult solve_mr(const Instance& instance,
                     const TaskSchedulingOptions& options = {});

}  // namespace mrfs
