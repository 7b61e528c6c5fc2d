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

// Shuffle handling.
//
// Same processors: every Reduce task absorbs the transfers into it
// (p' = p + sum_k t_{r,k}), the folded instance is solved as a MapReduce
// instance, and each Shuffle-Reduce placement is split back into its shuffle
// block followed by the reduce task. An optimal schedule of this block form
// exists, so the 54 guarantee carries over.
//
// Separate input processors: the shuffle blocks of the same-processor
// schedule move to the input processor paired with their reduce processor at
// unchanged times. The optimum with separate input processors is at least
// half the same-processor optimum, which gives the 81 guarantee.

#pragma once

#include "mrfs/merge.hpp"
#include "mrfs/model.hpp"

namespace mrfs {

// The MapReduce instance with inflated Reduce times; shuffle matrices and
// input processors are dropped. Throws std::invalid_argument if some job has
// no shuffle matrix.
Instance fold_shuffle(const Instance& instance);

// Splits every Reduce placement of a schedule of fold_shuffle(instance) into
// the job's shuffle block (ascending map-task index, zero-length transfers
// kept) and the reduce task, all on the same processor.
MergedSchedule expand_schedule(const Instance& instance,
                               const MergedSchedule& folded);

// Moves every shuffle placement to the input processor paired with its
// reduce processor, keeping its times. Throws std::invalid_argument
// ("separate-shuffle variant requires input processors") when the instance
// has none.
MergedSchedule relocate_to_input_processors(const MergedSchedule& merged,
                                            const Instance& instance);

// Certificates: objective <= 2F (LP_M + LP_RH) <= 4F max(LP_M, LP_RH), where
// LP_RH is the LP of the folded Reduce phase.
SolveResult solve_msr_same(const Instance& instance,
                           const TaskSchedulingOptions& options = {});

// Lower bound max(LP_M, LP_RH / 2); certificates 2F (LP_M + LP_RH) and
// 6F times the lower bound (81 for the defaults).
SolveResult solve_msr_separate(const Instance& instance,
                               const TaskSchedulingOptions& options = {});
// Same, reusing a solve_msr_same result for this instance and options.
SolveResult solve_msr_separate(const Instance& instance, SolveResult same,
                               const TaskSchedulingOptions& options = {});

}  // namespace mrfs
