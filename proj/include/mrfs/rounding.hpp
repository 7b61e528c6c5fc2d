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

// Rounding an optimal interval-indexed LP solution into a non-preemptive
// schedule of one phase.
//
// Tasks are grouped into classes S(l) by their scaled fractional completion
// a * C_t. For a task of S(l), at least (a-1)/a of its LP mass completes by
// interval l; dropping the mass of later intervals and renormalizing yields a
// fractional assignment whose machine loads stay within a/(a-1) (1+d)^l. Each
// class is then rounded on its own with the slot construction for the
// generalized assignment problem (integral load <= fractional load + largest
// supported processing time), and the class blocks run one after another in
// increasing l on every machine.

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "mrfs/lp.hpp"
#include "mrfs/model.hpp"

namespace mrfs {

// Signals a broken invariant in the rounding pipeline (normally an LP or
// partition bug); never a property of the input.
class RoundingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ClassPartition {
  Rational a;
  // l -> task indices (PhaseTasks order), sorted by (job id, task index).
  std::map<int, std::vector<std::size_t>> classes;
  std::vector<int> class_of;
};

// Class of task t: 0 if a*C_t <= 1, else the smallest l with
// a*C_t <= (1+d)^l, i.e. half-open brackets ((1+d)^(l-1), (1+d)^l]. A relative
// slack of 1e-9 absorbs LP round-off at the bracket ends.
ClassPartition partition_classes(const FractionalSolution& solution,
                                 const IntervalGrid& grid, const Rational& a,
                                 const Instance& instance,
                                 const PhaseTasks& tasks);

struct FilteredClass {
  int level = 0;
  std::vector<std::size_t> tasks;        // PhaseTasks indices
  std::vector<std::vector<double>> x;    // [member][processor], rows sum to 1
  std::vector<std::vector<Time>> p;      // [member][processor]
  std::vector<double> retained_mass;     // sum_{i, l' <= l} y before scaling
  Rational load_bound;                   // a/(a-1) (1+d)^l
  Rational size_bound;                   // (1+d)^l
};

struct FilteredAssignment {
  std::map<int, FilteredClass> classes;
};

// Throws RoundingError when a task keeps less than (a-1)/a of its mass, when a
// machine load exceeds the class bound, or when the support contains a task
// too long for its class.
FilteredAssignment filter_and_scale(const FractionalSolution& solution,
                                    const ClassPartition& partition,
                                    const PhaseTasks& tasks,
                                    const IntervalGrid& grid);

// Rounds a fractional assignment (rows of x sum to 1, x[t][i] > 0 only where
// p[t][i] is allowed) to one machine per task. Machine i ends up with load at
// most sum_t p[t][i] x[t][i] + max{p[t][i] : x[t][i] > 0}. Ties are broken by
// row order, so callers pass rows in their preferred priority order.
std::vector<std::size_t> round_fractional_assignment(
    const std::vector<std::vector<double>>& x,
    const std::vector<std::vector<Time>>& p);

// Per machine, the PhaseTasks indices assigned to it, ascending by
// (job id, task index).
std::vector<std::vector<std::size_t>> round_class(const FilteredClass& cls,
                                                  std::size_t machines);

struct TaskSchedulingOptions {
  Rational a{3, 2};
  Rational delta{1, 2};
};

// a (a/(a-1) + 1 + 1/d) (1+d); 27/2 for the defaults.
Rational task_scheduling_factor(const Rational& a, const Rational& delta);

struct TaskSchedulingResult {
  LpModel model;
  FractionalSolution lp;
  ClassPartition partition;
  FilteredAssignment filtered;
  // l -> machine -> tasks.
  std::map<int, std::vector<std::vector<std::size_t>>> assignment;
  // Class blocks back to back, block l starting when every machine has
  // finished block l-1.
  PhaseSchedule block_schedule;
  // block_schedule left-shifted on every processor without reordering.
  PhaseSchedule schedule;
  Rational objective = 0;  // sum_j w_j C_j of `schedule`
};

TaskSchedulingResult task_scheduling(const Instance& instance, Phase phase,
                                     const TaskSchedulingOptions& options = {});

}  // namespace mrfs
