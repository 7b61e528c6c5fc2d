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

// Interval-indexed relaxation for scheduling one phase on unrelated
// processors with job completion = last task completion.
//
// Time is cut into [1,1] (index 0) and I_l = ((1+d)^(l-1), (1+d)^l] for
// l = 1..L, where L is the smallest integer with (1+d)^(L-1) >= t_max and
// t_max is the sum over tasks of their slowest processing time. With y(i,t,l)
// the fraction of task t completing on processor i inside interval l:
//
//   minimize   sum_j w_j CD_j
//   (assign)   sum_{i,l} y(i,t,l) >= 1                      every task t
//   (dummy)    CD_j >= C_t                                  every task t of j
//   (lower)    sum_{i,l} e_l y(i,t,l) <= C_t                every task t
//   (load)     sum_t p(i,t) sum_{l' <= l} y(i,t,l') <= (1+d)^l   every i, l
//   y(i,t,l) = 0 whenever p(i,t) > (1+d)^l
//
// where e_0 = 1 and e_l = (1+d)^(l-1). The last rule is applied by never
// creating those columns. Load rows whose left side is empty are omitted.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "mrfs/model.hpp"
#include "mrfs/simplex.hpp"

namespace mrfs {

struct IntervalGrid {
  Rational delta;
  Time t_max = 0;
  int intervals = 1;  // L
  // (1+delta)^l for l = 0..L, exact and as doubles.
  std::vector<Rational> endpoints;
  std::vector<double> endpoint_values;

  // Coefficient of interval l in the completion lower-bound row.
  Rational lower(int l) const;
  double lower_value(int l) const;
  // Interval holding completion time t: 0 if t <= 1, else the smallest l with
  // t <= (1+delta)^l. May exceed L for t beyond the horizon.
  int interval_of(const Rational& t) const;
};

// Throws std::invalid_argument("delta out of range") unless 0 < delta < 1.
IntervalGrid build_grid(Time t_max, const Rational& delta);
IntervalGrid build_grid(const Instance& instance, Phase phase,
                        const Rational& delta);

struct LpModel {
  static constexpr std::size_t kNoVar = std::numeric_limits<std::size_t>::max();

  PhaseTasks tasks;
  IntervalGrid grid;
  std::vector<Rational> weights;  // per job
  LinearProgram program;
  // y_var[t][i][l]; kNoVar where p(i,t) > (1+delta)^l.
  std::vector<std::vector<std::vector<std::size_t>>> y_var;
  std::vector<std::size_t> task_completion_var;
  std::vector<std::size_t> job_completion_var;
};

LpModel build_lp(const Instance& instance, Phase phase,
                 const IntervalGrid& grid);

struct FractionalSolution {
  // y[t][i][l], zero for eliminated columns.
  std::vector<std::vector<std::vector<double>>> y;
  std::vector<double> task_completion;  // C_t
  std::vector<double> job_completion;   // CD_j
  double objective = 0.0;
};

// Solves with the built-in simplex; throws LpError if the solver fails or the
// returned point violates a row by more than 1e-9 (scaled).
FractionalSolution solve_lp(const LpModel& model);

// Writes the model in free MPS format. Layout:
//   NAME <name> / ROWS (N OBJ, then G|L|E <row>) / COLUMNS (<col> <row> <value>,
//   one entry per line, the OBJ entry first) / RHS (RHS <row> <value> for
//   nonzero right-hand sides) / ENDATA. All variables have the default bounds
//   [0, +inf). Values are printed with 17 significant digits; whitespace in
//   names is replaced by '_'.
void write_mps(std::ostream& out, const LinearProgram& program,
               const std::string& name);

// Evaluates the rows exactly (rational arithmetic) at the 0/1 point induced
// by an integral schedule: task t completes at completion[t] on processor
// processor[t] (index into the phase pool). Returns one message per violated
// row; empty means the point is feasible.
std::vector<std::string> check_integral_point(
    const LpModel& model, const std::vector<std::size_t>& processor,
    const std::vector<Time>& completion);

}  // namespace mrfs
