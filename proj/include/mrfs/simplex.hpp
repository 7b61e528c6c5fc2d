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

// Dense revised simplex for small and medium linear programs.
//
//   minimize    c^T x
//   subject to  a_i^T x  (<= | >= | =)  b_i   for every row i
//               x >= 0
//
// Two phases with artificial variables, an explicit basis inverse refreshed
// by periodic refactorization, Dantzig pricing, and Bland's rule once a run of
// degenerate pivots suggests cycling.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrfs {

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct SparseEntry {
  std::size_t var = 0;
  double value = 0.0;
};

struct LinearProgram {
  struct Row {
    std::string name;
    RowSense sense = RowSense::kLessEqual;
    double rhs = 0.0;
    std::vector<SparseEntry> entries;
  };

  std::vector<std::string> var_names;
  std::vector<double> cost;
  std::vector<Row> rows;

  std::size_t add_variable(std::string name, double objective_coefficient);
  std::size_t add_row(std::string name, RowSense sense, double rhs,
                      std::vector<SparseEntry> entries);
  std::size_t num_vars() const { return cost.size(); }
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 50;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 50;
  // 0 means 20 * (rows + columns).
  long max_iterations = 0;
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
};

// Infeasible or unbounded models, iteration limits, and solutions that fail
// the post-solve row check. `row` names the offending row when there is one.
class LpError : public std::runtime_error {
 public:
  LpError(const std::string& what, std::string row = {})
      : std::runtime_error(row.empty() ? what : what + " (row " + row + ")"),
        row_(std::move(row)) {}
  const std::string& row() const { return row_; }

 private:
  std::string row_;
};

SimplexResult solve_simplex(const LinearProgram& lp,
                            const SimplexOptions& options = {});

// Largest scaled violation max_i viol_i / (1 + sum_j |a_ij x_j| + |b_i|), and
// the row where it occurs. Bound violations (x_j < 0) are included.
struct RowCheck {
  double worst = 0.0;
  std::string row;
};
RowCheck check_rows(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace mrfs
