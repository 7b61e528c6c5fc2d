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

#include "mrfs/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace mrfs {

std::size_t LinearProgram::add_variable(std::string name,
                                        double objective_coefficient) {
  var_names.push_back(std::move(name));
  cost.push_back(objective_coefficient);
  return cost.size() - 1;
}

std::size_t LinearProgram::add_row(std::string name, RowSense sense, double rhs,
                                   std::vector<SparseEntry> entries) {
  rows.push_back(Row{std::move(name), sense, rhs, std::move(entries)});
  return rows.size() - 1;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options), m_(lp.rows.size()), n_struct_(lp.num_vars()) {
    build_standard_form();
  }

  SimplexResult run() {
    SimplexResult result;
    max_iterations_ = opt_.max_iterations > 0
                          ? opt_.max_iterations
                          : 20 * static_cast<long>(m_ + n_total_) + 1000;
    if (m_ > 0) {
      refactor();
      if (has_artificials_) {
        std::vector<double> phase1(n_total_, 0.0);
        for (std::size_t q = 0; q < n_total_; ++q) {
          if (artificial_[q]) phase1[q] = 1.0;
        }
        optimize(phase1, /*phase_one=*/true);
        double infeasibility = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
          if (artificial_[basis_[i]]) infeasibility += xb_[i];
          scale += std::abs(b_[i]);
        }
        if (infeasibility > opt_.feasibility_tol * scale) {
          throw LpError("model is infeasible (phase one residual " +
                        std::to_string(infeasibility) + ")");
        }
        drive_out_artificials();
      }
      std::vector<double> phase2(n_total_, 0.0);
      std::copy(lp_.cost.begin(), lp_.cost.end(), phase2.begin());
      optimize(phase2, /*phase_one=*/false);
      refactor();
    }
    result.x.assign(n_struct_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_struct_) result.x[basis_[i]] = std::max(0.0, xb_[i]);
    }
    for (std::size_t j = 0; j < n_struct_; ++j) {
      result.objective += lp_.cost[j] * result.x[j];
    }
    result.iterations = iterations_;
    return result;
  }

 private:
  void build_standard_form() {
    std::vector<std::vector<std::pair<std::size_t, double>>> columns(n_struct_);
    b_.assign(m_, 0.0);
    std::vector<RowSense> sense(m_);
    std::vector<double> sign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp_.rows[i];
      sense[i] = row.sense;
      double rhs = row.rhs;
      if (rhs < 0.0) {
        sign[i] = -1.0;
        rhs = -rhs;
        if (sense[i] == RowSense::kLessEqual) {
          sense[i] = RowSense::kGreaterEqual;
        } else if (sense[i] == RowSense::kGreaterEqual) {
          sense[i] = RowSense::kLessEqual;
        }
      }
      if (rhs == 0.0 && sense[i] == RowSense::kGreaterEqual) {
        sign[i] = -sign[i];
        sense[i] = RowSense::kLessEqual;
      }
      b_[i] = rhs;
      for (const auto& e : row.entries) {
        if (e.var >= n_struct_) throw LpError("entry references unknown variable", row.name);
        if (e.value != 0.0) columns[e.var].emplace_back(i, sign[i] * e.value);
      }
    }
    for (auto& col : columns) {
      std::sort(col.begin(), col.end());
      std::vector<std::pair<std::size_t, double>> merged;
      for (const auto& [row, value] : col) {
        if (!merged.empty() && merged.back().first == row) {
          merged.back().second += value;
        } else {
          merged.emplace_back(row, value);
        }
      }
      col = std::move(merged);
    }
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (sense[i] == RowSense::kLessEqual) {
        columns.push_back({{i, 1.0}});
        basis_[i] = columns.size() - 1;
        artificial_flags_.push_back({columns.size() - 1, false});
      } else {
        if (sense[i] == RowSense::kGreaterEqual) columns.push_back({{i, -1.0}});
        columns.push_back({{i, 1.0}});
        basis_[i] = columns.size() - 1;
        artificial_flags_.push_back({columns.size() - 1, true});
        has_artificials_ = true;
      }
    }
    n_total_ = columns.size();
    artificial_.assign(n_total_, 0);
    for (const auto& [col, is_art] : artificial_flags_) {
      if (is_art) artificial_[col] = 1;
    }
    col_start_.assign(n_total_ + 1, 0);
    for (std::size_t q = 0; q < n_total_; ++q) {
      col_start_[q + 1] = col_start_[q] + columns[q].size();
    }
    col_row_.resize(col_start_.back());
    col_val_.resize(col_start_.back());
    for (std::size_t q = 0; q < n_total_; ++q) {
      std::size_t k = col_start_[q];
      for (const auto& [row, value] : columns[q]) {
        col_row_[k] = row;
        col_val_[k] = value;
        ++k;
      }
    }
    is_basic_.assign(n_total_, 0);
    for (std::size_t i = 0; i < m_; ++i) is_basic_[basis_[i]] = 1;
  }

  // B^{-1} from scratch by Gauss-Jordan elimination with partial pivoting.
  void refactor() {
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t q = basis_[i];
      for (std::size_t k = col_start_[q]; k < col_start_[q + 1]; ++k) {
        a[col_row_[k] * m_ + i] = col_val_[k];
      }
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t piv = c;
      double best = std::abs(a[c * m_ + c]);
      for (std::size_t r = c + 1; r < m_; ++r) {
        if (std::abs(a[r * m_ + c]) > best) {
          best = std::abs(a[r * m_ + c]);
          piv = r;
        }
      }
      if (best < 1e-12) throw LpError("numerical failure: singular basis");
      if (piv != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(a[c * m_ + k], a[piv * m_ + k]);
          std::swap(binv_[c * m_ + k], binv_[piv * m_ + k]);
        }
      }
      const double inv = 1.0 / a[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        a[c * m_ + k] *= inv;
        binv_[c * m_ + k] *= inv;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a[r * m_ + c];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          a[r * m_ + k] -= f * a[c * m_ + k];
          binv_[r * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      for (std::size_t k = 0; k < m_; ++k) v += binv_[i * m_ + k] * b_[k];
      xb_[i] = v < 0.0 && v > -opt_.feasibility_tol ? 0.0 : v;
    }
    since_refactor_ = 0;
  }

  void column(std::size_t q, std::vector<double>& u) const {
    u.assign(m_, 0.0);
    for (std::size_t k = col_start_[q]; k < col_start_[q + 1]; ++k) {
      const std::size_t row = col_row_[k];
      const double v = col_val_[k];
      for (std::size_t i = 0; i < m_; ++i) u[i] += binv_[i * m_ + row] * v;
    }
  }

  void pivot(std::size_t r, std::size_t q, const std::vector<double>& u,
             double theta) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      xb_[i] -= theta * u[i];
      if (xb_[i] < 0.0) xb_[i] = 0.0;
    }
    xb_[r] = theta;
    const double inv = 1.0 / u[r];
    double* prow = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) prow[k] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i] == 0.0) continue;
      const double f = u[i];
      double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    is_basic_[basis_[r]] = 0;
    basis_[r] = q;
    is_basic_[q] = 1;
    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }

  void optimize(const std::vector<double>& cost, bool phase_one) {
    std::vector<double> pi(m_), u(m_);
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (++iterations_ > max_iterations_) {
        throw LpError("numerical failure: iteration limit reached");
      }
      std::fill(pi.begin(), pi.end(), 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const double c = cost[basis_[i]];
        if (c == 0.0) continue;
        const double* row = &binv_[i * m_];
        for (std::size_t k = 0; k < m_; ++k) pi[k] += c * row[k];
      }
      std::size_t entering = n_total_;
      double best = -opt_.optimality_tol;
      for (std::size_t q = 0; q < n_total_; ++q) {
        if (is_basic_[q] || (!phase_one && artificial_[q])) continue;
        double d = cost[q];
        for (std::size_t k = col_start_[q]; k < col_start_[q + 1]; ++k) {
          d -= pi[col_row_[k]] * col_val_[k];
        }
        if (bland) {
          if (d < -opt_.optimality_tol) {
            entering = q;
            break;
          }
        } else if (d < best) {
          best = d;
          entering = q;
        }
      }
      if (entering == n_total_) return;

      column(entering, u);
      std::size_t leaving = m_;
      if (bland) {
        double min_ratio = kInf;
        for (std::size_t i = 0; i < m_; ++i) {
          if (u[i] <= opt_.pivot_tol) continue;
          const double ratio = xb_[i] / u[i];
          if (leaving == m_ || ratio < min_ratio - 1e-12) {
            min_ratio = ratio;
            leaving = i;
          } else if (ratio <= min_ratio + 1e-12 &&
                     basis_[i] < basis_[leaving]) {
            min_ratio = std::min(min_ratio, ratio);
            leaving = i;
          }
        }
      } else {
        // Harris two-pass ratio test.
        double bound = kInf;
        for (std::size_t i = 0; i < m_; ++i) {
          if (u[i] > opt_.pivot_tol) {
            bound = std::min(bound, (xb_[i] + opt_.feasibility_tol) / u[i]);
          }
        }
        double largest = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
          if (u[i] > opt_.pivot_tol && xb_[i] / u[i] <= bound && u[i] > largest) {
            largest = u[i];
            leaving = i;
          }
        }
      }
      if (leaving == m_) throw LpError("model is unbounded");
      const double theta = std::max(0.0, xb_[leaving] / u[leaving]);
      if (theta <= 1e-12) {
        if (++degenerate_run >= opt_.bland_after) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leaving, entering, u, theta);
    }
  }

  void drive_out_artificials() {
    std::vector<double> u(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!artificial_[basis_[r]]) continue;
      std::size_t best_q = n_total_;
      double best = 1e-7;
      for (std::size_t q = 0; q < n_total_; ++q) {
        if (is_basic_[q] || artificial_[q]) continue;
        double alpha = 0.0;
        for (std::size_t k = col_start_[q]; k < col_start_[q + 1]; ++k) {
          alpha += binv_[r * m_ + col_row_[k]] * col_val_[k];
        }
        if (std::abs(alpha) > best) {
          best = std::abs(alpha);
          best_q = q;
        }
      }
      // A row without such a column is redundant; its artificial stays basic
      // at zero and can never move again.
      if (best_q == n_total_) continue;
      column(best_q, u);
      pivot(r, best_q, u, 0.0);
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  std::size_t m_ = 0;
  std::size_t n_struct_ = 0;
  std::size_t n_total_ = 0;
  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> col_row_;
  std::vector<double> col_val_;
  std::vector<double> b_;
  std::vector<std::pair<std::size_t, bool>> artificial_flags_;
  std::vector<char> artificial_;
  bool has_artificials_ = false;
  std::vector<std::size_t> basis_;
  std::vector<char> is_basic_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  long iterations_ = 0;
  long max_iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp,
                            const SimplexOptions& options) {
  if (lp.cost.size() != lp.var_names.size()) {
    throw LpError("variable names and costs disagree in size");
  }
  RevisedSimplex solver(lp, options);
  SimplexResult result = solver.run();
  const RowCheck check = check_rows(lp, result.x);
  if (check.worst > options.feasibility_tol) {
    throw LpError("numerical failure: constraint violated by " +
                      std::to_string(check.worst) + " after solve",
                  check.row);
  }
  return result;
}

RowCheck check_rows(const LinearProgram& lp, const std::vector<double>& x) {
  RowCheck out;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (-x[j] > out.worst) {
      out.worst = -x[j];
      out.row = "bound " + lp.var_names[j];
    }
  }
  for (const auto& row : lp.rows) {
    double activity = 0.0;
    double scale = 1.0 + std::abs(row.rhs);
    for (const auto& e : row.entries) {
      activity += e.value * x[e.var];
      scale += std::abs(e.value * x[e.var]);
    }
    double violation = 0.0;
    if (row.sense != RowSense::kGreaterEqual) {
      violation = std::max(violation, activity - row.rhs);
    }
    if (row.sense != RowSense::kLessEqual) {
      violation = std::max(violation, row.rhs - activity);
    }
    if (violation / scale > out.worst) {
      out.worst = violation / scale;
      out.row = row.name;
    }
  }
  return out;
}

}  // namespace mrfs
