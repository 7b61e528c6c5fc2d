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

#include "mrfs/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mrfs {

Rational IntervalGrid::lower(int l) const {
  return l == 0 ? Rational(1) : endpoints.at(static_cast<std::size_t>(l - 1));
}

double IntervalGrid::lower_value(int l) const {
  return l == 0 ? 1.0 : endpoint_values.at(static_cast<std::size_t>(l - 1));
}

int IntervalGrid::interval_of(const Rational& t) const {
  if (t <= 1) return 0;
  int l = 1;
  Rational end = 1 + delta;
  while (t > end) {
    end *= 1 + delta;
    ++l;
  }
  return l;
}

IntervalGrid build_grid(Time t_max, const Rational& delta) {
  if (delta <= 0 || delta >= 1) {
    throw std::invalid_argument("delta out of range: need 0 < delta < 1, got " +
                                to_string(delta));
  }
  IntervalGrid grid;
  grid.delta = delta;
  grid.t_max = t_max;
  // Smallest L >= 1 with (1+delta)^(L-1) >= t_max.
  int l = 1;
  Rational power = 1;
  while (power < t_max) {
    power *= 1 + delta;
    ++l;
  }
  grid.intervals = l;
  Rational end = 1;
  for (int i = 0; i <= l; ++i) {
    grid.endpoints.push_back(end);
    grid.endpoint_values.push_back(to_double(end));
    end *= 1 + delta;
  }
  return grid;
}

IntervalGrid build_grid(const Instance& instance, Phase phase,
                        const Rational& delta) {
  return build_grid(phase_tasks(instance, phase).horizon(), delta);
}

namespace {

std::string task_tag(const Instance& instance, const PhaseTask& task) {
  return "j" + std::to_string(instance.jobs[task.ref.job].id) + "_k" +
         std::to_string(task.ref.task);
}

}  // namespace

LpModel build_lp(const Instance& instance, Phase phase,
                 const IntervalGrid& grid) {
  LpModel model;
  model.tasks = phase_tasks(instance, phase);
  model.grid = grid;
  const auto& tasks = model.tasks.tasks;
  const auto& procs = model.tasks.processors;
  const int L = grid.intervals;
  LinearProgram& lp = model.program;

  for (const auto& job : instance.jobs) model.weights.push_back(job.weight);

  model.y_var.resize(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    model.y_var[t].assign(procs.size(),
                          std::vector<std::size_t>(L + 1, LpModel::kNoVar));
    for (std::size_t i = 0; i < procs.size(); ++i) {
      for (int l = 0; l <= L; ++l) {
        if (tasks[t].proc_times[i] > grid.endpoints[l]) continue;
        model.y_var[t][i][l] = lp.add_variable(
            "y_" + procs[i] + "_" + task_tag(instance, tasks[t]) + "_l" +
                std::to_string(l),
            0.0);
      }
    }
  }
  for (const auto& task : tasks) {
    model.task_completion_var.push_back(
        lp.add_variable("C_" + task_tag(instance, task), 0.0));
  }
  for (const auto& job : instance.jobs) {
    model.job_completion_var.push_back(lp.add_variable(
        "CD_j" + std::to_string(job.id), to_double(job.weight)));
  }

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<SparseEntry> entries;
    for (const auto& per_proc : model.y_var[t]) {
      for (const std::size_t v : per_proc) {
        if (v != LpModel::kNoVar) entries.push_back({v, 1.0});
      }
    }
    lp.add_row("assign_" + task_tag(instance, tasks[t]),
               RowSense::kGreaterEqual, 1.0, std::move(entries));
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    lp.add_row("dummy_" + task_tag(instance, tasks[t]), RowSense::kGreaterEqual,
               0.0,
               {{model.job_completion_var[tasks[t].ref.job], 1.0},
                {model.task_completion_var[t], -1.0}});
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<SparseEntry> entries;
    for (const auto& per_proc : model.y_var[t]) {
      for (int l = 0; l <= L; ++l) {
        if (per_proc[l] != LpModel::kNoVar) {
          entries.push_back({per_proc[l], grid.lower_value(l)});
        }
      }
    }
    entries.push_back({model.task_completion_var[t], -1.0});
    lp.add_row("lower_" + task_tag(instance, tasks[t]), RowSense::kLessEqual,
               0.0, std::move(entries));
  }
  for (std::size_t i = 0; i < procs.size(); ++i) {
    for (int l = 0; l <= L; ++l) {
      std::vector<SparseEntry> entries;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const double p = static_cast<double>(tasks[t].proc_times[i]);
        for (int u = 0; u <= l; ++u) {
          const std::size_t v = model.y_var[t][i][u];
          if (v != LpModel::kNoVar) entries.push_back({v, p});
        }
      }
      if (entries.empty()) continue;
      lp.add_row("load_" + procs[i] + "_l" + std::to_string(l),
                 RowSense::kLessEqual, grid.endpoint_values[l],
                 std::move(entries));
    }
  }
  return model;
}

FractionalSolution solve_lp(const LpModel& model) {
  const SimplexResult result = solve_simplex(model.program);
  FractionalSolution sol;
  const auto& tasks = model.tasks.tasks;
  const auto value = [&](std::size_t v) {
    const double x = result.x[v];
    return x < 1e-12 ? 0.0 : x;
  };
  sol.y.resize(tasks.size());
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    sol.y[t].resize(model.y_var[t].size());
    for (std::size_t i = 0; i < model.y_var[t].size(); ++i) {
      const auto& vars = model.y_var[t][i];
      sol.y[t][i].assign(vars.size(), 0.0);
      for (std::size_t l = 0; l < vars.size(); ++l) {
        if (vars[l] != LpModel::kNoVar) sol.y[t][i][l] = value(vars[l]);
      }
    }
    sol.task_completion.push_back(value(model.task_completion_var[t]));
  }
  for (const std::size_t v : model.job_completion_var) {
    sol.job_completion.push_back(value(v));
  }
  sol.objective = result.objective;
  return sol;
}

namespace {

std::string mps_name(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (std::isspace(static_cast<unsigned char>(c))) c = '_';
  }
  return out;
}

std::string mps_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_mps(std::ostream& out, const LinearProgram& program,
               const std::string& name) {
  out << "NAME " << mps_name(name) << "\n";
  out << "ROWS\n N  OBJ\n";
  for (const auto& row : program.rows) {
    const char* tag = row.sense == RowSense::kLessEqual      ? "L"
                      : row.sense == RowSense::kGreaterEqual ? "G"
                                                             : "E";
    out << " " << tag << "  " << mps_name(row.name) << "\n";
  }
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(
      program.num_vars());
  for (std::size_t r = 0; r < program.rows.size(); ++r) {
    for (const auto& e : program.rows[r].entries) {
      columns[e.var].emplace_back(r, e.value);
    }
  }
  out << "COLUMNS\n";
  for (std::size_t j = 0; j < program.num_vars(); ++j) {
    const std::string col = mps_name(program.var_names[j]);
    if (program.cost[j] != 0.0 || columns[j].empty()) {
      out << "    " << col << "  OBJ  " << mps_number(program.cost[j]) << "\n";
    }
    for (const auto& [r, v] : columns[j]) {
      out << "    " << col << "  " << mps_name(program.rows[r].name) << "  "
          << mps_number(v) << "\n";
    }
  }
  out << "RHS\n";
  for (const auto& row : program.rows) {
    if (row.rhs != 0.0) {
      out << "    RHS  " << mps_name(row.name) << "  " << mps_number(row.rhs)
          << "\n";
    }
  }
  out << "ENDATA\n";
}

std::vector<std::string> check_integral_point(
    const LpModel& model, const std::vector<std::size_t>& processor,
    const std::vector<Time>& completion) {
  std::vector<std::string> out;
  const auto& tasks = model.tasks.tasks;
  const auto& grid = model.grid;
  const auto& procs = model.tasks.processors;
  const int L = grid.intervals;
  if (processor.size() != tasks.size() || completion.size() != tasks.size()) {
    return {"point does not cover every task of the phase"};
  }
  std::vector<int> interval(tasks.size());
  std::vector<Time> job_completion(model.tasks.job_count, 0);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const std::string tag = "task " + std::to_string(t);
    interval[t] = grid.interval_of(completion[t]);
    if (interval[t] > L) {
      out.push_back("assign: " + tag + " completes after the horizon");
      continue;
    }
    const Time p = tasks[t].proc_times.at(processor[t]);
    // Column elimination: the variable must exist.
    if (p > grid.endpoints[interval[t]]) {
      out.push_back("validity: " + tag + " has p = " + std::to_string(p) +
                    " > (1+delta)^" + std::to_string(interval[t]));
    }
    // Completion lower bound.
    if (grid.lower(interval[t]) > completion[t]) {
      out.push_back("lower: " + tag + " completes at " +
                    std::to_string(completion[t]) + " below its interval");
    }
    job_completion[tasks[t].ref.job] =
        std::max(job_completion[tasks[t].ref.job], completion[t]);
  }
  // dummy rows hold by construction of job_completion; check anyway.
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (job_completion[tasks[t].ref.job] < completion[t]) {
      out.push_back("dummy: task " + std::to_string(t));
    }
  }
  for (std::size_t i = 0; i < procs.size(); ++i) {
    for (int l = 0; l <= L; ++l) {
      Rational load = 0;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (processor[t] == i && interval[t] <= l) {
          load += tasks[t].proc_times[i];
        }
      }
      if (load > grid.endpoints[l]) {
        out.push_back("load: processor " + procs[i] + " interval " +
                      std::to_string(l) + " carries " + to_string(load) +
                      " > " + to_string(grid.endpoints[l]));
      }
    }
  }
  return out;
}

}  // namespace mrfs
