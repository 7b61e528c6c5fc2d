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

#include "mrfs/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

namespace mrfs {
namespace {

constexpr double kZero = 1e-12;
constexpr double kRelTol = 1e-9;

std::string class_tag(int level) { return "class " + std::to_string(level); }

// (job id, task index) for ordering.
std::pair<int, std::size_t> task_key(const Instance& instance,
                                     const PhaseTask& task) {
  return {instance.jobs[task.ref.job].id, task.ref.task};
}

}  // namespace

ClassPartition partition_classes(const FractionalSolution& solution,
                                 const IntervalGrid& grid, const Rational& a,
                                 const Instance& instance,
                                 const PhaseTasks& tasks) {
  if (a <= 1) throw std::invalid_argument("a must exceed 1");
  ClassPartition partition;
  partition.a = a;
  const double av = to_double(a);
  const double base = 1.0 + to_double(grid.delta);
  partition.class_of.resize(tasks.tasks.size());
  for (std::size_t t = 0; t < tasks.tasks.size(); ++t) {
    const double scaled = av * solution.task_completion[t];
    int level = 0;
    double end = 1.0;
    while (scaled > end * (1.0 + kRelTol)) {
      end *= base;
      ++level;
    }
    partition.class_of[t] = level;
    partition.classes[level].push_back(t);
  }
  for (auto& [level, members] : partition.classes) {
    std::sort(members.begin(), members.end(),
              [&](std::size_t lhs, std::size_t rhs) {
                return task_key(instance, tasks.tasks[lhs]) <
                       task_key(instance, tasks.tasks[rhs]);
              });
  }
  return partition;
}

FilteredAssignment filter_and_scale(const FractionalSolution& solution,
                                    const ClassPartition& partition,
                                    const PhaseTasks& tasks,
                                    const IntervalGrid& grid) {
  const std::size_t machines = tasks.processors.size();
  const Rational& a = partition.a;
  const double min_mass = to_double((a - 1) / a);
  FilteredAssignment out;
  for (const auto& [level, members] : partition.classes) {
    FilteredClass cls;
    cls.level = level;
    cls.tasks = members;
    cls.size_bound = pow(1 + grid.delta, level);
    cls.load_bound = a / (a - 1) * cls.size_bound;
    const int last = std::min(level, grid.intervals);
    std::vector<double> load(machines, 0.0);
    for (const std::size_t t : members) {
      std::vector<double> kept(machines, 0.0);
      for (std::size_t i = 0; i < machines; ++i) {
        for (int l = 0; l <= last; ++l) kept[i] += solution.y[t][i][l];
        if (kept[i] < kZero) kept[i] = 0.0;
      }
      const double mass = std::accumulate(kept.begin(), kept.end(), 0.0);
      if (mass < min_mass - kRelTol) {
        throw RoundingError(class_tag(level) + ": task keeps only " +
                            std::to_string(mass) + " of its LP mass");
      }
      std::vector<double> row(machines, 0.0);
      for (std::size_t i = 0; i < machines; ++i) {
        row[i] = kept[i] / mass;
        if (row[i] == 0.0) continue;
        const Time p = tasks.tasks[t].proc_times[i];
        if (p > cls.size_bound) {
          throw RoundingError(class_tag(level) +
                              ": support holds a task longer than (1+d)^l");
        }
        load[i] += static_cast<double>(p) * row[i];
      }
      cls.x.push_back(std::move(row));
      cls.p.push_back(tasks.tasks[t].proc_times);
      cls.retained_mass.push_back(mass);
    }
    const double bound = to_double(cls.load_bound);
    for (std::size_t i = 0; i < machines; ++i) {
      if (load[i] > bound * (1.0 + kRelTol) + kRelTol) {
        throw RoundingError(class_tag(level) + ": fractional load on " +
                            tasks.processors[i] + " exceeds a/(a-1)(1+d)^l");
      }
    }
    out.classes.emplace(level, std::move(cls));
  }
  return out;
}

std::vector<std::size_t> round_fractional_assignment(
    const std::vector<std::vector<double>>& x,
    const std::vector<std::vector<Time>>& p) {
  const std::size_t n = x.size();
  const std::size_t m = n == 0 ? 0 : x.front().size();

  // Slots: machine i gets ceil(sum_t x[t][i]) unit slots, filled with its
  // tasks in non-increasing p. Edge (t, slot) carries the poured mass.
  std::vector<std::size_t> slot_machine;
  std::map<std::pair<std::size_t, std::size_t>, double> poured;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> members;
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (x[t][i] > kZero) {
        members.push_back(t);
        total += x[t][i];
      }
    }
    if (members.empty()) continue;
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t lhs, std::size_t rhs) {
                       return p[lhs][i] > p[rhs][i];
                     });
    const auto k = static_cast<std::size_t>(
        std::max(1.0, std::ceil(total - kRelTol)));
    const std::size_t base = slot_machine.size();
    slot_machine.insert(slot_machine.end(), k, i);
    std::size_t cur = 0;
    double fill = 0.0;
    for (const std::size_t t : members) {
      double rest = x[t][i];
      while (rest > kZero) {
        const double room = cur + 1 == k ? rest : 1.0 - fill;
        const double amount = std::min(rest, room);
        poured[{t, base + cur}] += amount;
        fill += amount;
        rest -= amount;
        if (cur + 1 < k && 1.0 - fill <= kZero) {
          ++cur;
          fill = 0.0;
        }
      }
    }
  }

  // Bipartite support graph: nodes [0, n) are tasks, [n, n+S) slots.
  struct Edge {
    std::size_t task, slot;
    double value;
    bool alive;
  };
  std::vector<Edge> edges;
  for (const auto& [key, value] : poured) {
    edges.push_back({key.first, key.second, value, true});
  }
  const std::size_t nodes = n + slot_machine.size();
  std::vector<std::vector<std::size_t>> adjacent(nodes);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adjacent[edges[e].task].push_back(e);
    adjacent[n + edges[e].slot].push_back(e);
  }
  const auto other = [&](std::size_t e, std::size_t node) {
    return node < n ? n + edges[e].slot : edges[e].task;
  };

  // Cancel cycles: shift mass alternately around a cycle until one edge
  // empties. Task and slot totals are preserved, so the support becomes a
  // forest without changing any fractional machine load.
  const auto find_cycle = [&]() -> std::vector<std::size_t> {
    enum { kWhite, kGray, kBlack };
    std::vector<int> color(nodes, kWhite);
    std::vector<std::size_t> parent_edge(nodes, edges.size());
    std::vector<std::size_t> cursor(nodes, 0);
    for (std::size_t root = 0; root < nodes; ++root) {
      if (color[root] != kWhite) continue;
      std::vector<std::size_t> stack{root};
      color[root] = kGray;
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        if (cursor[u] == adjacent[u].size()) {
          color[u] = kBlack;
          stack.pop_back();
          continue;
        }
        const std::size_t e = adjacent[u][cursor[u]++];
        if (!edges[e].alive || e == parent_edge[u]) continue;
        const std::size_t v = other(e, u);
        if (color[v] == kWhite) {
          color[v] = kGray;
          parent_edge[v] = e;
          stack.push_back(v);
        } else if (color[v] == kGray) {
          std::vector<std::size_t> cycle{e};
          for (std::size_t w = u; w != v; w = other(parent_edge[w], w)) {
            cycle.push_back(parent_edge[w]);
          }
          return cycle;
        }
      }
    }
    return {};
  };
  for (auto cycle = find_cycle(); !cycle.empty(); cycle = find_cycle()) {
    double shift = edges[cycle[0]].value;
    std::size_t argmin = cycle[0];
    for (std::size_t pos = 0; pos < cycle.size(); pos += 2) {
      if (edges[cycle[pos]].value < shift) {
        shift = edges[cycle[pos]].value;
        argmin = cycle[pos];
      }
    }
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      edges[cycle[pos]].value += pos % 2 == 0 ? -shift : shift;
    }
    edges[argmin].value = 0.0;
    edges[argmin].alive = false;
    for (const std::size_t e : cycle) {
      if (edges[e].value <= kZero) edges[e].alive = false;
    }
  }

  // Match every task into a slot on the forest by repeatedly matching a
  // leaf. A task leaf is preferred; in a forest with all task degrees >= 2
  // some slot is a leaf.
  std::vector<std::size_t> degree(nodes, 0);
  for (const auto& edge : edges) {
    if (!edge.alive) continue;
    ++degree[edge.task];
    ++degree[n + edge.slot];
  }
  std::vector<bool> removed(nodes, false);
  std::vector<std::size_t> machine_of(n, m);
  const auto live_edge = [&](std::size_t node) {
    for (const std::size_t e : adjacent[node]) {
      if (edges[e].alive) return e;
    }
    throw RoundingError("rounding: leaf without a live edge");
  };
  const auto remove = [&](std::size_t node) {
    removed[node] = true;
    for (const std::size_t e : adjacent[node]) {
      if (!edges[e].alive) continue;
      edges[e].alive = false;
      --degree[edges[e].task];
      --degree[n + edges[e].slot];
    }
  };
  for (std::size_t matched = 0; matched < n; ++matched) {
    std::size_t edge = edges.size();
    for (std::size_t t = 0; t < n && edge == edges.size(); ++t) {
      if (removed[t]) continue;
      if (degree[t] == 0) {
        throw RoundingError("rounding: task " + std::to_string(t) +
                            " lost all slots");
      }
      if (degree[t] == 1) edge = live_edge(t);
    }
    for (std::size_t s = n; s < nodes && edge == edges.size(); ++s) {
      if (!removed[s] && degree[s] == 1) edge = live_edge(s);
    }
    if (edge == edges.size()) {
      throw RoundingError("rounding: support is not a forest");
    }
    const std::size_t t = edges[edge].task;
    const std::size_t s = n + edges[edge].slot;
    machine_of[t] = slot_machine[edges[edge].slot];
    remove(t);
    remove(s);
  }
  return machine_of;
}

std::vector<std::vector<std::size_t>> round_class(const FilteredClass& cls,
                                                  std::size_t machines) {
  const auto machine_of = round_fractional_assignment(cls.x, cls.p);
  std::vector<std::vector<std::size_t>> out(machines);
  for (std::size_t k = 0; k < cls.tasks.size(); ++k) {
    out[machine_of[k]].push_back(cls.tasks[k]);
  }
  return out;
}

Rational task_scheduling_factor(const Rational& a, const Rational& delta) {
  return a * (a / (a - 1) + 1 + 1 / delta) * (1 + delta);
}

TaskSchedulingResult task_scheduling(const Instance& instance, Phase phase,
                                     const TaskSchedulingOptions& options) {
  if (options.a <= 1) throw std::invalid_argument("a must exceed 1");
  TaskSchedulingResult result;
  const IntervalGrid grid = build_grid(instance, phase, options.delta);
  result.model = build_lp(instance, phase, grid);
  result.lp = solve_lp(result.model);
  const PhaseTasks& tasks = result.model.tasks;
  const std::size_t machines = tasks.processors.size();
  result.partition =
      partition_classes(result.lp, grid, options.a, instance, tasks);
  result.filtered =
      filter_and_scale(result.lp, result.partition, tasks, grid);

  std::vector<Placement> blocks;
  Time block_start = 0;
  const Rational per_class = options.a / (options.a - 1) + 1;
  for (const auto& [level, cls] : result.filtered.classes) {
    auto assignment = round_class(cls, machines);
    Time block_end = block_start;
    for (std::size_t i = 0; i < machines; ++i) {
      Time clock = block_start;
      for (const std::size_t t : assignment[i]) {
        const Time p = tasks.tasks[t].proc_times[i];
        blocks.push_back({tasks.tasks[t].ref, tasks.processors[i], clock,
                          clock + p});
        clock += p;
      }
      if (clock - block_start > per_class * cls.size_bound) {
        throw RoundingError(class_tag(level) + ": integral load on " +
                            tasks.processors[i] +
                            " exceeds (a/(a-1)+1)(1+d)^l");
      }
      block_end = std::max(block_end, clock);
    }
    block_start = block_end;
    result.assignment.emplace(level, std::move(assignment));
  }

  // Compaction: keep each processor's order, close the gaps.
  std::vector<Placement> compact = blocks;
  std::stable_sort(compact.begin(), compact.end(),
                   [](const Placement& lhs, const Placement& rhs) {
                     return std::tie(lhs.processor, lhs.start) <
                            std::tie(rhs.processor, rhs.start);
                   });
  const std::string* current = nullptr;
  Time clock = 0;
  for (auto& placement : compact) {
    if (current == nullptr || *current != placement.processor) {
      current = &placement.processor;
      clock = 0;
    }
    const Time length = placement.end - placement.start;
    placement.start = clock;
    placement.end = clock + length;
    clock = placement.end;
  }

  result.block_schedule = make_phase_schedule(instance, phase, std::move(blocks));
  result.schedule = make_phase_schedule(instance, phase, std::move(compact));
  result.objective = weighted_sum(instance, result.schedule.job_completion);
  return result;
}

}  // namespace mrfs
