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

#include "mrfs/validate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

namespace mrfs {

std::string_view mode_name(ValidationMode mode) {
  switch (mode) {
    case ValidationMode::kMr:
      return "mr";
    case ValidationMode::kMsrSame:
      return "msr-same";
    case ValidationMode::kMsrSeparate:
      return "msr-separate";
  }
  return "?";
}

ValidationMode parse_mode(std::string_view name) {
  if (name == "mr") return ValidationMode::kMr;
  if (name == "msr-same") return ValidationMode::kMsrSame;
  if (name == "msr-separate") return ValidationMode::kMsrSeparate;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

bool ValidationReport::has(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

namespace {

std::string interval(const Placement& p) {
  return "[" + std::to_string(p.start) + "," + std::to_string(p.end) + ")";
}

// Positive-length intervals sharing a key must be disjoint.
void check_disjoint(const Instance& instance,
                    std::map<std::string, std::vector<const Placement*>> groups,
                    const std::string& rule, const std::string& what,
                    std::vector<Violation>& out) {
  for (auto& [key, items] : groups) {
    std::sort(items.begin(), items.end(),
              [](const Placement* a, const Placement* b) {
                return std::tie(a->start, a->end, a->task) <
                       std::tie(b->start, b->end, b->task);
              });
    const Placement* latest = nullptr;
    for (const Placement* p : items) {
      if (p->end <= p->start) continue;
      if (latest != nullptr && p->start < latest->end) {
        out.push_back({rule, what + " '" + key + "': " +
                                 describe(instance, latest->task) + " " +
                                 interval(*latest) + " overlaps " +
                                 describe(instance, p->task) + " " +
                                 interval(*p)});
      }
      if (latest == nullptr || p->end > latest->end) latest = p;
    }
  }
}

std::optional<std::size_t> position(const std::vector<std::string>& pool,
                                    const std::string& id) {
  const auto it = std::find(pool.begin(), pool.end(), id);
  if (it == pool.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pool.begin());
}

struct TaskIndex {
  // Per job: map/reduce placements by task index; shuffles by [r][k].
  std::vector<std::vector<const Placement*>> maps;
  std::vector<std::vector<const Placement*>> reduces;
  std::vector<std::vector<std::vector<const Placement*>>> shuffles;
};

}  // namespace

ValidationReport validate_schedule(const Instance& instance,
                                   const MergedSchedule& schedule,
                                   ValidationMode mode) {
  ValidationReport report;
  auto& out = report.violations;
  const bool msr = mode != ValidationMode::kMr;
  const std::size_t n = instance.jobs.size();

  TaskIndex index;
  index.maps.resize(n);
  index.reduces.resize(n);
  index.shuffles.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = instance.jobs[j];
    index.maps[j].assign(job.map_tasks.size(), nullptr);
    index.reduces[j].assign(job.reduce_tasks.size(), nullptr);
    index.shuffles[j].assign(
        job.reduce_tasks.size(),
        std::vector<const Placement*>(job.map_tasks.size(), nullptr));
  }
  if (msr) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!instance.jobs[j].shuffle_times) {
        out.push_back({"missing", "job " + std::to_string(instance.jobs[j].id) +
                                      " has no shuffle times but mode is " +
                                      std::string(mode_name(mode))});
      }
    }
  }

  // Task identity and uniqueness.
  for (const auto& p : schedule.placements) {
    const TaskRef& t = p.task;
    const Placement** slot = nullptr;
    if (t.job < n) {
      const Job& job = instance.jobs[t.job];
      if (t.phase == Phase::kMap && t.task < job.map_tasks.size()) {
        slot = &index.maps[t.job][t.task];
      } else if (t.phase == Phase::kReduce && t.task < job.reduce_tasks.size()) {
        slot = &index.reduces[t.job][t.task];
      } else if (t.phase == Phase::kShuffle && msr && job.shuffle_times &&
                 t.task < job.reduce_tasks.size() &&
                 t.map_task < job.map_tasks.size()) {
        slot = &index.shuffles[t.job][t.task][t.map_task];
      }
    }
    if (slot == nullptr) {
      out.push_back({"unknown-task",
                     describe(instance, t) + " is not a task of this instance" +
                         (t.phase == Phase::kShuffle && !msr
                              ? " in mode " + std::string(mode_name(mode))
                              : "")});
      continue;
    }
    if (*slot != nullptr) {
      out.push_back({"duplicate", describe(instance, t) +
                                      " is placed more than once (preemption "
                                      "or duplication)"});
      continue;
    }
    *slot = &p;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto report_missing = [&](const Placement* p, const TaskRef& t) {
      if (p == nullptr) {
        out.push_back({"missing", describe(instance, t) + " is not placed"});
      }
    };
    for (std::size_t k = 0; k < index.maps[j].size(); ++k) {
      report_missing(index.maps[j][k], {Phase::kMap, j, k, 0});
    }
    for (std::size_t r = 0; r < index.reduces[j].size(); ++r) {
      report_missing(index.reduces[j][r], {Phase::kReduce, j, r, 0});
    }
    if (msr && instance.jobs[j].shuffle_times) {
      for (std::size_t r = 0; r < index.shuffles[j].size(); ++r) {
        for (std::size_t k = 0; k < index.shuffles[j][r].size(); ++k) {
          report_missing(index.shuffles[j][r][k], {Phase::kShuffle, j, r, k});
        }
      }
    }
  }

  // Processor membership and durations.
  for (const auto& p : schedule.placements) {
    const TaskRef& t = p.task;
    if (t.job >= n) continue;
    if (p.start < 0) {
      out.push_back({"negative-start",
                     describe(instance, t) + " starts at " +
                         std::to_string(p.start)});
    }
    if (t.phase == Phase::kShuffle) {
      if (!msr || !instance.jobs[t.job].shuffle_times ||
          t.task >= index.reduces[t.job].size() ||
          t.map_task >= instance.jobs[t.job].map_tasks.size()) {
        continue;
      }
      const Placement* reduce = index.reduces[t.job][t.task];
      if (reduce != nullptr) {
        std::string expected = reduce->processor;
        if (mode == ValidationMode::kMsrSeparate) {
          const auto pos = position(instance.reduce_processors, reduce->processor);
          if (!instance.input_processors) {
            out.push_back({"processor", "mode msr-separate needs input processors"});
            expected.clear();
          } else if (pos) {
            expected = (*instance.input_processors)[*pos];
          }
        }
        if (!expected.empty() && p.processor != expected) {
          out.push_back({"processor", describe(instance, t) + " runs on '" +
                                          p.processor + "' but must run on '" +
                                          expected + "'"});
        }
      }
      const Time t_rkj = (*instance.jobs[t.job].shuffle_times)[t.map_task][t.task];
      if (p.end - p.start != t_rkj) {
        out.push_back({"duration", describe(instance, t) + " lasts " +
                                       std::to_string(p.end - p.start) +
                                       ", transfer time is " +
                                       std::to_string(t_rkj)});
      }
      continue;
    }
    const auto& tasks = instance.jobs[t.job].tasks(t.phase);
    if (t.task >= tasks.size()) continue;
    const auto& pool = instance.pool(t.phase);
    const auto pos = position(pool, p.processor);
    if (!pos) {
      out.push_back({"processor", describe(instance, t) + " runs on '" +
                                      p.processor + "', outside the " +
                                      std::string(phase_name(t.phase)) +
                                      " pool"});
      continue;
    }
    const Time expected = tasks[t.task].proc_times[*pos];
    if (p.end - p.start != expected) {
      out.push_back({"duration", describe(instance, t) + " lasts " +
                                     std::to_string(p.end - p.start) + " on '" +
                                     p.processor + "', processing time is " +
                                     std::to_string(expected)});
    }
  }

  // No two tasks on one processor at once.
  {
    std::map<std::string, std::vector<const Placement*>> by_processor;
    for (const auto& p : schedule.placements) {
      by_processor[p.processor].push_back(&p);
    }
    check_disjoint(instance, std::move(by_processor), "overlap", "processor",
                   out);
  }

  // Precedence constraints.
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<Time> maps_done = Time{0};
    for (const Placement* m : index.maps[j]) {
      if (m == nullptr) {
        maps_done.reset();
        break;
      }
      maps_done = std::max(*maps_done, m->end);
    }
    for (const Placement* r : index.reduces[j]) {
      if (r != nullptr && maps_done && r->start < *maps_done) {
        out.push_back({"precedence",
                       "precedence: reduce starts before map completion: " +
                           describe(instance, r->task) + " starts at " +
                           std::to_string(r->start) + ", maps of job finish at " +
                           std::to_string(*maps_done)});
      }
    }
    if (!msr || !instance.jobs[j].shuffle_times) continue;
    for (std::size_t r = 0; r < index.shuffles[j].size(); ++r) {
      const Placement* reduce = index.reduces[j][r];
      for (std::size_t k = 0; k < index.shuffles[j][r].size(); ++k) {
        const Placement* s = index.shuffles[j][r][k];
        if (s == nullptr) continue;
        const Placement* map = index.maps[j][k];
        if (map != nullptr && s->start < map->end) {
          out.push_back({"property-i",
                         "Property (i): " + describe(instance, s->task) +
                             " starts at " + std::to_string(s->start) +
                             " before its map task completes at " +
                             std::to_string(map->end)});
        }
        if (reduce != nullptr && reduce->start < s->end) {
          out.push_back({"shuffle-before-reduce",
                         describe(instance, reduce->task) + " starts at " +
                             std::to_string(reduce->start) + " before " +
                             describe(instance, s->task) + " ends at " +
                             std::to_string(s->end)});
        }
      }
    }
  }

  // Property (iv): transfers into one reduce processor are serialized.
  if (msr) {
    std::map<std::string, std::vector<const Placement*>> by_destination;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0; r < index.shuffles[j].size(); ++r) {
        const Placement* reduce = index.reduces[j][r];
        if (reduce == nullptr) continue;
        for (const Placement* s : index.shuffles[j][r]) {
          if (s != nullptr) by_destination[reduce->processor].push_back(s);
        }
      }
    }
    check_disjoint(instance, std::move(by_destination), "property-iv",
                   "Property (iv): shuffles into reduce processor", out);
  }

  // Completion times and objective.
  report.job_completion.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (const Placement* r : index.reduces[j]) {
      if (r != nullptr) {
        report.job_completion[j] = std::max(report.job_completion[j], r->end);
      }
    }
  }
  report.objective = weighted_sum(instance, report.job_completion);
  if (schedule.job_completion.size() != n) {
    out.push_back({"completion", "schedule lists " +
                                     std::to_string(schedule.job_completion.size()) +
                                     " job completion times for " +
                                     std::to_string(n) + " jobs"});
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      if (schedule.job_completion[j] != report.job_completion[j]) {
        out.push_back({"completion",
                       "job " + std::to_string(instance.jobs[j].id) +
                           " stored completion " +
                           std::to_string(schedule.job_completion[j]) +
                           " differs from recomputed " +
                           std::to_string(report.job_completion[j])});
      }
    }
  }
  if (schedule.objective != report.objective) {
    out.push_back({"objective", "stored objective " +
                                    to_string(schedule.objective) +
                                    " differs from recomputed " +
                                    to_string(report.objective)});
  }
  return report;
}

ValidationReport validate_phase_schedule(const Instance& instance,
                                         const PhaseSchedule& schedule) {
  ValidationReport report;
  auto& out = report.violations;
  const Phase phase = schedule.phase;
  const auto& pool = instance.pool(phase);
  const std::size_t n = instance.jobs.size();
  std::vector<std::vector<const Placement*>> seen(n);
  for (std::size_t j = 0; j < n; ++j) {
    seen[j].assign(instance.jobs[j].tasks(phase).size(), nullptr);
  }
  std::map<std::string, std::vector<const Placement*>> by_processor;
  for (const auto& p : schedule.placements) {
    const TaskRef& t = p.task;
    if (t.phase != phase || t.job >= n || t.task >= seen[t.job].size()) {
      out.push_back({"unknown-task", describe(instance, t) +
                                         " does not belong to the phase"});
      continue;
    }
    if (seen[t.job][t.task] != nullptr) {
      out.push_back({"duplicate", describe(instance, t) + " placed twice"});
      continue;
    }
    seen[t.job][t.task] = &p;
    if (p.start < 0) {
      out.push_back({"negative-start", describe(instance, t) + " starts at " +
                                           std::to_string(p.start)});
    }
    const auto pos = position(pool, p.processor);
    if (!pos) {
      out.push_back({"processor", describe(instance, t) + " runs on '" +
                                      p.processor + "' outside the pool"});
      continue;
    }
    const Time expected = instance.jobs[t.job].tasks(phase)[t.task].proc_times[*pos];
    if (p.end - p.start != expected) {
      out.push_back({"duration", describe(instance, t) + " lasts " +
                                     std::to_string(p.end - p.start) +
                                     ", processing time is " +
                                     std::to_string(expected)});
    }
    by_processor[p.processor].push_back(&p);
  }
  check_disjoint(instance, std::move(by_processor), "overlap", "processor", out);
  report.job_completion.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < seen[j].size(); ++k) {
      const Placement* p = seen[j][k];
      if (p == nullptr) {
        out.push_back({"missing",
                       describe(instance, {phase, j, k, 0}) + " is not placed"});
        continue;
      }
      report.job_completion[j] = std::max(report.job_completion[j], p->end);
      if (j < schedule.task_completion.size() &&
          k < schedule.task_completion[j].size() &&
          schedule.task_completion[j][k] != p->end) {
        out.push_back({"completion", describe(instance, p->task) +
                                         " stored completion differs"});
      }
    }
  }
  if (schedule.job_completion != report.job_completion) {
    out.push_back({"completion", "stored job completion times differ"});
  }
  report.objective = weighted_sum(instance, report.job_completion);
  return report;
}

}  // namespace mrfs
