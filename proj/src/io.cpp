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

#include "mrfs/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mrfs {

namespace {

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw InstanceError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw InstanceError(path + "." + key, "missing field");
  }
  return *it;
}

Time integer(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    throw InstanceError(path, "expected an integer");
  }
  return value.get<Time>();
}

std::vector<std::string> id_list(const Json& value, const std::string& path) {
  if (!value.is_array()) throw InstanceError(path, "expected an array");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) {
      throw InstanceError(path + "[" + std::to_string(i) + "]",
                          "processor ids are strings");
    }
    ids.push_back(value[i].get<std::string>());
  }
  return ids;
}

std::vector<Task> tasks_from_json(const Json& value,
                                  const std::vector<std::string>& pool,
                                  const std::string& path) {
  if (!value.is_array()) throw InstanceError(path, "expected an array");
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < value.size(); ++k) {
    const std::string task_path = path + "[" + std::to_string(k) + "]";
    const Json& times = field(value[k], "proc_times", task_path);
    const std::string times_path = task_path + ".proc_times";
    if (!times.is_object()) throw InstanceError(times_path, "expected an object");
    Task task;
    for (const auto& pid : pool) {
      const auto it = times.find(pid);
      if (it == times.end()) {
        throw InstanceError(times_path + "." + pid,
                            "missing processing time for processor in pool");
      }
      task.proc_times.push_back(integer(*it, times_path + "." + pid));
    }
    for (auto it = times.begin(); it != times.end(); ++it) {
      if (std::find(pool.begin(), pool.end(), it.key()) == pool.end()) {
        throw InstanceError(times_path + "." + it.key(),
                            "processor is not in the phase's pool");
      }
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

Json tasks_to_json(const std::vector<Task>& tasks,
                   const std::vector<std::string>& pool) {
  Json out = Json::array();
  for (const auto& task : tasks) {
    Json times = Json::object();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      times[pool[i]] = task.proc_times[i];
    }
    out.push_back(Json{{"proc_times", times}});
  }
  return out;
}

Json placement_to_json(const Instance& instance, const Placement& p) {
  Json out{{"kind", std::string(phase_name(p.task.phase))},
           {"job", instance.jobs.at(p.task.job).id},
           {"task", p.task.task},
           {"processor", p.processor},
           {"start", p.start},
           {"end", p.end}};
  if (p.task.phase == Phase::kShuffle) out["map_task"] = p.task.map_task;
  return out;
}

Json completion_map(const Instance& instance, const std::vector<Time>& c) {
  Json out = Json::object();
  for (std::size_t j = 0; j < instance.jobs.size() && j < c.size(); ++j) {
    out[std::to_string(instance.jobs[j].id)] = c[j];
  }
  return out;
}

std::size_t job_index(const Instance& instance, const Json& id,
                      const std::string& path) {
  const Time value = integer(id, path);
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    if (instance.jobs[j].id == value) return j;
  }
  throw InstanceError(path, "unknown job id " + std::to_string(value));
}

std::size_t index_field(const Json& obj, const char* key,
                        const std::string& path) {
  const Time v = integer(field(obj, key, path), path + "." + key);
  if (v < 0) throw InstanceError(path + "." + key, "must be >= 0");
  return static_cast<std::size_t>(v);
}

}  // namespace

Json rational_to_json(const Rational& value) {
  if (denominator(value) == 1 &&
      numerator(value) <= std::numeric_limits<std::int64_t>::max() &&
      numerator(value) >= std::numeric_limits<std::int64_t>::min()) {
    return numerator(value).convert_to<std::int64_t>();
  }
  return to_string(value);
}

Rational rational_from_json(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InstanceError(path, e.what());
    }
  }
  throw InstanceError(path, "expected an integer or a \"p/q\" string");
}

Json to_json(const Instance& instance) {
  Json jobs = Json::array();
  for (const auto& job : instance.jobs) {
    Json j{{"id", job.id},
           {"weight", rational_to_json(job.weight)},
           {"map_tasks", tasks_to_json(job.map_tasks, instance.map_processors)},
           {"reduce_tasks",
            tasks_to_json(job.reduce_tasks, instance.reduce_processors)}};
    if (job.shuffle_times) j["shuffle_times"] = *job.shuffle_times;
    jobs.push_back(std::move(j));
  }
  Json out{{"jobs", jobs},
           {"map_processors", instance.map_processors},
           {"reduce_processors", instance.reduce_processors}};
  if (instance.input_processors) {
    out["input_processors"] = *instance.input_processors;
  }
  return out;
}

Instance instance_from_json(const Json& json) {
  Instance instance;
  if (!json.is_object()) throw InstanceError("", "instance must be an object");
  instance.map_processors =
      id_list(field(json, "map_processors", ""), "map_processors");
  instance.reduce_processors =
      id_list(field(json, "reduce_processors", ""), "reduce_processors");
  if (json.contains("input_processors")) {
    instance.input_processors =
        id_list(json["input_processors"], "input_processors");
  }
  const Json& jobs = field(json, "jobs", "");
  if (!jobs.is_array()) throw InstanceError("jobs", "expected an array");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const std::string path = "jobs[" + std::to_string(j) + "]";
    const Json& src = jobs[j];
    Job job;
    const Time id = integer(field(src, "id", path), path + ".id");
    if (id < 0 || id > std::numeric_limits<int>::max()) {
      throw InstanceError(path + ".id", "job id out of range");
    }
    job.id = static_cast<int>(id);
    job.weight = rational_from_json(field(src, "weight", path), path + ".weight");
    job.map_tasks = tasks_from_json(field(src, "map_tasks", path),
                                    instance.map_processors, path + ".map_tasks");
    job.reduce_tasks =
        tasks_from_json(field(src, "reduce_tasks", path),
                        instance.reduce_processors, path + ".reduce_tasks");
    if (src.contains("shuffle_times")) {
      const Json& m = src["shuffle_times"];
      const std::string mpath = path + ".shuffle_times";
      if (!m.is_array()) throw InstanceError(mpath, "expected an array of rows");
      std::vector<std::vector<Time>> matrix;
      for (std::size_t k = 0; k < m.size(); ++k) {
        const std::string rpath = mpath + "[" + std::to_string(k) + "]";
        if (!m[k].is_array()) throw InstanceError(rpath, "expected an array");
        std::vector<Time> row;
        for (std::size_t r = 0; r < m[k].size(); ++r) {
          row.push_back(integer(m[k][r], rpath + "[" + std::to_string(r) + "]"));
        }
        matrix.push_back(std::move(row));
      }
      job.shuffle_times = std::move(matrix);
    }
    instance.jobs.push_back(std::move(job));
  }
  check_instance(instance);
  return instance;
}

Instance load_instance(std::istream& in) {
  Json json;
  try {
    json = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InstanceError("", std::string("parse error: ") + e.what());
  }
  return instance_from_json(json);
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_instance(in);
}

std::string canonical_json(const Json& json) { return json.dump(2) + "\n"; }

std::string canonical_json(const Instance& instance) {
  return canonical_json(to_json(instance));
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t hash = 1469598103934665603ull;
  for (const unsigned char c : canonical_json(instance)) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

Json to_json(const Instance& instance, const MergedSchedule& schedule) {
  Json placements = Json::array();
  for (const auto& p : schedule.placements) {
    placements.push_back(placement_to_json(instance, p));
  }
  return Json{{"placements", placements},
              {"job_completion", completion_map(instance, schedule.job_completion)},
              {"objective", rational_to_json(schedule.objective)}};
}

Json to_json(const Instance& instance, const PhaseSchedule& schedule) {
  Json placements = Json::array();
  for (const auto& p : schedule.placements) {
    placements.push_back(placement_to_json(instance, p));
  }
  Json tasks = Json::object();
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    tasks[std::to_string(instance.jobs[j].id)] = schedule.task_completion.at(j);
  }
  return Json{{"phase", std::string(phase_name(schedule.phase))},
              {"placements", placements},
              {"task_completion", tasks},
              {"job_completion", completion_map(instance, schedule.job_completion)}};
}

MergedSchedule merged_schedule_from_json(const Instance& instance,
                                         const Json& json) {
  MergedSchedule schedule;
  const Json& placements = field(json, "placements", "");
  if (!placements.is_array()) {
    throw InstanceError("placements", "expected an array");
  }
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const std::string path = "placements[" + std::to_string(i) + "]";
    const Json& src = placements[i];
    Placement p;
    const Json& kind = field(src, "kind", path);
    if (!kind.is_string()) throw InstanceError(path + ".kind", "expected a string");
    try {
      p.task.phase = parse_phase(kind.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InstanceError(path + ".kind", e.what());
    }
    p.task.job = job_index(instance, field(src, "job", path), path + ".job");
    p.task.task = index_field(src, "task", path);
    if (p.task.phase == Phase::kShuffle) {
      p.task.map_task = index_field(src, "map_task", path);
    }
    const Json& proc = field(src, "processor", path);
    if (!proc.is_string()) {
      throw InstanceError(path + ".processor", "expected a string");
    }
    p.processor = proc.get<std::string>();
    p.start = integer(field(src, "start", path), path + ".start");
    p.end = integer(field(src, "end", path), path + ".end");
    schedule.placements.push_back(std::move(p));
  }
  schedule.job_completion.assign(instance.jobs.size(), 0);
  const Json& completion = field(json, "job_completion", "");
  if (!completion.is_object()) {
    throw InstanceError("job_completion", "expected an object");
  }
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const std::string key = std::to_string(instance.jobs[j].id);
    const auto it = completion.find(key);
    if (it == completion.end()) {
      throw InstanceError("job_completion." + key, "missing job");
    }
    schedule.job_completion[j] = integer(*it, "job_completion." + key);
  }
  schedule.objective =
      rational_from_json(field(json, "objective", ""), "objective");
  return schedule;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace mrfs
