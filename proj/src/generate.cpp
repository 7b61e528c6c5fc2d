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

#include "mrfs/generate.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace mrfs {

namespace {

void require_range(const IntRange& range, std::int64_t min_lo,
                   const char* name) {
  if (range.first > range.second || range.first < min_lo) {
    throw std::invalid_argument(std::string("degenerate range for ") + name +
                                ": [" + std::to_string(range.first) + "," +
                                std::to_string(range.second) + "]");
  }
}

std::vector<std::string> names(const char* prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& config) {
  if (config.jobs <= 0) {
    throw std::invalid_argument("degenerate input: need at least one job");
  }
  if (config.map_processors <= 0 || config.reduce_processors <= 0) {
    throw std::invalid_argument("degenerate input: need at least one processor per pool");
  }
  require_range(config.map_tasks, 1, "map tasks per job");
  require_range(config.reduce_tasks, 1, "reduce tasks per job");
  require_range(config.processing_time, 1, "processing time");
  require_range(config.shuffle_time, 0, "shuffle time");
  require_range(config.weight, 1, "weight");

  std::mt19937_64 rng(config.seed);
  const auto draw = [&rng](const IntRange& range) {
    return std::uniform_int_distribution<std::int64_t>(range.first,
                                                       range.second)(rng);
  };

  Instance instance;
  instance.map_processors = names("m", config.map_processors);
  instance.reduce_processors = names("r", config.reduce_processors);
  if (config.input_processors) {
    instance.input_processors = names("s", config.reduce_processors);
  }
  for (int j = 0; j < config.jobs; ++j) {
    Job job;
    job.id = j;
    job.weight = draw(config.weight);
    const auto n_map = draw(config.map_tasks);
    const auto n_reduce = draw(config.reduce_tasks);
    const auto make_tasks = [&](std::int64_t count, int pool_size) {
      std::vector<Task> tasks(static_cast<std::size_t>(count));
      for (auto& task : tasks) {
        for (int i = 0; i < pool_size; ++i) {
          task.proc_times.push_back(draw(config.processing_time));
        }
      }
      return tasks;
    };
    job.map_tasks = make_tasks(n_map, config.map_processors);
    job.reduce_tasks = make_tasks(n_reduce, config.reduce_processors);
    std::vector<std::vector<Time>> shuffle(
        static_cast<std::size_t>(n_map),
        std::vector<Time>(static_cast<std::size_t>(n_reduce)));
    for (auto& row : shuffle) {
      for (auto& t : row) t = draw(config.shuffle_time);
    }
    job.shuffle_times = std::move(shuffle);
    instance.jobs.push_back(std::move(job));
  }
  check_instance(instance);
  return instance;
}

}  // namespace mrfs
