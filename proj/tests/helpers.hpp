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

#pragma once

#include <string>

#include "mrfs/generate.hpp"
#include "mrfs/io.hpp"

namespace mrfs::testing {

inline Instance parse_instance(const std::string& text) {
  return instance_from_json(Json::parse(text));
}

inline Instance load_data(const std::string& name) {
  return load_instance_file(std::string(MRFS_TEST_DATA) + "/" + name);
}

// Tiny instances: at most 3 jobs, 1-2 tasks per phase, 2+2(+2) processors.
inline Instance tiny_instance(std::uint64_t seed, int max_jobs = 3) {
  GeneratorConfig config;
  config.seed = seed;
  config.jobs = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_jobs));
  config.map_tasks = {1, 2};
  config.reduce_tasks = {1, 2};
  config.map_processors = 2;
  config.reduce_processors = 2;
  config.processing_time = {1, 6};
  config.shuffle_time = {0, 3};
  return generate_instance(config);
}

// Desk-scale instances: up to 10 jobs, 4 tasks per phase, 4+4(+4)
// processors.
inline Instance corpus_instance(std::uint64_t seed) {
  GeneratorConfig config;
  config.seed = seed;
  config.jobs = 1 + static_cast<int>(seed % 10);
  return generate_instance(config);
}

}  // namespace mrfs::testing
