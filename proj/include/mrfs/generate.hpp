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

#include <cstdint>
#include <utility>

#include "mrfs/model.hpp"

namespace mrfs {

using IntRange = std::pair<std::int64_t, std::int64_t>;  // inclusive

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int jobs = 5;
  IntRange map_tasks{1, 4};
  IntRange reduce_tasks{1, 4};
  int map_processors = 4;
  int reduce_processors = 4;
  IntRange processing_time{1, 10};
  IntRange shuffle_time{0, 5};
  IntRange weight{1, 5};
  // Adds one input processor per reduce processor ("s1", "s2", ...).
  bool input_processors = true;
};

// Deterministic for a fixed config. Every (task, processor) time is drawn
// independently. Processors are named m1.., r1.., s1..; job ids are 0..n-1.
// Throws std::invalid_argument for empty or non-positive ranges.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace mrfs
