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

// Minimal fork-join helper. The worker count is the hardware concurrency,
// capped by the MRFS_THREADS environment variable when set.

#pragma once

#include <cstddef>
#include <functional>

namespace mrfs {

std::size_t worker_count();

// Runs body(0..n-1) on up to worker_count() threads. Each index runs exactly
// once; the first exception (lowest index) is rethrown after all workers
// finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mrfs
