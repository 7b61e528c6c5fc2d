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

// Exact optima for tiny instances by exhaustive search.
//
// A schedule is determined, up to left shifts, by its arrangement: which
// processor runs each task and in which order. For a fixed arrangement the
// earliest-start timing is optimal because the objective is regular, so
// enumerating arrangements (m (m+1) ... (m+n-1) of them for n tasks on m
// processors) and timing each one greedily yields the optimum.
//
// Two lossless reductions keep MapReduce searches small:
//  - the Reduce side only sees the Map side through release times, so Map
//    arrangements whose release vector is dominated componentwise are
//    dropped;
//  - with separate input processors, each input processor's transfers are
//    sequenced by a dynamic program over subsets that keeps, per subset, only
//    the non-dominated (clock, finished reduce blocks) states.
//
// Work is counted in leaves (timed arrangements plus program transitions);
// passing the cap aborts the search with CapExceeded instead of returning a
// truncated answer.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "mrfs/model.hpp"

namespace mrfs {

struct OracleOptions {
  std::uint64_t max_leaves = 10'000'000;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::uint64_t cap)
      : std::runtime_error("oracle search space exceeds cap of " +
                           std::to_string(cap) + " leaves"),
        cap_(cap) {}
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

struct PhaseOracleResult {
  Rational optimum = 0;
  PhaseSchedule witness;
  std::uint64_t leaves = 0;
  double elapsed_ms = 0.0;
};

struct OracleResult {
  Rational optimum = 0;
  MergedSchedule witness;
  std::uint64_t leaves = 0;
  double elapsed_ms = 0.0;
};

enum class ShuffleModel { kSame, kSeparate };

// Minimum sum_j w_j max-task-completion for one phase on its own pool.
PhaseOracleResult brute_force_phase(const Instance& instance, Phase phase,
                                    const OracleOptions& options = {});

// Optimum of the MapReduce problem. Throws std::invalid_argument for
// overlapping Map and Reduce pools.
OracleResult brute_force_mr(const Instance& instance,
                            const OracleOptions& options = {});

// Optimum with shuffles. kSame searches block-form schedules of the folded
// instance (some optimal schedule has this form); kSeparate searches the
// model with transfers on the paired input processors.
OracleResult brute_force_msr(const Instance& instance, ShuffleModel model,
                             const OracleOptions& options = {});

}  // namespace mrfs
