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

// Objective, lower bounds and ratios of one solver run.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mrfs/io.hpp"
#include "mrfs/rational.hpp"

namespace mrfs {

struct RatioReport {
  std::string algorithm;  // "mr", "msr-same", "msr-separate"
  Rational objective = 0;
  // Phase objectives of the two task_scheduling runs.
  Rational map_objective = 0;
  Rational reduce_objective = 0;
  double lp_map = 0.0;
  // LP of the Reduce phase, or of the folded Shuffle-Reduce phase.
  double lp_reduce = 0.0;
  bool reduce_is_folded = false;
  // Lower bound on the optimum derived from the LPs.
  double lower_bound = 0.0;
  // Sum and max forms of the approximation certificate; absent when the run
  // carries no guarantee (overlapping Map and Reduce pools).
  std::optional<double> certified_bound;
  std::optional<double> certified_max_bound;
  std::optional<Rational> oracle_optimum;
  std::string digest;
  std::optional<std::uint64_t> seed;

  double ratio_vs_lp() const;
  std::optional<double> ratio_vs_opt() const;
  // False if the objective exceeds either certificate (relative slack 1e-9
  // for LP round-off) or undercuts the oracle optimum.
  bool within_bounds() const;
};

Json to_json(const RatioReport& report);

}  // namespace mrfs
