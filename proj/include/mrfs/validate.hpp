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
#include <string_view>
#include <vector>

#include "mrfs/model.hpp"

namespace mrfs {

enum class ValidationMode {
  kMr,           // map and reduce tasks only
  kMsrSame,      // shuffles run on their reduce task's processor
  kMsrSeparate,  // shuffles run on the paired input processor
};

std::string_view mode_name(ValidationMode mode);
ValidationMode parse_mode(std::string_view name);

struct Violation {
  // Short rule tag: "unknown-task", "duplicate", "missing", "processor",
  // "duration", "negative-start", "overlap", "precedence", "property-i",
  // "shuffle-before-reduce", "property-iv", "completion", "objective".
  std::string rule;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Recomputed from placements.
  std::vector<Time> job_completion;
  Rational objective = 0;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view rule) const;
};

// Checks every scheduling rule and never throws on schedule problems; each
// broken rule becomes a Violation. Completion times and the objective are
// re-derived from placements and compared with the stored values exactly.
ValidationReport validate_schedule(const Instance& instance,
                                   const MergedSchedule& schedule,
                                   ValidationMode mode);

// Single-phase variant: pool membership, durations, overlap, and that every
// task of the phase is placed exactly once. Stored completions are compared
// with the placements.
ValidationReport validate_phase_schedule(const Instance& instance,
                                         const PhaseSchedule& schedule);

}  // namespace mrfs
