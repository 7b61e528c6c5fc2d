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

// Seeded benchmark runs: generate, solve, validate, optionally compare with
// the exact optimum, and tabulate.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrfs/generate.hpp"
#include "mrfs/merge.hpp"
#include "mrfs/oracle.hpp"
#include "mrfs/report.hpp"
#include "mrfs/validate.hpp"

namespace mrfs {

// Runs the solver for a problem variant.
SolveResult solve_problem(const Instance& instance, ValidationMode problem,
                          const TaskSchedulingOptions& options = {});

// Exact optimum for a problem variant.
OracleResult brute_force(const Instance& instance, ValidationMode problem,
                         const OracleOptions& options = {});

struct BenchConfig {
  GeneratorConfig generator;  // seed is overridden per row
  std::uint64_t first_seed = 1;
  std::uint64_t last_seed = 10;
  ValidationMode problem = ValidationMode::kMr;
  TaskSchedulingOptions options;
  // Oracle leaf cap; nullopt disables the oracle.
  std::optional<std::uint64_t> oracle_max_leaves;
};

struct BenchRow {
  std::uint64_t seed = 0;
  std::size_t jobs = 0;
  RatioReport report;
  std::size_t violations = 0;
  std::string oracle_status;  // "ok", "skipped", "unsupported", "off"
  std::uint64_t oracle_leaves = 0;
  std::string error;  // non-empty if the pipeline threw
  double elapsed_ms = 0.0;

  bool failed() const;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  double max_ratio_vs_lp = 0.0;
  double mean_ratio_vs_lp = 0.0;
  std::optional<double> max_ratio_vs_opt;
  std::optional<double> mean_ratio_vs_opt;
  std::size_t failures = 0;
  double elapsed_ms = 0.0;
};

// Rows come back in seed order whatever the thread count.
BenchSummary run_bench(const BenchConfig& config);

Json bench_to_json(const BenchSummary& summary, bool timing);
std::string bench_to_tsv(const BenchSummary& summary, bool timing);

}  // namespace mrfs
