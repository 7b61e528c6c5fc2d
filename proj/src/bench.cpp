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

#include "mrfs/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mrfs/parallel.hpp"
#include "mrfs/shuffle.hpp"

namespace mrfs {
namespace {

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

std::string number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

std::string optional_number(const std::optional<double>& value) {
  return value ? number(*value) : "-";
}

BenchRow run_row(const BenchConfig& config, std::uint64_t seed) {
  const auto started = Clock::now();
  BenchRow row;
  row.seed = seed;
  row.oracle_status = config.oracle_max_leaves ? "" : "off";
  try {
    GeneratorConfig generator = config.generator;
    generator.seed = seed;
    const Instance instance = generate_instance(generator);
    row.jobs = instance.jobs.size();
    SolveResult result = solve_problem(instance, config.problem, config.options);
    row.report = std::move(result.report);
    row.report.seed = seed;
    row.violations =
        validate_schedule(instance, result.schedule, config.problem)
            .violations.size();
    if (config.oracle_max_leaves) {
      try {
        const OracleResult opt = brute_force(
            instance, config.problem, OracleOptions{*config.oracle_max_leaves});
        row.report.oracle_optimum = opt.optimum;
        row.oracle_leaves = opt.leaves;
        row.oracle_status = "ok";
      } catch (const CapExceeded&) {
        row.oracle_status = "skipped";
      } catch (const std::invalid_argument&) {
        row.oracle_status = "unsupported";
      }
    }
  } catch (const std::exception& error) {
    row.error = error.what();
  }
  row.elapsed_ms = since_ms(started);
  return row;
}

}  // namespace

SolveResult solve_problem(const Instance& instance, ValidationMode problem,
                          const TaskSchedulingOptions& options) {
  switch (problem) {
    case ValidationMode::kMr:
      return solve_mr(instance, options);
    case ValidationMode::kMsrSame:
      return solve_msr_same(instance, options);
    case ValidationMode::kMsrSeparate:
      return solve_msr_separate(instance, options);
  }
  throw std::logic_error("unknown problem");
}

OracleResult brute_force(const Instance& instance, ValidationMode problem,
                         const OracleOptions& options) {
  switch (problem) {
    case ValidationMode::kMr:
      return brute_force_mr(instance, options);
    case ValidationMode::kMsrSame:
      return brute_force_msr(instance, ShuffleModel::kSame, options);
    case ValidationMode::kMsrSeparate:
      return brute_force_msr(instance, ShuffleModel::kSeparate, options);
  }
  throw std::logic_error("unknown problem");
}

bool BenchRow::failed() const {
  return !error.empty() || violations > 0 || !report.within_bounds();
}

BenchSummary run_bench(const BenchConfig& config) {
  if (config.last_seed < config.first_seed) {
    throw std::invalid_argument("empty seed range");
  }
  const auto started = Clock::now();
  BenchSummary summary;
  summary.rows.resize(config.last_seed - config.first_seed + 1);
  parallel_for(summary.rows.size(), [&](std::size_t i) {
    summary.rows[i] = run_row(config, config.first_seed + i);
  });
  std::size_t lp_count = 0;
  std::size_t opt_count = 0;
  double lp_total = 0.0;
  double opt_total = 0.0;
  for (const auto& row : summary.rows) {
    if (row.failed()) ++summary.failures;
    if (!row.error.empty()) continue;
    const double vs_lp = row.report.ratio_vs_lp();
    summary.max_ratio_vs_lp = std::max(summary.max_ratio_vs_lp, vs_lp);
    lp_total += vs_lp;
    ++lp_count;
    if (const auto vs_opt = row.report.ratio_vs_opt()) {
      summary.max_ratio_vs_opt = std::max(summary.max_ratio_vs_opt.value_or(0.0), *vs_opt);
      opt_total += *vs_opt;
      ++opt_count;
    }
  }
  if (lp_count > 0) summary.mean_ratio_vs_lp = lp_total / lp_count;
  if (opt_count > 0) summary.mean_ratio_vs_opt = opt_total / opt_count;
  summary.elapsed_ms = since_ms(started);
  return summary;
}

Json bench_to_json(const BenchSummary& summary, bool timing) {
  Json rows = Json::array();
  for (const auto& row : summary.rows) {
    Json entry;
    entry["seed"] = row.seed;
    if (!row.error.empty()) {
      entry["error"] = row.error;
    } else {
      entry["jobs"] = row.jobs;
      entry["report"] = to_json(row.report);
      entry["violations"] = row.violations;
      entry["oracle"] = row.oracle_status;
      if (row.oracle_status == "ok") entry["oracle_leaves"] = row.oracle_leaves;
    }
    entry["failed"] = row.failed();
    if (timing) entry["elapsed_ms"] = row.elapsed_ms;
    rows.push_back(std::move(entry));
  }
  Json out;
  out["rows"] = std::move(rows);
  Json summary_json;
  summary_json["max_ratio_vs_lp"] = summary.max_ratio_vs_lp;
  summary_json["mean_ratio_vs_lp"] = summary.mean_ratio_vs_lp;
  summary_json["max_ratio_vs_opt"] = summary.max_ratio_vs_opt
                                         ? Json(*summary.max_ratio_vs_opt)
                                         : Json(nullptr);
  summary_json["mean_ratio_vs_opt"] = summary.mean_ratio_vs_opt
                                          ? Json(*summary.mean_ratio_vs_opt)
                                          : Json(nullptr);
  summary_json["failures"] = summary.failures;
  if (timing) summary_json["elapsed_ms"] = summary.elapsed_ms;
  out["summary"] = std::move(summary_json);
  return out;
}

std::string bench_to_tsv(const BenchSummary& summary, bool timing) {
  std::ostringstream out;
  out << "seed\tjobs\tdigest\tobjective\tlp_map\tlp_reduce\tlower_bound"
         "\tcertified_bound\tratio_vs_lp\topt\tratio_vs_opt\tviolations"
         "\tstatus";
  if (timing) out << "\telapsed_ms";
  out << '\n';
  for (const auto& row : summary.rows) {
    out << row.seed << '\t';
    if (!row.error.empty()) {
      out << "-\t-\t-\t-\t-\t-\t-\t-\t-\t-\t-\terror: " << row.error;
    } else {
      const RatioReport& r = row.report;
      std::string opt = row.oracle_status;
      if (r.oracle_optimum) opt = to_string(*r.oracle_optimum);
      out << row.jobs << '\t' << r.digest << '\t' << to_string(r.objective)
          << '\t' << number(r.lp_map) << '\t' << number(r.lp_reduce) << '\t'
          << number(r.lower_bound) << '\t'
          << optional_number(r.certified_bound) << '\t'
          << number(r.ratio_vs_lp()) << '\t' << opt << '\t'
          << optional_number(r.ratio_vs_opt()) << '\t' << row.violations
          << '\t' << (row.failed() ? "FAIL" : "ok");
    }
    if (timing) out << '\t' << number(row.elapsed_ms);
    out << '\n';
  }
  out << "summary\t" << summary.rows.size() << "\t-\t-\t-\t-\t-\t-\t"
      << "max=" << number(summary.max_ratio_vs_lp)
      << ",mean=" << number(summary.mean_ratio_vs_lp) << "\t-\t"
      << "max=" << optional_number(summary.max_ratio_vs_opt)
      << ",mean=" << optional_number(summary.mean_ratio_vs_opt) << '\t'
      << summary.failures << '\t' << (summary.failures ? "FAIL" : "ok");
  if (timing) out << '\t' << number(summary.elapsed_ms);
  out << '\n';
  return out.str();
}

}  // namespace mrfs
