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

// mrfs: generate instances, solve them, validate schedules, benchmark seeded
// corpora and export phase LPs.
//
// Exit status: 0 success, 1 validation or bound failure (or an internal
// error), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mrfs/bench.hpp"
#include "mrfs/io.hpp"
#include "mrfs/lp.hpp"
#include "mrfs/shuffle.hpp"

namespace {

using namespace mrfs;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

// Input problems the user can fix: bad flags, files or instances.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": expected an integer or p/q, got '" +
                     text + "'");
  }
}

ValidationMode mode_flag(const std::string& text) {
  try {
    return parse_mode(text);
  } catch (const std::exception&) {
    throw UsageError("unknown problem '" + text +
                     "' (expected mr, msr-same or msr-separate)");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& error) {
    throw UsageError(path + ": " + error.what());
  }
}

Instance load_instance_flag(const std::string& path) {
  try {
    return instance_from_json(load_json_file(path));
  } catch (const InstanceError& error) {
    throw UsageError(path + ": " + error.what());
  }
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path) {
    write_text_file(*path, text);
  } else {
    std::cout << text;
  }
}

struct GeneratorFlags {
  GeneratorConfig config;
  std::int64_t map_tasks = 4;
  std::int64_t reduce_tasks = 4;
  std::int64_t p_max = 10;
  std::int64_t shuffle_max = 5;
  std::int64_t weight_max = 5;
  bool no_input = false;

  void add(CLI::App& app) {
    app.add_option("--jobs", config.jobs, "Number of jobs")->capture_default_str();
    app.add_option("--map-tasks", map_tasks, "Max map tasks per job")
        ->capture_default_str();
    app.add_option("--reduce-tasks", reduce_tasks, "Max reduce tasks per job")
        ->capture_default_str();
    app.add_option("--map-processors", config.map_processors)
        ->capture_default_str();
    app.add_option("--reduce-processors", config.reduce_processors)
        ->capture_default_str();
    app.add_option("--p-max", p_max, "Max processing time")->capture_default_str();
    app.add_option("--shuffle-max", shuffle_max, "Max transfer time")
        ->capture_default_str();
    app.add_option("--weight-max", weight_max, "Max job weight")
        ->capture_default_str();
    app.add_flag("--no-input-processors", no_input,
                 "Omit the input processor pool");
  }

  GeneratorConfig resolve() const {
    GeneratorConfig out = config;
    out.map_tasks = {1, map_tasks};
    out.reduce_tasks = {1, reduce_tasks};
    out.processing_time = {1, p_max};
    out.shuffle_time = {0, shuffle_max};
    out.weight = {1, weight_max};
    out.input_processors = !no_input;
    return out;
  }
};

std::pair<std::uint64_t, std::uint64_t> seed_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) return {1, std::stoull(text)};
    return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("--seeds: expected N or A..B, got '" + text + "'");
  }
}

int run_generate(const GeneratorFlags& flags, std::uint64_t seed,
                 const std::optional<std::string>& out) {
  GeneratorConfig config = flags.resolve();
  config.seed = seed;
  try {
    emit(out, canonical_json(generate_instance(config)));
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
  return kOk;
}

int run_solve(const std::string& instance_path, const std::string& problem,
              const std::string& a, const std::string& delta,
              const std::optional<std::string>& out,
              std::optional<std::uint64_t> oracle_leaves) {
  const Instance instance = load_instance_flag(instance_path);
  const ValidationMode mode = mode_flag(problem);
  TaskSchedulingOptions options{rational_flag(a, "--a"),
                                rational_flag(delta, "--delta")};
  SolveResult result;
  try {
    result = solve_problem(instance, mode, options);
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
  if (oracle_leaves) {
    try {
      result.report.oracle_optimum =
          brute_force(instance, mode, OracleOptions{*oracle_leaves}).optimum;
    } catch (const CapExceeded& error) {
      std::cerr << "oracle skipped: " << error.what() << '\n';
    } catch (const std::invalid_argument& error) {
      std::cerr << "oracle skipped: " << error.what() << '\n';
    }
  }
  const ValidationReport check = validate_schedule(instance, result.schedule, mode);
  const std::string schedule = canonical_json(to_json(instance, result.schedule));
  Json report;
  report["report"] = to_json(result.report);
  report["valid"] = check.ok();
  if (out) {
    write_text_file(*out, schedule);
  } else {
    report["schedule"] = Json::parse(schedule);
  }
  std::cout << canonical_json(report);
  for (const auto& violation : check.violations) {
    std::cerr << violation.rule << ": " << violation.message << '\n';
  }
  if (!result.report.within_bounds()) {
    std::cerr << "certified bound violated\n";
  }
  return check.ok() && result.report.within_bounds() ? kOk : kFailure;
}

int run_validate(const std::string& instance_path,
                 const std::string& schedule_path, const std::string& mode_text) {
  const Instance instance = load_instance_flag(instance_path);
  const ValidationMode mode = mode_flag(mode_text);
  MergedSchedule schedule;
  try {
    schedule = merged_schedule_from_json(instance, load_json_file(schedule_path));
  } catch (const InstanceError& error) {
    throw UsageError(schedule_path + ": " + error.what());
  }
  const ValidationReport check = validate_schedule(instance, schedule, mode);
  Json out;
  out["ok"] = check.ok();
  out["mode"] = std::string(mode_name(mode));
  out["objective"] = rational_to_json(check.objective);
  Json violations = Json::array();
  for (const auto& violation : check.violations) {
    violations.push_back({{"rule", violation.rule}, {"message", violation.message}});
  }
  out["violations"] = std::move(violations);
  std::cout << canonical_json(out);
  return check.ok() ? kOk : kFailure;
}

int run_bench(const GeneratorFlags& flags, const std::string& seeds,
              const std::string& problem, const std::string& a,
              const std::string& delta, std::optional<std::uint64_t> oracle_leaves,
              const std::string& format, bool no_timing,
              const std::optional<std::string>& out) {
  BenchConfig config;
  config.generator = flags.resolve();
  std::tie(config.first_seed, config.last_seed) = seed_range(seeds);
  if (config.last_seed < config.first_seed) {
    throw UsageError("--seeds: empty range '" + seeds + "'");
  }
  config.problem = mode_flag(problem);
  config.options = {rational_flag(a, "--a"), rational_flag(delta, "--delta")};
  if (config.options.a <= 1) throw UsageError("--a must exceed 1");
  if (config.options.delta <= 0 || config.options.delta >= 1) {
    throw UsageError("--delta must lie in (0, 1)");
  }
  config.oracle_max_leaves = oracle_leaves;
  const BenchSummary summary = mrfs::run_bench(config);
  emit(out, format == "tsv" ? bench_to_tsv(summary, !no_timing)
                            : bench_to_json(summary, !no_timing).dump(2) + "\n");
  return summary.failures == 0 ? kOk : kFailure;
}

int run_export_lp(const std::string& instance_path, const std::string& phase,
                  const std::string& delta, const std::optional<std::string>& out) {
  Instance instance = load_instance_flag(instance_path);
  Phase lp_phase = Phase::kMap;
  if (phase == "reduce") {
    lp_phase = Phase::kReduce;
  } else if (phase == "shuffle-reduce") {
    try {
      instance = fold_shuffle(instance);
    } catch (const std::invalid_argument& error) {
      throw UsageError(error.what());
    }
    lp_phase = Phase::kReduce;
  } else if (phase != "map") {
    throw UsageError("--phase: expected map, reduce or shuffle-reduce");
  }
  IntervalGrid grid;
  try {
    grid = build_grid(instance, lp_phase, rational_flag(delta, "--delta"));
  } catch (const std::invalid_argument& error) {
    throw UsageError(error.what());
  }
  const LpModel model = build_lp(instance, lp_phase, grid);
  std::ostringstream text;
  write_mps(text, model.program, "mrfs_" + phase);
  emit(out, text.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MapReduce scheduling with LP-based approximation algorithms"};
  app.require_subcommand(1);

  std::optional<std::string> out;
  std::string instance_path;
  std::string problem = "mr";
  std::string a = "3/2";
  std::string delta = "1/2";
  std::optional<std::uint64_t> oracle_leaves;

  GeneratorFlags generator_flags;
  std::uint64_t seed = 1;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--seed", seed)->capture_default_str();
  generator_flags.add(*generate);
  generate->add_option("--out", out, "Output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--problem", problem, "mr | msr-same | msr-separate")
      ->capture_default_str();
  solve->add_option("--a", a)->capture_default_str();
  solve->add_option("--delta", delta)->capture_default_str();
  solve->add_option("--out", out, "Schedule file (default: inline in the report)");
  solve->add_option("--oracle-max-leaves", oracle_leaves,
                    "Also compute the exact optimum within this many leaves");

  std::string schedule_path;
  std::string mode = "mr";
  auto* validate = app.add_subcommand("validate", "Check a schedule");
  validate->add_option("instance", instance_path)->required();
  validate->add_option("schedule", schedule_path)->required();
  validate->add_option("--mode", mode, "mr | msr-same | msr-separate")
      ->capture_default_str();

  std::string seeds = "1..10";
  std::string format = "json";
  bool no_timing = false;
  GeneratorFlags bench_flags;
  auto* bench = app.add_subcommand("bench", "Solve a seeded corpus");
  bench->add_option("--seeds", seeds, "N or A..B")->capture_default_str();
  bench_flags.add(*bench);
  bench->add_option("--problem", problem)->capture_default_str();
  bench->add_option("--a", a)->capture_default_str();
  bench->add_option("--delta", delta)->capture_default_str();
  bench->add_option("--oracle-max-leaves", oracle_leaves,
                    "Compare with the exact optimum within this many leaves");
  bench->add_option("--format", format)
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  bench->add_flag("--no-timing", no_timing, "Omit elapsed-time fields");
  bench->add_option("--out", out);

  std::string phase = "map";
  auto* export_lp = app.add_subcommand("export-lp", "Write a phase LP as MPS");
  export_lp->add_option("instance", instance_path)->required();
  export_lp->add_option("--phase", phase, "map | reduce | shuffle-reduce")
      ->capture_default_str();
  export_lp->add_option("--delta", delta)->capture_default_str();
  export_lp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return run_generate(generator_flags, seed, out);
    if (*solve) {
      return run_solve(instance_path, problem, a, delta, out, oracle_leaves);
    }
    if (*validate) return run_validate(instance_path, schedule_path, mode);
    if (*bench) {
      return run_bench(bench_flags, seeds, problem, a, delta, oracle_leaves,
                       format, no_timing, out);
    }
    if (*export_lp) return run_export_lp(instance_path, phase, delta, out);
  } catch (const UsageError& error) {
    std::cerr << "mrfs: " << error.what() << '\n';
    return kUsage;
  } catch (const std::exception& error) {
    std::cerr << "mrfs: internal error: " << error.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
