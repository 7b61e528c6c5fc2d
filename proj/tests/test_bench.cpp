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

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

#include "mrfs/bench.hpp"
#include "mrfs/parallel.hpp"

using namespace mrfs;

namespace {

BenchConfig tiny_config() {
  BenchConfig config;
  config.generator.jobs = 2;
  config.generator.map_tasks = {1, 2};
  config.generator.reduce_tasks = {1, 2};
  config.generator.map_processors = 2;
  config.generator.reduce_processors = 2;
  config.first_seed = 1;
  config.last_seed = 12;
  config.oracle_max_leaves = 1'000'000;
  return config;
}

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("parallel_for runs every index once and rethrows") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h == 1);
    CHECK_THROWS_WITH(parallel_for(10,
                                   [](std::size_t i) {
                                     if (i == 3 || i == 7) {
                                       throw std::runtime_error(std::to_string(i));
                                     }
                                   }),
                      "3");
  }

  TEST_CASE("thread cap from the environment") {
    setenv("MRFS_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    setenv("MRFS_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    unsetenv("MRFS_THREADS");
  }

  TEST_CASE("tables are identical across thread counts") {
    for (const auto problem : {ValidationMode::kMr, ValidationMode::kMsrSeparate}) {
      BenchConfig config = tiny_config();
      config.problem = problem;
      setenv("MRFS_THREADS", "1", 1);
      const BenchSummary serial = run_bench(config);
      setenv("MRFS_THREADS", "4", 1);
      const BenchSummary threaded = run_bench(config);
      unsetenv("MRFS_THREADS");
      CHECK(bench_to_json(serial, false).dump() == bench_to_json(threaded, false).dump());
      CHECK(bench_to_tsv(serial, false) == bench_to_tsv(threaded, false));
      CHECK(serial.failures == 0);
      REQUIRE(serial.max_ratio_vs_opt.has_value());
      CHECK(*serial.max_ratio_vs_opt >= 1.0);
    }
  }

  TEST_CASE("rows beyond the oracle cap are skipped, not failed") {
    BenchConfig config = tiny_config();
    config.oracle_max_leaves = 1;
    const BenchSummary summary = run_bench(config);
    for (const auto& row : summary.rows) {
      CHECK(row.oracle_status == "skipped");
      CHECK_FALSE(row.failed());
      CHECK(row.report.ratio_vs_lp() > 0.0);
    }
    CHECK_FALSE(summary.max_ratio_vs_opt.has_value());
    const std::string tsv = bench_to_tsv(summary, false);
    CHECK(tsv.find("\tskipped\t") != std::string::npos);
    CHECK(tsv.find("summary\t12") != std::string::npos);
    CHECK(tsv.find("elapsed_ms") == std::string::npos);
    CHECK(bench_to_tsv(summary, true).find("elapsed_ms") != std::string::npos);
  }
}
