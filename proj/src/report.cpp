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

#include "mrfs/report.hpp"

namespace mrfs {
namespace {

constexpr double kSlack = 1e-9;

bool within(double value, double bound) {
  return value <= bound * (1.0 + kSlack) + kSlack;
}

}  // namespace

double RatioReport::ratio_vs_lp() const {
  return lower_bound > 0.0 ? to_double(objective) / lower_bound : 0.0;
}

std::optional<double> RatioReport::ratio_vs_opt() const {
  if (!oracle_optimum || *oracle_optimum == 0) return std::nullopt;
  return to_double(objective / *oracle_optimum);
}

bool RatioReport::within_bounds() const {
  const double value = to_double(objective);
  if (certified_bound && !within(value, *certified_bound)) return false;
  if (certified_max_bound && !within(value, *certified_max_bound)) {
    return false;
  }
  return !oracle_optimum || objective >= *oracle_optimum;
}

Json to_json(const RatioReport& report) {
  Json out;
  out["algorithm"] = report.algorithm;
  out["objective"] = rational_to_json(report.objective);
  out["map_objective"] = rational_to_json(report.map_objective);
  out[report.reduce_is_folded ? "shuffle_reduce_objective"
                              : "reduce_objective"] =
      rational_to_json(report.reduce_objective);
  out["lp_map"] = report.lp_map;
  out[report.reduce_is_folded ? "lp_shuffle_reduce" : "lp_reduce"] =
      report.lp_reduce;
  out["lower_bound"] = report.lower_bound;
  out["certified_bound"] =
      report.certified_bound ? Json(*report.certified_bound) : Json(nullptr);
  out["certified_max_bound"] = report.certified_max_bound
                                   ? Json(*report.certified_max_bound)
                                   : Json(nullptr);
  out["oracle_optimum"] = report.oracle_optimum
                              ? rational_to_json(*report.oracle_optimum)
                              : Json(nullptr);
  out["ratio_vs_lp"] = report.ratio_vs_lp();
  const auto vs_opt = report.ratio_vs_opt();
  out["ratio_vs_opt"] = vs_opt ? Json(*vs_opt) : Json(nullptr);
  out["within_bounds"] = report.within_bounds();
  out["digest"] = report.digest;
  out["seed"] = report.seed ? Json(*report.seed) : Json(nullptr);
  return out;
}

}  // namespace mrfs
