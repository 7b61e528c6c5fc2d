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
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mrfs {

// Exact arithmetic for weights, objectives and interval endpoints. Schedule
// times themselves are integers.
using Rational = boost::multiprecision::cpp_rational;
using Time = std::int64_t;

// Parses "7", "-3" or "3/2". Throws std::invalid_argument on anything else
// (including decimal notation).
Rational parse_rational(const std::string& text);

// "7" for integers, "3/2" otherwise.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

// (base)^exponent for exponent >= 0.
Rational pow(const Rational& base, int exponent);

// Smallest integer >= value.
Rational ceil(const Rational& value);

}  // namespace mrfs
