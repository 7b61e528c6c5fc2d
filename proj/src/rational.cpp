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

#include "mrfs/rational.hpp"

#include <stdexcept>

namespace mrfs {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_literal(text)) {
      throw std::invalid_argument("not a rational: '" + text + "'");
    }
    return Rational(boost::multiprecision::cpp_int(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' ||
      den[0] == '+') {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  boost::multiprecision::cpp_int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(boost::multiprecision::cpp_int(num), d);
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  Rational result = 1;
  Rational factor = base;
  while (exponent > 0) {
    if (exponent & 1) result *= factor;
    factor *= factor;
    exponent >>= 1;
  }
  return result;
}

Rational ceil(const Rational& value) {
  boost::multiprecision::cpp_int q = numerator(value) / denominator(value);
  Rational floor_or_trunc(q);
  if (floor_or_trunc < value) floor_or_trunc += 1;
  return floor_or_trunc;
}

}  // namespace mrfs
