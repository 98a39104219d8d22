// Copyright 2026 The sppkit Authors
//
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

#include "sppkit/expint.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sppkit/errors.hpp"

namespace sppkit {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 500;

// E1(v) = -gamma - ln v - sum_{n>=1} (-v)^n / (n * n!)
double e1_series(double v) {
  double sum = 0.0;
  double factor = 1.0;  // (-v)^n / n!
  for (int n = 1; n <= kMaxIterations; ++n) {
    factor *= -v / n;
    const double term = factor / n;
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(v) - sum;
}

// E1(v) = exp(-v) / (v + 1 - 1^2 / (v + 3 - 2^2 / (v + 5 - ...)))
double e1_continued_fraction(double v) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = v + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-v);
}

}  // namespace

double expint_e1(double v) {
  if (!(v > 0.0)) throw DomainError("E1 is defined for positive arguments only");
  if (std::isinf(v)) return 0.0;
  return v < 1.0 ? e1_series(v) : e1_continued_fraction(v);
}

}  // namespace sppkit
