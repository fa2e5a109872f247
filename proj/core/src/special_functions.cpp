// Copyright 2026 The fbd Authors
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

#include "fbd/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fbd/errors.hpp"

namespace fbd {

namespace {

constexpr std::array<double, kMaxPolyOrder + 1> make_double_factorials() {
  std::array<double, kMaxPolyOrder + 1> table{};
  table[0] = 1.0;
  for (int k = 1; k <= kMaxPolyOrder; ++k) {
    table[k] = table[k - 1] * static_cast<double>(2 * k - 1);
  }
  return table;
}

constexpr auto kDoubleFactorials = make_double_factorials();

}  // namespace

double odd_double_factorial(int k) {
  if (k < 0 || k > kMaxPolyOrder) {
    throw DomainError("double factorial index " + std::to_string(k) +
                      " outside [0, " + std::to_string(kMaxPolyOrder) + "]");
  }
  return kDoubleFactorials[static_cast<std::size_t>(k)];
}

double g_series(double x, int terms) {
  if (terms < 1) throw DomainError("g_series needs at least one term");
  // term_i = x^{2i-1} / (2i-1)!!, term_{i+1} = term_i * x^2 / (2i+1).
  const double x2 = x * x;
  double term = x;
  double sum = term;
  for (int i = 1; i < terms; ++i) {
    term *= x2 / static_cast<double>(2 * i + 1);
    sum += term;
  }
  return sum;
}

double g_closed(double x) {
  if (!(std::fabs(x) <= 10.0)) {
    throw DomainError("g_closed is evaluated on |x| <= 10 only");
  }
  constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)
  return std::exp(0.5 * x * x) * kSqrtHalfPi *
         std::erf(x / std::numbers::sqrt2);
}

double x_g_derivative(double x) {
  const double g = g_closed(x);
  return g + x * (1.0 + x * g);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_density(double x) {
  constexpr double kInvSqrt2Pi = 0.39894228040143267794;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double gaussian_interval_mass(double q) {
  return std::erf(q / std::numbers::sqrt2);
}

}  // namespace fbd
