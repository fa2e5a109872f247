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

#ifndef FBD_SPECIAL_FUNCTIONS_HPP_
#define FBD_SPECIAL_FUNCTIONS_HPP_

namespace fbd {

/// Largest k for which (2k-1)!! is tabulated. Operations indexed by k
/// refuse anything larger instead of overflowing.
inline constexpr int kMaxPolyOrder = 30;

/// (2k-1)!! = (2k-1)(2k-3)...1, with (-1)!! = 1. k in [0, kMaxPolyOrder].
double odd_double_factorial(int k);

/// Partial sum of g(x) = sum_{i>=1} x^{2i-1} / (2i-1)!! using `terms`
/// terms (terms >= 1).
double g_series(double x, int terms);

/// Closed form g(x) = exp(x^2/2) * int_0^x exp(-y^2/2) dy, evaluated
/// through erf. Valid for |x| <= 10; DomainError otherwise.
double g_closed(double x);

/// d/dx [x g(x)] = g(x) + x (1 + x g(x)).
double x_g_derivative(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal density.
double normal_density(double x);

/// Phi([-q, q]) for q >= 0.
double gaussian_interval_mass(double q);

}  // namespace fbd

#endif  // FBD_SPECIAL_FUNCTIONS_HPP_
