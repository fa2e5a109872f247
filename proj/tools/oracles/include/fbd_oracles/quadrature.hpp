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

#ifndef FBD_ORACLES_QUADRATURE_HPP_
#define FBD_ORACLES_QUADRATURE_HPP_

// Reference evaluators that share no code with fbd::core. They are slow
// and exist to cross-check the library.

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fbd::oracles {

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Stop once the refinement is below the rounding floor of the panel.
  const double floor = 64.0 * 2.2e-16 * (std::fabs(left) + std::fabs(right));
  if (depth <= 0 || std::fabs(delta) <= std::max(15.0 * tol, floor)) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction, absolute tolerance `tol`.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 30) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// int_{-q}^{q} x^{2k} exp(-x^2/2) dx by quadrature on [0, q], doubled.
inline double gaussian_even_integral(int k, double q) {
  auto f = [k](double x) { return std::pow(x, 2 * k) * std::exp(-0.5 * x * x); };
  // Tolerance relative to the crude size of the answer.
  const double scale = std::pow(q, 2 * k + 1) / (2 * k + 1) + 1e-300;
  return 2.0 * adaptive_simpson(f, 0.0, q, 1e-14 * scale);
}

/// Phi([-q, q]) by quadrature of the normal density.
inline double gaussian_interval_mass(double q) {
  return gaussian_even_integral(0, q) / std::sqrt(2.0 * std::numbers::pi);
}

/// 2k-th moment of (1-alpha) Phi_q by direct quadrature.
inline double truncated_gaussian_moment(int k, double alpha, double q) {
  return (1.0 - alpha) * gaussian_even_integral(k, q) /
         gaussian_even_integral(0, q);
}

/// e^{x^2/2} int_0^x e^{-y^2/2} dy by quadrature.
inline double g_by_quadrature(double x) {
  auto f = [](double y) { return std::exp(-0.5 * y * y); };
  return std::exp(0.5 * x * x) *
         adaptive_simpson(f, 0.0, x, 1e-15 * std::fabs(x));
}

}  // namespace fbd::oracles

#endif  // FBD_ORACLES_QUADRATURE_HPP_
