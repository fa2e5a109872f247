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

#include "fbd/limit_measure.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fbd/errors.hpp"

namespace fbd {

namespace {

void check_order(int k) {
  if (k < 0 || k > kMaxPolyOrder) {
    throw DomainError("polynomial order " + std::to_string(k) +
                      " outside [0, " + std::to_string(kMaxPolyOrder) + "]");
  }
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

struct Atom {
  double position;
  double cdf;  // cumulative mass through this atom
};

// Atoms of the state pushed forward by x -> x / sqrt(t), left to right.
std::vector<Atom> rescaled_atoms(const MassState& state) {
  if (state.time() < 1) throw DomainError("rescaling needs t >= 1");
  const auto half = state.half();
  const double scale = 1.0 / std::sqrt(static_cast<double>(state.time()));
  const auto n = static_cast<std::int64_t>(half.size());
  std::vector<Atom> atoms;
  atoms.reserve(2 * half.size());
  double running = 0.0;
  for (std::int64_t x = -(n - 1); x <= n - 1; ++x) {
    const double m = state.at(x);
    if (m <= 0.0) continue;
    running += m;
    atoms.push_back({static_cast<double>(x) * scale, running});
  }
  return atoms;
}

}  // namespace

double poly_P(int k, double ell, double alpha) {
  check_order(k);
  const double ell2 = ell * ell;
  double p = 1.0 - alpha;
  double ell_pow = 1.0;
  for (int j = 1; j <= k; ++j) {
    ell_pow *= ell2;
    p = static_cast<double>(2 * j - 1) * p - alpha * ell_pow;
  }
  return p;
}

double poly_P_tilde(int k, double ell, double alpha) {
  check_order(k);
  const double ell2 = ell * ell;
  // term_i = ell^{2i} / (2i-1)!!
  double term = 1.0;
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    term *= ell2 / static_cast<double>(2 * i - 1);
    sum += term;
  }
  return (1.0 - alpha) - alpha * sum;
}

MomentTable moment_table(double alpha, double ell, int max_k) {
  check_order(max_k);
  MomentTable table{alpha, ell, {}, {}};
  table.P.reserve(max_k + 1);
  table.P_tilde.reserve(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    table.P.push_back(poly_P(k, ell, alpha));
    table.P_tilde.push_back(poly_P_tilde(k, ell, alpha));
  }
  return table;
}

double key_residual(const LimitMeasure& lm) {
  return lm.q * g_closed(lm.q) - (1.0 - lm.alpha) / lm.alpha;
}

double gaussian_form_residual(const LimitMeasure& lm) {
  const double q = lm.q;
  const double rhs = (1.0 - lm.alpha) * std::exp(-0.5 * q * q) /
                     (std::sqrt(2.0 * std::numbers::pi) *
                      gaussian_interval_mass(q));
  return 0.5 * lm.alpha * q - rhs;
}

LimitMeasure solve_q(double alpha, double tol) {
  check_alpha(alpha);
  if (!(tol >= 1e-14)) throw DomainError("solve_q tolerance must be >= 1e-14");

  const double target = (1.0 - alpha) / alpha;
  const double accept = std::max(tol, 8.0 * DBL_EPSILON * std::max(1.0, target));
  auto f = [target](double x) { return x * g_closed(x) - target; };

  int iterations = 0;
  double lo = 0.0;
  double hi = std::min(2.0 * std::sqrt(target) + 1.0, 10.0);
  while (f(hi) < 0.0) {
    if (++iterations > kSolveIterationCap || hi >= 10.0) {
      throw ConvergenceError("could not bracket the root of x g(x) = " +
                             std::to_string(target));
    }
    hi = std::min(2.0 * hi, 10.0);
  }

  while (hi - lo > 1e-13) {
    if (++iterations > kSolveIterationCap) {
      throw ConvergenceError("bisection hit the iteration cap");
    }
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  double residual = f(x);
  for (int newton = 0; newton < 2 || std::fabs(residual) > accept; ++newton) {
    if (++iterations > kSolveIterationCap) {
      throw ConvergenceError("Newton polish hit the iteration cap");
    }
    const double candidate = x - residual / x_g_derivative(x);
    const double candidate_residual = f(candidate);
    if (!(std::fabs(candidate_residual) < std::fabs(residual))) break;
    x = candidate;
    residual = candidate_residual;
  }
  if (!(std::fabs(residual) <= accept)) {
    throw ConvergenceError("root residual " + std::to_string(residual) +
                           " above tolerance");
  }
  return LimitMeasure{alpha, x};
}

double trunc_gauss_moment(int k, const LimitMeasure& lm) {
  check_order(k);
  if (k == 0) return 1.0 - lm.alpha;
  const double q2 = lm.q * lm.q;
  double ratio = 1.0;
  double tail = 0.0;
  for (int j = 1; j < 400; ++j) {
    ratio *= q2 / static_cast<double>(2 * k + 2 * j - 1);
    tail += ratio;
    if (ratio <= tail * 1e-18) break;
  }
  return lm.alpha * std::pow(q2, k) * tail;
}

InequalityReport check_inequalities(double alpha, double ell, int max_k,
                                    double tolerance) {
  check_order(max_k);
  InequalityReport report;
  report.alpha = alpha;
  report.ell = ell;
  report.tolerance = tolerance;
  for (int k = 0; k <= max_k; ++k) {
    InequalityRow row;
    row.k = k;
    row.p_tilde = poly_P_tilde(k, ell, alpha);
    row.lower_margin = row.p_tilde;
    row.upper_margin = (1.0 - alpha) * std::pow(ell * ell, k) /
                           odd_double_factorial(k) -
                       row.p_tilde;
    row.pass = row.lower_margin >= -tolerance && row.upper_margin >= -tolerance;
    if (!row.pass) {
      report.all_pass = false;
      if (!report.first_failure) report.first_failure = k;
    }
    report.rows.push_back(row);
  }
  return report;
}

InequalityReport check_inequalities(const LimitMeasure& lm, int max_k,
                                    double tolerance) {
  return check_inequalities(lm.alpha, lm.q, max_k, tolerance);
}

double limit_cdf(double x, const LimitMeasure& lm) {
  if (x < -lm.q) return 0.0;
  if (x >= lm.q) return 1.0;
  const double s = std::numbers::sqrt2;
  const double bulk = (std::erf(x / s) + std::erf(lm.q / s)) /
                      (2.0 * std::erf(lm.q / s));
  return 0.5 * lm.alpha + (1.0 - lm.alpha) * bulk;
}

double limit_cdf_left(double x, const LimitMeasure& lm) {
  if (x <= -lm.q) return 0.0;
  if (x > lm.q) return 1.0;
  if (x == lm.q) return 1.0 - 0.5 * lm.alpha;
  return limit_cdf(x, lm);
}

double levy_distance(const MassState& state, const LimitMeasure& lm) {
  const auto atoms = rescaled_atoms(state);
  // For a given eps, F(x - eps) - eps <= G(x) <= F(x + eps) + eps must hold
  // everywhere. F is a step function, so it suffices to test G at the
  // shifted atom locations (left limits for the upper bound).
  auto holds = [&](double eps) {
    double before = 0.0;
    for (const auto& a : atoms) {
      if (limit_cdf_left(a.position - eps, lm) > before + eps) return false;
      if (a.cdf - eps > limit_cdf(a.position + eps, lm)) return false;
      before = a.cdf;
    }
    return true;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (holds(0.0)) return 0.0;
  for (int i = 0; i < 64 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

double kolmogorov_distance(const MassState& state, const LimitMeasure& lm) {
  const auto atoms = rescaled_atoms(state);
  double worst = 0.0;
  double before = 0.0;
  for (const auto& a : atoms) {
    worst = std::max(worst, std::fabs(limit_cdf_left(a.position, lm) - before));
    worst = std::max(worst, std::fabs(limit_cdf(a.position, lm) - a.cdf));
    before = a.cdf;
  }
  return std::max(worst, std::fabs(1.0 - before));
}

GrowthReport moment_growth_check(std::span<const double> even_moments,
                                 double c) {
  GrowthReport report;
  report.c = c;
  double bound = 1.0;
  for (std::size_t k = 0; k < even_moments.size(); ++k) {
    if (k > 0) bound *= c * static_cast<double>(k);
    GrowthRow row{static_cast<int>(k), even_moments[k], bound, false};
    row.pass = std::fabs(row.moment) <= row.bound;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

GrowthReport moment_growth_check(const LimitMeasure& lm, int max_k) {
  check_order(max_k);
  std::vector<double> moments;
  for (int k = 0; k <= max_k; ++k) moments.push_back(trunc_gauss_moment(k, lm));
  return moment_growth_check(moments, std::max(1.0, lm.q * lm.q));
}

}  // namespace fbd
