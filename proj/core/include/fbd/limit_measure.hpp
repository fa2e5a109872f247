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

#ifndef FBD_LIMIT_MEASURE_HPP_
#define FBD_LIMIT_MEASURE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "fbd/lattice.hpp"
#include "fbd/special_functions.hpp"

namespace fbd {

/// mu_inf(alpha) = (alpha/2) delta(-q) + (1-alpha) Phi_q + (alpha/2) delta(q)
/// where Phi_q is the standard Gaussian restricted to [-q, q] and
/// renormalized, and q is the positive root of x g(x) = (1-alpha)/alpha.
struct LimitMeasure {
  double alpha = 0.5;
  double q = 0.0;
};

/// Limiting even moments of the free mass as polynomials in the candidate
/// boundary ell: P_0 = 1-alpha, P_k = (2k-1) P_{k-1} - alpha ell^{2k}.
/// The forward recursion loses about log10((2k-1)!!) digits near the root;
/// use poly_P_tilde or trunc_gauss_moment when that matters.
double poly_P(int k, double ell, double alpha);

/// P_k / (2k-1)!! in closed form: 1 - alpha - alpha sum_{i<=k} ell^{2i}/(2i-1)!!.
double poly_P_tilde(int k, double ell, double alpha);

struct MomentTable {
  double alpha = 0.0;
  double ell = 0.0;
  std::vector<double> P;        // P_0 .. P_K
  std::vector<double> P_tilde;  // P_k / (2k-1)!!
};

MomentTable moment_table(double alpha, double ell, int max_k);

/// q g(q) - (1-alpha)/alpha.
double key_residual(const LimitMeasure& lm);

/// (alpha/2) q - (1-alpha) exp(-q^2/2) / (sqrt(2 pi) Phi([-q, q])).
double gaussian_form_residual(const LimitMeasure& lm);

inline constexpr int kSolveIterationCap = 200;

/// Solves x g(x) = (1-alpha)/alpha for x > 0. The bracket [0, 2 sqrt(r) + 1]
/// (r the right-hand side, capped at 10) is expanded until it changes sign,
/// bisected to width 1e-13 and polished with Newton steps. The returned q
/// meets |q g(q) - r| <= max(tol, 8 eps max(1, r)).
///
/// Throws DomainError for alpha outside (0,1) or tol < 1e-14 and
/// ConvergenceError if the iteration cap is reached.
LimitMeasure solve_q(double alpha, double tol = 1e-13);

/// 2k-th moment of (1-alpha) Phi_q.
///
/// Integration by parts gives m_k = (2k-1) m_{k-1} - alpha q^{2k} with
/// m_0 = 1-alpha, the P_k recursion at ell = q. Run forward, that
/// recursion amplifies rounding by (2k-1)!!, so it is summed from the other
/// end instead: since P_k/(2k-1)!! tends to 0 exactly at the root,
///   m_k = alpha q^{2k} sum_{j>=1} q^{2j} / ((2k+1)(2k+3)...(2k+2j-1)),
/// which satisfies the same recursion and involves no cancellation.
double trunc_gauss_moment(int k, const LimitMeasure& lm);

struct InequalityRow {
  int k = 0;
  double p_tilde = 0.0;       // P_k(ell) / (2k-1)!!
  double lower_margin = 0.0;  // P_k / (2k-1)!! - 0
  double upper_margin = 0.0;  // (1-alpha) ell^{2k} / (2k-1)!! - P_k / (2k-1)!!
  bool pass = false;
};

struct InequalityReport {
  double alpha = 0.0;
  double ell = 0.0;
  double tolerance = 1e-10;
  std::vector<InequalityRow> rows;  // k = 0 .. K
  bool all_pass = true;
  std::optional<int> first_failure;
};

/// Checks 0 <= P_k(ell) <= (1-alpha) ell^{2k} for k = 0..max_k. Both sides
/// are divided by (2k-1)!!, where the polynomials stabilize; a row passes
/// when both margins are >= -tolerance.
InequalityReport check_inequalities(double alpha, double ell, int max_k,
                                    double tolerance = 1e-10);
InequalityReport check_inequalities(const LimitMeasure& lm, int max_k,
                                    double tolerance = 1e-10);

/// Right-continuous CDF of mu_inf(alpha).
double limit_cdf(double x, const LimitMeasure& lm);
/// Left limit of limit_cdf at x.
double limit_cdf_left(double x, const LimitMeasure& lm);

/// Levy distance between the CDF of the state rescaled by 1/sqrt(t) and
/// limit_cdf. Requires state.time() >= 1.
double levy_distance(const MassState& state, const LimitMeasure& lm);

/// Kolmogorov (sup-norm) distance for the same pair. Atoms at lattice
/// positions near +-q make this O(alpha/2) at any finite t, so it is a
/// secondary diagnostic only.
double kolmogorov_distance(const MassState& state, const LimitMeasure& lm);

struct GrowthRow {
  int k = 0;
  double moment = 0.0;
  double bound = 0.0;  // c^k k!
  bool pass = false;
};

struct GrowthReport {
  double c = 1.0;
  std::vector<GrowthRow> rows;
  bool all_pass = true;
};

/// Checks |even_moments[k]| <= c^k k! for every k.
GrowthReport moment_growth_check(std::span<const double> even_moments,
                                 double c);

/// The same check on trunc_gauss_moment(k) for k = 0..max_k with
/// c = max(1, q^2).
GrowthReport moment_growth_check(const LimitMeasure& lm, int max_k);

}  // namespace fbd

#endif  // FBD_LIMIT_MEASURE_HPP_
