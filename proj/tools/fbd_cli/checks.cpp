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

#include "fbd_cli/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fbd/compensated_sum.hpp"
#include "fbd/errors.hpp"
#include "fbd/io.hpp"
#include "fbd/limit_measure.hpp"
#include "fbd_oracles/quadrature.hpp"

namespace fbd::cli {

namespace {

// C(2k, 2k - 2i) for k <= 3.
constexpr double kBinomial[4][4] = {
    {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 6, 1, 0}, {1, 15, 15, 1}};

// Worst error seen relative to a limit that may depend on t.
struct Tracker {
  std::string name;
  bool ok = true;
  double worst_ratio = -1.0;
  double worst_error = 0.0;
  double worst_limit = 0.0;
  std::int64_t worst_t = -1;

  void observe(double error, double limit, std::int64_t t) {
    const double ratio = limit > 0.0 ? error / limit : (error > 0.0 ? 1e300 : 0.0);
    if (!(error <= limit)) ok = false;
    if (!(ratio <= worst_ratio)) {
      worst_ratio = ratio;
      worst_error = error;
      worst_limit = limit;
      worst_t = t;
    }
  }

  CheckResult result(double alpha) const {
    std::ostringstream os;
    os << "worst " << format_real(worst_error) << " (limit "
       << format_real(worst_limit) << ") at t=" << worst_t;
    return {name, alpha, ok, os.str()};
  }
};

std::array<double, 7> all_moments(std::span<const double> half) {
  std::array<double, 7> m{};
  for (int k = 0; k <= 6; k += 2) m[k] = half_array_moment(half, k);
  return m;
}

}  // namespace

std::vector<CheckResult> run_evolution_checks(double alpha,
                                              const CheckOptions& options) {
  Tracker mass_step{"mass conserved per step"};
  Tracker mass_total{"total mass = 1"};
  Tracker second_moment{"M2(t) = t(1-alpha)"};
  Tracker boundary_bounds{"sqrt(t(1-a))-1 < beta <= sqrt(t(1-a)/a)"};
  Tracker support{"support within beta+1, beta non-decreasing"};
  Tracker frozen{"frozen mass = alpha, free = 1-alpha"};
  std::array<Tracker, 3> change{Tracker{"moment change k=1"},
                                Tracker{"moment change k=2"},
                                Tracker{"moment change k=3"}};
  std::array<Tracker, 3> telescoped{Tracker{"telescoped moments k=1"},
                                    Tracker{"telescoped moments k=2"},
                                    Tracker{"telescoped moments k=3"}};
  std::array<CompensatedSum, 3> running;
  std::int64_t last_beta = 0;

  auto check_state = [&](const MassState& state, const FrozenSplit& split) {
    const std::int64_t t = state.time();
    const double dt = static_cast<double>(t);
    mass_total.observe(std::fabs(state.total_mass() - 1.0), 1e-12 * (dt + 1.0), t);
    second_moment.observe(std::fabs(moment(state, 2) - dt * (1.0 - alpha)),
                          1e-10 * std::max(1.0, dt), t);
    if (t >= 1) {
      // Squared form of the bounds; the upper one is attained at t = 1.
      const double b = static_cast<double>(split.beta);
      const double rhs = dt * (1.0 - alpha);
      const bool inside =
          alpha * b * b <= rhs * (1.0 + 1e-12) && (b + 1.0) * (b + 1.0) > rhs;
      boundary_bounds.observe(inside ? 0.0 : 1.0, 0.0, t);
    }
    const bool supported = state.max_site() <= split.beta + 1;
    support.observe(supported && split.beta >= last_beta ? 0.0 : 1.0, 0.0, t);
    last_beta = split.beta;
    frozen.observe(std::max(std::fabs(split.frozen_total() - alpha),
                            std::fabs(split.free_total() - (1.0 - alpha))),
                   1e-12, t);
  };

  RunOptions run;
  run.validate_rows = false;
  run.fault = options.fault;
  run.observer = [&](const FrozenSplit& split, const MassState& before,
                     const MassState& after) {
    check_state(before, split);
    const auto mb = all_moments(before.half());
    const auto ma = all_moments(after.half());
    const auto mf = all_moments(split.free);
    mass_step.observe(std::fabs(ma[0] - mb[0]), 1e-15, after.time());
    for (int k = 1; k <= 3; ++k) {
      double predicted = 0.0;
      for (int i = 1; i <= k; ++i) {
        predicted += kBinomial[k][i] * mf[2 * k - 2 * i];
      }
      const double actual = ma[2 * k] - mb[2 * k];
      change[k - 1].observe(std::fabs(actual - predicted),
                            1e-9 * std::fabs(predicted), after.time());
      running[k - 1].add(predicted);
      telescoped[k - 1].observe(std::fabs(ma[2 * k] - running[k - 1].value()),
                                1e-8 * std::fabs(ma[2 * k]), after.time());
    }
  };

  std::vector<CheckResult> out;
  try {
    const std::vector<std::int64_t> none;
    const auto traj = run_fbd(alpha, options.steps, none, run);
    check_state(traj.final_state, freeze_split(traj.final_state));
  } catch (const InvalidState& e) {
    out.push_back({"evolution completed", alpha, false, e.what()});
  }

  for (const auto* tr : {&mass_step, &mass_total, &second_moment, &boundary_bounds,
                         &support, &frozen}) {
    out.push_back(tr->result(alpha));
  }
  for (const auto& tr : change) out.push_back(tr.result(alpha));
  for (const auto& tr : telescoped) out.push_back(tr.result(alpha));
  return out;
}

std::vector<CheckResult> run_analysis_checks(double alpha, int max_k) {
  std::vector<CheckResult> out;
  LimitMeasure lm;
  try {
    lm = solve_q(alpha, 1e-13);
  } catch (const ConvergenceError& e) {
    out.push_back({"solve q", alpha, false, e.what()});
    return out;
  }
  {
    const double key = std::fabs(key_residual(lm));
    const double q = lm.q;
    const double independent =
        std::fabs(0.5 * alpha * q -
                  (1.0 - alpha) * std::exp(-0.5 * q * q) /
                      (std::sqrt(2.0 * std::numbers::pi) *
                       oracles::gaussian_interval_mass(q)));
    std::ostringstream os;
    os << "q=" << format_real(q) << " key " << format_real(key)
       << " gaussian form " << format_real(independent);
    out.push_back({"q residuals <= 1e-9", alpha,
                   key <= 1e-9 && independent <= 1e-9, os.str()});
  }
  {
    const auto report = check_inequalities(lm, max_k);
    out.push_back({"inequality family at q", alpha, report.all_pass,
                   report.all_pass ? "k=0.." + std::to_string(max_k)
                                   : "fails at k=" +
                                         std::to_string(*report.first_failure)});
  }
  {
    double worst = 0.0;
    for (int i = 1; i <= 12; ++i) {
      const double x = 0.25 * i;
      worst = std::max(worst, std::fabs(g_series(x, 60) - g_closed(x)));
    }
    out.push_back({"g series = closed form", alpha, worst <= 1e-12,
                   "worst " + format_real(worst)});
  }
  {
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double ref = oracles::truncated_gaussian_moment(k, alpha, lm.q);
      worst = std::max(worst,
                       std::fabs(trunc_gauss_moment(k, lm) - ref) / std::fabs(ref));
    }
    out.push_back({"truncated Gaussian moments = quadrature", alpha,
                   worst <= 1e-10, "worst relative " + format_real(worst)});
  }
  {
    const auto growth = moment_growth_check(lm, std::min(max_k, kMaxPolyOrder));
    out.push_back({"moment growth c^k k!", alpha, growth.all_pass,
                   "c=" + format_real(growth.c)});
  }
  return out;
}

}  // namespace fbd::cli
