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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "fbd/engine.hpp"
#include "fbd/frw.hpp"
#include "fbd/grid2d.hpp"
#include "fbd/io.hpp"
#include "fbd/lattice.hpp"
#include "fbd/limit_measure.hpp"
#include "fbd/special_functions.hpp"
#include "fbd_cli/cli.hpp"
#include "fbd_oracles/quadrature.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(int id, bool pass, const std::string& title,
            const std::string& detail) {
  if (!pass) ++g_failures;
  std::printf("%s  %2d  %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Per-step observations of one evolution from delta(0).
struct EvolutionStats {
  double alpha = 0.0;
  std::int64_t steps = 0;
  double worst_m2 = 0.0;           // max |M2 - t(1-alpha)| / t
  bool bounds_ok = true;           // diffusive boundary bounds at every t
  std::int64_t bounds_first_bad = -1;
  bool support_ok = true;          // support within beta+1, beta monotone
  std::int64_t support_first_bad = -1;
  double worst_change = 0.0;       // moment-change identity, relative
  std::int64_t change_horizon = 0;
  fbd::Trajectory trajectory;
};

EvolutionStats evolve(double alpha, std::int64_t steps,
                      std::vector<std::int64_t> schedule,
                      std::int64_t change_horizon) {
  EvolutionStats st;
  st.alpha = alpha;
  st.steps = steps;
  st.change_horizon = change_horizon;
  std::int64_t prev_beta = 0;
  fbd::RunOptions opts;
  opts.observer = [&](const fbd::FrozenSplit& split, const fbd::MassState& before,
                      const fbd::MassState& after) {
    const auto t = static_cast<double>(before.time());
    const auto beta = static_cast<double>(split.beta);
    if (before.time() >= 1) {
      const bool upper = alpha * beta * beta <= t * (1.0 - alpha) * (1.0 + 1e-12);
      const bool lower = (beta + 1.0) * (beta + 1.0) > t * (1.0 - alpha);
      if (!(upper && lower) && st.bounds_ok) {
        st.bounds_ok = false;
        st.bounds_first_bad = before.time();
      }
    }
    if ((before.max_site() > split.beta + 1 || split.beta < prev_beta) &&
        st.support_ok) {
      st.support_ok = false;
      st.support_first_bad = before.time();
    }
    prev_beta = split.beta;

    const double t1 = static_cast<double>(after.time());
    const double m2_after = fbd::moment(after, 2);
    st.worst_m2 = std::max(st.worst_m2, std::fabs(m2_after - t1 * (1.0 - alpha)) / t1);

    if (after.time() <= st.change_horizon) {
      for (int k = 1; k <= 3; ++k) {
        double rhs = 0.0;
        for (int i = 1; i <= k; ++i) {
          rhs += binomial(2 * k, 2 * k - 2 * i) *
                 fbd::free_moment(split, 2 * k - 2 * i);
        }
        const double lhs = fbd::moment(after, 2 * k) - fbd::moment(before, 2 * k);
        st.worst_change = std::max(st.worst_change, std::fabs(lhs - rhs) / std::fabs(rhs));
      }
    }
  };
  st.trajectory = fbd::run_fbd(alpha, steps, schedule, opts);
  // The final state's support is not seen by the observer as a "before".
  const fbd::FrozenSplit last = fbd::freeze_split(st.trajectory.final_state);
  if (last.beta < prev_beta && st.support_ok) {
    st.support_ok = false;
    st.support_first_bad = steps;
  }
  return st;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_fixed_point() {
  const auto start = Clock::now();
  const fbd::LimitMeasure lm = fbd::solve_q(0.5);
  const double elapsed = seconds_since(start);
  const double key = std::fabs(fbd::key_residual(lm));
  const double gauss = std::fabs(fbd::gaussian_form_residual(lm));
  const bool pass = std::fabs(lm.q - 0.878) <= 2e-3 && key <= 1e-9 &&
                    gauss <= 1e-9 && elapsed < 1e-3;
  report(1, pass, "fixed point",
         fmt("q=%.17g |q-0.878|=%.3g key_residual=%.3g gaussian_residual=%.3g "
             "runtime=%.3g ms",
             lm.q, std::fabs(lm.q - 0.878), key, gauss, elapsed * 1e3));
}

void criterion_truncated_gaussian() {
  double worst = 0.0;
  for (double alpha : {0.1, 0.5, 0.9}) {
    const fbd::LimitMeasure lm = fbd::solve_q(alpha);
    for (int k = 0; k <= 10; ++k) {
      const double ref = fbd::oracles::truncated_gaussian_moment(k, alpha, lm.q);
      worst = std::max(worst, std::fabs(fbd::trunc_gauss_moment(k, lm) - ref) /
                                  std::fabs(ref));
    }
  }
  report(8, worst <= 1e-10, "truncated Gaussian moments vs quadrature",
         fmt("worst relative error %.3g over k<=10, alpha in {0.1,0.5,0.9}", worst));
}

void criterion_inequalities() {
  bool at_root = true;
  bool above_fails = true;
  double worst_margin = 1.0;
  std::string fails_at;
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const fbd::LimitMeasure lm = fbd::solve_q(alpha);
    const auto r = fbd::check_inequalities(lm, 20, 1e-10);
    at_root = at_root && r.all_pass;
    for (const auto& row : r.rows) {
      worst_margin = std::min({worst_margin, row.lower_margin, row.upper_margin});
    }
    const auto above = fbd::check_inequalities(alpha, 1.1 * lm.q, 30, 1e-10);
    above_fails = above_fails && above.first_failure.has_value();
    fails_at += fmt(" %g:k=%d", alpha, above.first_failure.value_or(-1));
  }
  report(9, at_root && above_fails, "inequality family",
         fmt("all pass at q for k<=20 (worst margin %.3g); at 1.1q first failure",
             worst_margin) + fails_at);
}

void criterion_series() {
  double worst = 0.0;
  for (int i = 1; i <= 12; ++i) {
    const double x = 0.25 * i;
    worst = std::max(worst, std::fabs(fbd::g_series(x, 60) - fbd::g_closed(x)));
  }
  // Central-difference residual of g' = 1 + x g at h and h/2.
  double worst_ratio_gap = 0.0;
  for (double x : {0.5, 1.0, 2.0}) {
    auto res = [x](double h) {
      const double d = (fbd::g_closed(x + h) - fbd::g_closed(x - h)) / (2.0 * h);
      return std::fabs(d - (1.0 + x * fbd::g_closed(x)));
    };
    worst_ratio_gap = std::max(worst_ratio_gap, std::fabs(res(1e-2) / res(5e-3) - 4.0));
  }
  report(10, worst <= 1e-12 && worst_ratio_gap <= 0.1, "series identities",
         fmt("max |g_series(x,60)-g_closed(x)|=%.3g on 0.25..3; ODE residual "
             "ratio r(h)/r(h/2) within %.3g of 4",
             worst, worst_ratio_gap));
}

void criterion_frw(const fbd::MassState& mu100) {
  const auto start = Clock::now();
  const fbd::AveragedProfile p = fbd::frw_average(100000, 0.5, 100, 50, 1, 1);
  const double elapsed = seconds_since(start);
  const double tv = fbd::total_variation(p, mu100);
  double se = 0.0;
  for (double s : p.standard_error) se += s;
  se *= 0.5;
  report(11, tv <= 0.02 && elapsed < 60.0, "FRW vs FBD total variation",
         fmt("TV=%.4g (threshold 0.02); half-sum of per-site MC standard errors "
             "%.3g; runtime %.2f s",
             tv, se, elapsed));
}

void criterion_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fbd_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = fbd::cli::run(args, out, err);
    return code == 0;
  };
  bool ok = true;
  const std::string d1 = (dir / "d1.csv").string();
  const std::string d2 = (dir / "d2.csv").string();
  ok = ok && run({"fbd", "--steps", "5000", "--out", d1, "--profile", d1 + ".p"});
  ok = ok && run({"fbd", "--steps", "5000", "--out", d2, "--profile", d2 + ".p"});
  const bool fbd_same =
      slurp(d1) == slurp(d2) && slurp(d1 + ".p") == slurp(d2 + ".p") && !slurp(d1).empty();
  bool frw_same = true;
  std::string reference;
  for (const char* jobs : {"1", "2", "4", "1"}) {
    const std::string out = (dir / (std::string("frw_") + jobs + ".csv")).string();
    ok = ok && run({"frw", "--n", "2000", "--steps", "200", "--trials", "8",
                    "--seed", "99", "--jobs", jobs, "--out", out});
    const std::string bytes = slurp(out) + slurp(fs::path(out).replace_extension(".json"));
    if (reference.empty()) reference = bytes;
    frw_same = frw_same && bytes == reference;
  }
  fs::remove_all(dir);
  report(12, ok && fbd_same && frw_same, "determinism",
         fmt("fbd reruns identical: %s; frw identical across --jobs 1,2,4: %s",
             fbd_same ? "yes" : "no", frw_same ? "yes" : "no"));
}

void criterion_2d() {
  const double alpha = 0.5;
  fbd::MassGrid2D g = fbd::MassGrid2D::delta(alpha);
  fbd::FrozenSplit2D split = fbd::freeze_split_2d(g);
  bool symmetric = true;
  double worst_mass = 0.0;
  double worst_m2 = 0.0;
  for (int s = 0; s < 1000; ++s) {
    g = fbd::heat_step_2d(split);
    split = fbd::freeze_split_2d(g);
    symmetric = symmetric && g.is_dihedral_symmetric();
    worst_mass = std::max(worst_mass, std::fabs(g.total_mass() - 1.0));
    const double t = static_cast<double>(g.time());
    worst_m2 = std::max(worst_m2,
                        std::fabs(g.radial_second_moment() - t * (1.0 - alpha)) / t);
  }
  std::ostringstream heat;
  fbd::write_grid_csv(heat, split.free, split.radius);
  const bool heatmap = !heat.str().empty();
  report(13, symmetric && worst_mass <= 1e-12 && worst_m2 <= 1e-8 && heatmap,
         "2D mass, symmetry, radial second moment",
         fmt("1000 steps: symmetric=%s max|mass-1|=%.3g max|M2-t/2|/t=%.3g "
             "heat map %zu bytes (window radius %lld)",
             symmetric ? "yes" : "no", worst_mass, worst_m2, heat.str().size(),
             static_cast<long long>(split.radius)));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_fixed_point();

  const fbd::LimitMeasure lm = fbd::solve_q(0.5);
  const EvolutionStats half = evolve(0.5, 100000, {100, 1000, 100000}, 10000);
  const EvolutionStats quarter = evolve(0.25, 100000, {100000}, 0);
  const EvolutionStats three = evolve(0.75, 100000, {100000}, 0);
  const std::vector<const EvolutionStats*> all{&quarter, &half, &three};

  {
    bool pass = true;
    std::string detail = "max |M2-t(1-alpha)|/t up to t=1e5:";
    for (const auto* s : all) {
      pass = pass && s->worst_m2 <= 1e-8;
      detail += fmt(" alpha=%g %.3g", s->alpha, s->worst_m2);
    }
    report(2, pass, "exact second moment", detail);
  }
  {
    bool pass = true;
    std::string detail = "sqrt(t(1-a))-1 < beta_t <= sqrt(t(1-a)/a) for t<=1e5:";
    for (const auto* s : all) {
      pass = pass && s->bounds_ok;
      detail += fmt(" alpha=%g %s", s->alpha, s->bounds_ok ? "ok" : "violated");
    }
    report(3, pass, "diffusive boundary bounds", detail);
  }
  {
    bool pass = true;
    std::string detail = "support within beta_t+1 and beta_t non-decreasing:";
    for (const auto* s : all) {
      pass = pass && s->support_ok;
      detail += fmt(" alpha=%g %s", s->alpha, s->support_ok ? "ok" : "violated");
    }
    report(4, pass, "two-point boundary support", detail);
  }
  {
    const auto& rows = half.trajectory.rows;  // t = 100, 1000, 100000
    const double dev3 = std::fabs(rows[1].beta_scaled - lm.q);
    const double dev5 = std::fabs(rows[2].beta_scaled - lm.q);
    report(5, dev5 <= 0.02 && dev5 < dev3, "boundary convergence",
           fmt("beta/sqrt(t)-q: t=1e3 %.4g, t=1e5 %.4g (beta=%lld)", dev3, dev5,
               static_cast<long long>(rows[2].beta)));
  }
  report(6, half.worst_change <= 1e-9, "moment-change identity",
         fmt("k=1,2,3 every step t<=1e4 at alpha=0.5: worst relative error %.3g",
             half.worst_change));
  {
    const double target = fbd::poly_P(2, lm.q, 0.5) + 0.5 * std::pow(lm.q, 4);
    const auto& rows = half.trajectory.rows;
    const double e3 = std::fabs(rows[1].m4 / 1e6 - target);
    const double e5 = std::fabs(rows[2].m4 / 1e10 - target);
    report(7, e5 <= 0.02 && e5 < e3, "scaled fourth moment",
           fmt("target %.12g; |M4/t^2-target|: t=1e3 %.3g, t=1e5 %.3g", target, e3,
               e5));
  }

  criterion_truncated_gaussian();
  criterion_inequalities();
  criterion_series();

  fbd::MassState mu100 = fbd::MassState::delta(0.5);
  for (int t = 0; t < 100; ++t) mu100 = fbd::heat_step(fbd::freeze_split(mu100));
  criterion_frw(mu100);
  criterion_determinism();
  criterion_2d();

  std::printf("%d/13 criteria passed in %.2f s\n", 13 - g_failures,
              seconds_since(start));
  return g_failures == 0 ? 0 : 1;
}
