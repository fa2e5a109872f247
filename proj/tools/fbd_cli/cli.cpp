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

#include "fbd_cli/cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>
#include <nlohmann/json.hpp>

#include "fbd/engine.hpp"
#include "fbd/errors.hpp"
#include "fbd/frw.hpp"
#include "fbd/grid2d.hpp"
#include "fbd/io.hpp"
#include "fbd/limit_measure.hpp"
#include "fbd/schedule.hpp"
#include "fbd_cli/checks.hpp"

#ifndef FBD_VERSION
#define FBD_VERSION "unknown"
#endif

namespace fbd::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FbdConfig {
  double alpha = 0.5;
  std::int64_t steps = 25000;
  std::string schedule = "geometric";
  std::string out = "-";
  std::string profile;
  std::string format = "csv";
};

struct SolveConfig {
  std::vector<double> alphas;
  double tol = 1e-13;
  int check_k = 10;
  std::string format = "text";
};

struct FrwConfig {
  std::int64_t n = 10000;
  double alpha = 0.5;
  std::int64_t steps = 25000;
  std::int64_t trials = 15;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out = "frw_profile.csv";
  std::string meta;
};

struct CheckConfig {
  std::vector<double> alphas;
  bool alpha_grid = false;
  std::int64_t steps = 10000;
  int check_k = 20;
  bool inject_fault = false;
};

struct Grid2dConfig {
  double alpha = 0.5;
  std::int64_t steps = 1000;
  std::string heatmap;
  std::string pgm;
  std::string slice;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("fbd", sink);
  log->set_pattern("[%l] %v");
  const char* level = std::getenv("FBD_LOG");
  log->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
  return log;
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("--alpha must lie strictly between 0 and 1, got " +
                     format_real(alpha));
  }
}

// "-" writes to `out`; anything else replaces the file.
void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << content;
}

json row_to_json(const DiagnosticsRow& r, double levy) {
  return json{{"t", r.t},
              {"beta", r.beta},
              {"beta_scaled", r.beta_scaled},
              {"m2", r.m2},
              {"m4", r.m4},
              {"m6", r.m6},
              {"m2_residual", r.m2_residual},
              {"mass_residual", r.mass_residual},
              {"frozen_mass", r.frozen_mass},
              {"levy_distance", std::isnan(levy) ? json(nullptr) : json(levy)}};
}

int cmd_fbd(const FbdConfig& cfg, std::ostream& out, spdlog::logger& log) {
  require_alpha(cfg.alpha);
  if (cfg.steps < 1) throw UsageError("--steps must be >= 1");
  if (cfg.format != "csv" && cfg.format != "json") {
    throw UsageError("--format must be csv or json");
  }
  std::vector<std::int64_t> schedule;
  try {
    schedule = parse_schedule(cfg.schedule, cfg.steps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const LimitMeasure lm = solve_q(cfg.alpha);
  log.info("alpha={} q={} steps={}", cfg.alpha, lm.q, cfg.steps);

  std::map<std::int64_t, double> levy_at;
  std::size_t next = 0;
  while (next < schedule.size() && schedule[next] < 1) ++next;
  RunOptions options;
  options.observer = [&](const FrozenSplit&, const MassState&,
                         const MassState& after) {
    if (next < schedule.size() && schedule[next] == after.time()) {
      levy_at[after.time()] = levy_distance(after, lm);
      ++next;
    }
  };
  const Trajectory traj = run_fbd(cfg.alpha, cfg.steps, schedule, options);

  std::vector<double> levy;
  for (const auto& row : traj.rows) {
    const auto it = levy_at.find(row.t);
    levy.push_back(it == levy_at.end() ? std::nan("") : it->second);
  }

  std::ostringstream body;
  if (cfg.format == "csv") {
    write_diagnostics_csv(body, traj.rows, levy);
  } else {
    json doc{{"alpha", cfg.alpha}, {"steps", cfg.steps}, {"q", lm.q}};
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < traj.rows.size(); ++i) {
      doc["rows"].push_back(row_to_json(traj.rows[i], levy[i]));
    }
    body << doc.dump(2) << '\n';
  }
  std::string profile;
  if (!cfg.profile.empty()) {
    std::ostringstream os;
    write_mass_profile_csv(os, traj.final_state);
    profile = os.str();
  }
  emit(cfg.out, body.str(), out);
  if (!cfg.profile.empty()) emit(cfg.profile, profile, out);
  return kSuccess;
}

int cmd_solve_q(const SolveConfig& cfg, std::ostream& out) {
  std::vector<double> alphas = cfg.alphas;
  if (alphas.empty()) alphas.push_back(0.5);
  for (double a : alphas) require_alpha(a);
  if (cfg.check_k < 0 || cfg.check_k > kMaxPolyOrder) {
    throw UsageError("--check-k must lie in [0, 30]");
  }
  if (!(cfg.tol >= 1e-14)) throw UsageError("--tol must be >= 1e-14");
  if (cfg.format != "text" && cfg.format != "json") {
    throw UsageError("--format must be text or json");
  }

  json doc = json::array();
  std::ostringstream text;
  bool all_pass = true;
  for (double a : alphas) {
    const LimitMeasure lm = solve_q(a, cfg.tol);
    const auto report = check_inequalities(lm, cfg.check_k);
    all_pass = all_pass && report.all_pass;
    json rows = json::array();
    if (&a != &alphas.front()) text << '\n';
    text << "alpha " << format_real(a) << '\n'
         << "q " << format_real(lm.q) << '\n'
         << "key_residual " << format_real(key_residual(lm)) << '\n'
         << "gaussian_form_residual " << format_real(gaussian_form_residual(lm))
         << '\n'
         << "k,p_tilde,lower_margin,upper_margin,pass\n";
    for (const auto& row : report.rows) {
      if (row.k == 0) continue;
      text << row.k << ',' << format_real(row.p_tilde) << ','
           << format_real(row.lower_margin) << ','
           << format_real(row.upper_margin) << ','
           << (row.pass ? "pass" : "FAIL") << '\n';
      rows.push_back(json{{"k", row.k},
                          {"p_tilde", row.p_tilde},
                          {"lower_margin", row.lower_margin},
                          {"upper_margin", row.upper_margin},
                          {"pass", row.pass}});
    }
    doc.push_back(json{{"alpha", a},
                       {"q", lm.q},
                       {"key_residual", key_residual(lm)},
                       {"gaussian_form_residual", gaussian_form_residual(lm)},
                       {"inequalities", rows}});
  }
  if (cfg.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    out << text.str();
  }
  return all_pass ? kSuccess : kInvariantViolation;
}

int cmd_frw(const FrwConfig& cfg, std::ostream& out, spdlog::logger& log) {
  require_alpha(cfg.alpha);
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.steps < 0) throw UsageError("--steps must be >= 0");
  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  if (cfg.jobs < 1) throw UsageError("--jobs must be >= 1");

  std::string meta_path = cfg.meta;
  if (meta_path.empty()) {
    if (cfg.out == "-") throw UsageError("--meta is required when --out is -");
    meta_path = std::filesystem::path(cfg.out).replace_extension(".json").string();
  }

  log.info("frw n={} alpha={} steps={} trials={} seed={} jobs={}", cfg.n,
           cfg.alpha, cfg.steps, cfg.trials, cfg.seed, cfg.jobs);
  const auto profile =
      frw_average(cfg.n, cfg.alpha, cfg.steps, cfg.trials, cfg.seed, cfg.jobs);

  std::ostringstream csv;
  write_fraction_csv(csv, profile);

  json seeds = json::array();
  for (std::int64_t i = 0; i < cfg.trials; ++i) {
    seeds.push_back(trial_seed(cfg.seed, static_cast<std::uint64_t>(i)));
  }
  const json meta{
      {"command", "frw"},
      {"version", FBD_VERSION},
      {"n", cfg.n},
      {"alpha", cfg.alpha},
      {"steps", cfg.steps},
      {"trials", cfg.trials},
      {"master_seed", cfg.seed},
      {"rng", "std::mt19937_64"},
      {"seed_derivation",
       "splitmix64 output for state master_seed + trial * 0x9e3779b97f4a7c15"},
      {"trial_seeds", seeds},
      {"frozen_per_side", frozen_per_side(cfg.n, cfg.alpha)},
  };
  emit(cfg.out, csv.str(), out);
  emit(meta_path, meta.dump(2) + "\n", out);
  return kSuccess;
}

int cmd_check(const CheckConfig& cfg, std::ostream& out) {
  std::vector<double> alphas = cfg.alphas;
  if (cfg.alpha_grid) {
    for (int i = 1; i <= 9; ++i) alphas.push_back(0.1 * i);
  }
  if (alphas.empty()) alphas.push_back(0.5);
  for (double a : alphas) require_alpha(a);
  if (cfg.steps < 1) throw UsageError("--steps must be >= 1");
  if (cfg.check_k < 0 || cfg.check_k > kMaxPolyOrder) {
    throw UsageError("--check-k must lie in [0, 30]");
  }

  CheckOptions options;
  options.steps = cfg.steps;
  options.max_k = cfg.check_k;
  if (cfg.inject_fault) {
    options.fault = FaultInjection{std::max<std::int64_t>(1, cfg.steps / 2), 0,
                                   1e-6};
  }

  std::vector<CheckResult> results;
  for (double a : alphas) {
    auto evo = run_evolution_checks(a, options);
    auto ana = run_analysis_checks(a, cfg.check_k);
    results.insert(results.end(), evo.begin(), evo.end());
    results.insert(results.end(), ana.begin(), ana.end());
  }

  std::size_t failed = 0;
  for (const auto& r : results) {
    out << std::left << std::setw(6) << (r.pass ? "PASS" : "FAIL")
        << " alpha=" << std::setw(5) << format_real(r.alpha) << "  "
        << std::setw(44) << r.name << r.detail << '\n';
    if (!r.pass) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kSuccess : kInvariantViolation;
}

int cmd_fbd2d(const Grid2dConfig& cfg, std::ostream& out, spdlog::logger& log) {
  require_alpha(cfg.alpha);
  if (cfg.steps < 1) throw UsageError("--steps must be >= 1");

  MassGrid2D grid = MassGrid2D::delta(cfg.alpha);
  FrozenSplit2D split = freeze_split_2d(grid);
  bool symmetric = true;
  double worst_mass_step = 0.0;
  double worst_m2 = 0.0;
  for (std::int64_t s = 0; s < cfg.steps; ++s) {
    MassGrid2D next = heat_step_2d(split);
    worst_mass_step =
        std::max(worst_mass_step, std::fabs(next.total_mass() - grid.total_mass()));
    const double t = static_cast<double>(next.time());
    worst_m2 = std::max(worst_m2, std::fabs(next.radial_second_moment() -
                                            t * (1.0 - cfg.alpha)) / t);
    symmetric = symmetric && next.is_dihedral_symmetric();
    grid = std::move(next);
    split = freeze_split_2d(grid);
  }
  log.info("fbd2d finished at t={} radius={}", grid.time(), grid.radius());

  const bool mass_ok = std::fabs(grid.total_mass() - 1.0) <=
                       1e-10 * (static_cast<double>(grid.time()) + 1.0);
  const bool m2_ok = worst_m2 <= 1e-8;
  out << "t " << grid.time() << '\n'
      << "radius " << grid.radius() << '\n'
      << "threshold_radius " << format_real(std::sqrt(double(split.threshold_r2)))
      << '\n'
      << "mass_residual " << format_real(grid.total_mass() - 1.0) << '\n'
      << "worst_mass_change_per_step " << format_real(worst_mass_step) << '\n'
      << "worst_m2_relative_residual " << format_real(worst_m2) << '\n'
      << "dihedral_symmetric " << (symmetric ? "yes" : "no") << '\n';

  if (!cfg.heatmap.empty()) {
    std::ostringstream os;
    write_grid_csv(os, split.free, split.radius);
    emit(cfg.heatmap, os.str(), out);
  }
  if (!cfg.pgm.empty()) {
    std::ostringstream os;
    write_pgm(os, split.free, split.radius);
    emit(cfg.pgm, os.str(), out);
  }
  if (!cfg.slice.empty()) {
    std::ostringstream os;
    os << "y,free_mass\n";
    const auto column = column_slice(split.free, split.radius);
    for (std::size_t i = 0; i < column.size(); ++i) {
      os << static_cast<std::int64_t>(i) - split.radius << ','
         << format_real(column[i]) << '\n';
    }
    emit(cfg.slice, os.str(), out);
  }
  return mass_ok && m2_ok && symmetric ? kSuccess : kInvariantViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Frozen-boundary diffusion and frozen random walk toolkit", "fbd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FBD_VERSION);

  FbdConfig fbd_cfg;
  auto* fbd = app.add_subcommand("fbd", "Evolve FBD-alpha from delta(0) and write diagnostics");
  fbd->add_option("--alpha", fbd_cfg.alpha, "Frozen fraction in (0,1)");
  fbd->add_option("--steps", fbd_cfg.steps, "Number of steps");
  fbd->add_option("--schedule", fbd_cfg.schedule,
                  "Sample times: geometric | linear:<k> | explicit:<t1,t2,...>");
  fbd->add_option("--out", fbd_cfg.out, "Diagnostics output path ('-' for stdout)");
  fbd->add_option("--profile", fbd_cfg.profile, "Write the final site,mass profile here");
  fbd->add_option("--format", fbd_cfg.format, "csv or json");

  SolveConfig solve_cfg;
  auto* solve = app.add_subcommand("solve-q", "Solve for q_alpha and check the inequality family");
  solve->add_option("--alpha", solve_cfg.alphas, "Frozen fraction; repeatable");
  solve->add_option("--tol", solve_cfg.tol, "Residual tolerance (>= 1e-14)");
  solve->add_option("--check-k", solve_cfg.check_k, "Check inequalities for k = 1..K");
  solve->add_option("--format", solve_cfg.format, "text or json");

  FrwConfig frw_cfg;
  auto* frw = app.add_subcommand("frw", "Average frozen random walk profiles over trials");
  frw->add_option("--n", frw_cfg.n, "Particles per trial");
  frw->add_option("--alpha", frw_cfg.alpha, "Frozen fraction in (0,1)");
  frw->add_option("--steps", frw_cfg.steps, "Number of steps");
  frw->add_option("--trials", frw_cfg.trials, "Independent trials");
  frw->add_option("--seed", frw_cfg.seed, "Master seed");
  frw->add_option("--jobs", frw_cfg.jobs, "Worker threads (output does not depend on it)");
  frw->add_option("--out", frw_cfg.out, "Profile CSV path ('-' for stdout)");
  frw->add_option("--meta", frw_cfg.meta, "Metadata JSON path (default: --out with .json)");

  CheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("--alpha", check_cfg.alphas, "Frozen fraction; repeatable");
  check->add_flag("--alpha-grid", check_cfg.alpha_grid, "Also check alpha = 0.1, 0.2, ..., 0.9");
  check->add_option("--steps", check_cfg.steps, "Evolution length");
  check->add_option("--check-k", check_cfg.check_k, "Largest k for the inequality family");
  check->add_flag("--inject-fault", check_cfg.inject_fault)->group("");

  Grid2dConfig grid_cfg;
  auto* grid = app.add_subcommand("fbd2d", "Experimental two-dimensional analogue");
  grid->add_option("--alpha", grid_cfg.alpha, "Frozen fraction in (0,1)");
  grid->add_option("--steps", grid_cfg.steps, "Number of steps");
  grid->add_option("--heatmap", grid_cfg.heatmap, "Free-mass CSV matrix path");
  grid->add_option("--pgm", grid_cfg.pgm, "Free-mass portable graymap path");
  grid->add_option("--slice", grid_cfg.slice, "Free mass along x = 0 (CSV) path");

  std::vector<const char*> argv{"fbd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto log = make_logger(err);
  try {
    if (*fbd) return cmd_fbd(fbd_cfg, out, *log);
    if (*solve) return cmd_solve_q(solve_cfg, out);
    if (*frw) return cmd_frw(frw_cfg, out, *log);
    if (*check) return cmd_check(check_cfg, out);
    if (*grid) return cmd_fbd2d(grid_cfg, out, *log);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidState& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const ConvergenceError& e) {
    err << "solver did not converge: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace fbd::cli
