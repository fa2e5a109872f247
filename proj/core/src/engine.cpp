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

#include "fbd/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "fbd/compensated_sum.hpp"
#include "fbd/errors.hpp"

namespace fbd {

double half_array_moment(std::span<const double> half, int k) {
  if (k < 0 || k > kMaxMomentOrder || k % 2 != 0) {
    throw DomainError("moment order must be even and in [0, " +
                      std::to_string(kMaxMomentOrder) + "], got " +
                      std::to_string(k));
  }
  if (k == 0) return half_array_total(half);
  // Outside in, so the large x^k terms are summed first.
  CompensatedSum sum;
  for (std::size_t x = half.size(); x-- > 1;) {
    sum.add(half[x] * std::pow(static_cast<double>(x), k));
  }
  return 2.0 * sum.value();
}

double moment(const MassState& state, int k) {
  return half_array_moment(state.half(), k);
}

double free_moment(const FrozenSplit& split, int k) {
  return half_array_moment(split.free, k);
}

double frozen_moment(const FrozenSplit& split, int k) {
  return half_array_moment(split.frozen, k);
}

DiagnosticsRow diagnose(const MassState& state, const FrozenSplit& split) {
  DiagnosticsRow row;
  const double alpha = state.alpha();
  row.t = state.time();
  row.beta = split.beta;
  row.beta_scaled =
      row.t > 0 ? static_cast<double>(row.beta) / std::sqrt(double(row.t))
                : 0.0;
  row.m2 = moment(state, 2);
  row.m4 = moment(state, 4);
  row.m6 = moment(state, 6);
  row.m2_residual = row.m2 - static_cast<double>(row.t) * (1.0 - alpha);
  row.mass_residual = state.total_mass() - 1.0;
  row.frozen_mass = split.frozen_total();
  return row;
}

std::vector<std::string> row_violations(const DiagnosticsRow& row,
                                        double alpha) {
  std::vector<std::string> out;
  const double t = static_cast<double>(row.t);
  auto fail = [&](const std::string& what, double value, double limit) {
    std::ostringstream os;
    os.precision(17);
    os << "t=" << row.t << ": " << what << " (value " << value << ", limit "
       << limit << ")";
    out.push_back(os.str());
  };

  const double m2_limit = 1e-10 * std::max(1.0, t);
  if (!(std::fabs(row.m2_residual) <= m2_limit)) {
    fail("second moment differs from t(1-alpha)", row.m2_residual, m2_limit);
  }
  const double mass_limit = 1e-12 * (t + 1.0);
  if (!(std::fabs(row.mass_residual) <= mass_limit)) {
    fail("total mass differs from 1", row.mass_residual, mass_limit);
  }
  if (row.t >= 1) {
    // alpha beta^2 <= t(1-alpha) < (beta+1)^2, compared in squared form.
    const double b = static_cast<double>(row.beta);
    const double rhs = t * (1.0 - alpha);
    if (!(alpha * b * b <= rhs * (1.0 + 1e-12))) {
      fail("boundary above sqrt(t(1-alpha)/alpha)", b,
           std::sqrt(rhs / alpha));
    }
    if (!((b + 1.0) * (b + 1.0) > rhs)) {
      fail("boundary not above sqrt(t(1-alpha)) - 1", b, std::sqrt(rhs) - 1.0);
    }
  }
  return out;
}

Trajectory run_fbd(double alpha, std::int64_t steps,
                   std::span<const std::int64_t> schedule,
                   const RunOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  if (steps < 1) throw DomainError("steps must be >= 1");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 0 || schedule[i] > steps ||
        (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw DomainError(
          "sample schedule must be strictly increasing within [0, steps]");
    }
  }

  Trajectory traj;
  traj.alpha = alpha;
  traj.rows.reserve(schedule.size());

  auto next_sample = schedule.begin();
  auto next_snapshot = options.snapshot_times.begin();
  MassState state = MassState::delta(alpha);

  for (std::int64_t t = 0;; ++t) {
    FrozenSplit split = freeze_split(state);

    if (next_sample != schedule.end() && *next_sample == t) {
      auto row = diagnose(state, split);
      if (options.validate_rows) {
        const auto bad = row_violations(row, alpha);
        if (!bad.empty()) throw InvalidState(bad.front());
      }
      traj.rows.push_back(row);
      ++next_sample;
    }
    while (next_snapshot != options.snapshot_times.end() &&
           *next_snapshot <= t) {
      if (*next_snapshot == t) traj.snapshots.push_back({t, state});
      ++next_snapshot;
    }
    if (t == steps) break;

    MassState next = heat_step(split);
    if (options.fault && options.fault->step == t + 1) {
      next = next.perturbed(options.fault->site, options.fault->delta);
    }
    if (options.observer) options.observer(split, state, next);
    state = std::move(next);
  }

  traj.final_state = std::move(state);
  return traj;
}

}  // namespace fbd
