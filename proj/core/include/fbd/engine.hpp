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

#ifndef FBD_ENGINE_HPP_
#define FBD_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fbd/lattice.hpp"

namespace fbd {

/// Largest even moment order accepted by moment() and free_moment().
inline constexpr int kMaxMomentOrder = 12;

/// sum_x mass(x) * x^k over a symmetric half-array. k must be even and in
/// [0, kMaxMomentOrder]; odd moments vanish by symmetry and are rejected
/// with DomainError.
double half_array_moment(std::span<const double> half, int k);

double moment(const MassState& state, int k);
double free_moment(const FrozenSplit& split, int k);
double frozen_moment(const FrozenSplit& split, int k);

struct DiagnosticsRow {
  std::int64_t t = 0;
  std::int64_t beta = 0;
  double beta_scaled = 0.0;  // beta / sqrt(t), 0 at t = 0
  double m2 = 0.0;
  double m4 = 0.0;
  double m6 = 0.0;
  double m2_residual = 0.0;    // m2 - t (1 - alpha)
  double mass_residual = 0.0;  // total mass - 1
  double frozen_mass = 0.0;
};

DiagnosticsRow diagnose(const MassState& state, const FrozenSplit& split);

/// Human-readable descriptions of every row invariant that fails; empty
/// when the row is clean.
std::vector<std::string> row_violations(const DiagnosticsRow& row,
                                        double alpha);

struct Snapshot {
  std::int64_t t = 0;
  MassState state;
};

struct Trajectory {
  double alpha = 0.0;
  std::vector<DiagnosticsRow> rows;
  MassState final_state = MassState::delta(0.5);
  std::vector<Snapshot> snapshots;
};

/// Called once per step with the split of the time-t state, the state
/// itself and the resulting time-(t+1) state.
using StepObserver = std::function<void(
    const FrozenSplit& split, const MassState& before, const MassState& after)>;

/// Adds `delta` to the mass at `site` right after step `step` is produced.
struct FaultInjection {
  std::int64_t step = 1;
  std::int64_t site = 0;
  double delta = 1e-6;
};

struct RunOptions {
  std::vector<std::int64_t> snapshot_times;
  StepObserver observer;
  std::optional<FaultInjection> fault;
  // Throw InvalidState when a sampled row breaks its invariants.
  bool validate_rows = true;
};

/// Evolves delta(0) for `steps` steps, sampling diagnostics at the times in
/// `schedule` (strictly increasing, each in [0, steps]).
Trajectory run_fbd(double alpha, std::int64_t steps,
                   std::span<const std::int64_t> schedule,
                   const RunOptions& options = {});

}  // namespace fbd

#endif  // FBD_ENGINE_HPP_
