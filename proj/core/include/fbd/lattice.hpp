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

#ifndef FBD_LATTICE_HPP_
#define FBD_LATTICE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace fbd {

/// Slack used when comparing a right-tail sum against alpha/2. Tail sums
/// equal alpha/2 exactly far more often than one would guess, and the
/// supremum in the boundary definition assumes exact reals.
inline constexpr double kTieTolerance = 1e-14;

/// Symmetric probability distribution on Z at integer time t.
///
/// Only the nonnegative half is stored: half()[x] is the mass at +x and at
/// -x, with site 0 stored once carrying its full mass. Trailing zeros are
/// trimmed on construction so that max_site() == half().size() - 1 unless
/// the state is identically zero.
class MassState {
 public:
  /// All mass at the origin, t = 0.
  static MassState delta(double alpha);

  /// Throws InvalidState on negative or non-finite entries, DomainError if
  /// alpha is outside (0,1) or t < 0.
  MassState(double alpha, std::int64_t t, std::vector<double> half);

  double alpha() const { return alpha_; }
  std::int64_t time() const { return t_; }
  std::span<const double> half() const { return half_; }
  std::int64_t max_site() const;

  /// Mass at signed site x.
  double at(std::int64_t x) const;

  /// half[0] + 2 * sum_{x>=1} half[x], compensated.
  double total_mass() const;

  /// Copy with `delta` added to the mass at |site|. Used for negative
  /// controls in the invariant checker; may produce an invalid state.
  MassState perturbed(std::int64_t site, double delta) const;

 private:
  double alpha_;
  std::int64_t t_;
  std::vector<double> half_;
};

/// Free/frozen decomposition of a MassState, both stored as half-arrays of
/// the same length as the source state.
struct FrozenSplit {
  double alpha = 0.0;
  std::int64_t t = 0;
  std::int64_t beta = 0;
  std::vector<double> free;
  std::vector<double> frozen;

  double free_total() const;
  double frozen_total() const;
};

/// Total mass of a symmetric half-array.
double half_array_total(std::span<const double> half);

/// Largest x with mu([x, inf)) >= alpha/2 (up to kTieTolerance).
std::int64_t boundary(const MassState& state);

/// Freezes the outermost alpha/2 mass on each side. When the boundary sits
/// at the origin the two quotas add there, so the frozen total is alpha in
/// every case. Throws InvalidState if mass lies at or beyond beta + 2 or a
/// frozen quota comes out negative.
FrozenSplit freeze_split(const MassState& state);

/// One discrete heat step of the free mass; frozen mass stays put.
MassState heat_step(const FrozenSplit& split);

}  // namespace fbd

#endif  // FBD_LATTICE_HPP_
