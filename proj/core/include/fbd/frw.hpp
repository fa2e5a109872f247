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

#ifndef FBD_FRW_HPP_
#define FBD_FRW_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fbd/lattice.hpp"

namespace fbd {

/// Seed for trial `trial` of a batch: the trial-th output of a SplitMix64
/// stream started at `master_seed`. Trials can therefore be run in any
/// order or on any number of threads with identical results.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// floor(n alpha / 2), the number of particles frozen on each side.
std::int64_t frozen_per_side(std::int64_t n, double alpha);

/// n indistinguishable walkers on Z stored as a position -> count map over
/// the occupied window [min_site(), max_site()].
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the
/// standard, so seeded runs reproduce across platforms.
class ParticleEnsemble {
 public:
  /// n particles at the origin, t = 0.
  ParticleEnsemble(std::int64_t n, double alpha, std::uint64_t seed);

  std::int64_t n() const { return n_; }
  double alpha() const { return alpha_; }
  std::int64_t time() const { return t_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t frozen_per_side() const { return frozen_; }

  std::int64_t min_site() const { return -origin_; }
  std::int64_t max_site() const;
  std::uint64_t count_at(std::int64_t site) const;
  std::uint64_t size() const;  // always n

  /// Counts over [min_site(), max_site()].
  std::span<const std::uint64_t> counts() const { return counts_; }

  /// Sorted particle positions (the multiset, expanded).
  std::vector<std::int64_t> positions() const;

  /// sum_particles x^k / n.
  double empirical_moment(int k) const;

  /// Position of the k-th largest particle, k = frozen_per_side() (the
  /// largest particle when no particle freezes).
  std::int64_t upper_boundary() const;

  /// One step: the frozen_per_side() leftmost and rightmost particles stay,
  /// every other particle moves +-1 with probability 1/2.
  void step();

 private:
  std::int64_t n_;
  double alpha_;
  std::int64_t t_ = 0;
  std::uint64_t seed_;
  std::int64_t frozen_;
  std::mt19937_64 rng_;
  std::int64_t origin_ = 0;  // counts_[origin_] is site 0
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> scratch_;
};

/// Functional form of ParticleEnsemble::step.
ParticleEnsemble frw_step(ParticleEnsemble ens);

ParticleEnsemble frw_run(std::int64_t n, double alpha, std::int64_t steps,
                         std::uint64_t seed);

/// Per-site particle fraction averaged over independent trials.
struct AveragedProfile {
  std::int64_t n = 0;
  double alpha = 0.0;
  std::int64_t t = 0;
  std::int64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::int64_t min_site = 0;
  std::vector<double> fraction;        // fraction[i] is site min_site + i
  std::vector<double> standard_error;  // Monte Carlo SE of each fraction

  std::int64_t max_site() const {
    return min_site + static_cast<std::int64_t>(fraction.size()) - 1;
  }
  double at(std::int64_t site) const;
  double standard_error_at(std::int64_t site) const;
};

/// Runs `trials` simulations seeded by trial_seed(master_seed, i) on up to
/// `jobs` threads and averages their profiles. The reduction runs in trial
/// order after all trials finish, so the result does not depend on `jobs`.
AveragedProfile frw_average(std::int64_t n, double alpha, std::int64_t steps,
                            std::int64_t trials, std::uint64_t master_seed,
                            unsigned jobs = 1);

/// (1/2) sum_x |profile(x) - state(x)|.
double total_variation(const AveragedProfile& profile, const MassState& state);

}  // namespace fbd

#endif  // FBD_FRW_HPP_
