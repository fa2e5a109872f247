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

#include "fbd/frw.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <optional>
#include <cmath>
#include <string>
#include <thread>

#include "fbd/compensated_sum.hpp"
#include "fbd/errors.hpp"

namespace fbd {

namespace {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Binomial(count, 1/2) as the popcount of `count` fair bits.
std::uint64_t fair_binomial(std::uint64_t count, std::mt19937_64& rng) {
  std::uint64_t heads = 0;
  while (count >= 64) {
    heads += static_cast<std::uint64_t>(std::popcount(rng()));
    count -= 64;
  }
  if (count > 0) {
    const std::uint64_t mask = (std::uint64_t{1} << count) - 1;
    heads += static_cast<std::uint64_t>(std::popcount(rng() & mask));
  }
  return heads;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  std::uint64_t state = master_seed + trial * 0x9e3779b97f4a7c15ULL;
  return splitmix64_next(state);
}

std::int64_t frozen_per_side(std::int64_t n, double alpha) {
  // The epsilon keeps products such as 20 * 0.3 / 2 from flooring to 2.
  const double exact = static_cast<double>(n) * alpha / 2.0;
  return static_cast<std::int64_t>(std::floor(exact * (1.0 + 1e-12)));
}

ParticleEnsemble::ParticleEnsemble(std::int64_t n, double alpha,
                                   std::uint64_t seed)
    : n_(n), alpha_(alpha), seed_(seed), rng_(seed) {
  if (n < 1) throw DomainError("particle count must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  frozen_ = fbd::frozen_per_side(n, alpha);
  counts_.assign(1, static_cast<std::uint64_t>(n));
}

std::int64_t ParticleEnsemble::max_site() const {
  return static_cast<std::int64_t>(counts_.size()) - 1 - origin_;
}

std::uint64_t ParticleEnsemble::count_at(std::int64_t site) const {
  const std::int64_t i = site + origin_;
  if (i < 0 || i >= static_cast<std::int64_t>(counts_.size())) return 0;
  return counts_[static_cast<std::size_t>(i)];
}

std::uint64_t ParticleEnsemble::size() const {
  std::uint64_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

std::vector<std::int64_t> ParticleEnsemble::positions() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto site = static_cast<std::int64_t>(i) - origin_;
    out.insert(out.end(), counts_[i], site);
  }
  return out;
}

double ParticleEnsemble::empirical_moment(int k) const {
  CompensatedSum sum;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const auto x = static_cast<double>(static_cast<std::int64_t>(i) - origin_);
    sum.add(static_cast<double>(counts_[i]) * std::pow(x, k));
  }
  return sum.value() / static_cast<double>(n_);
}

std::int64_t ParticleEnsemble::upper_boundary() const {
  const std::uint64_t k = std::max<std::int64_t>(frozen_, 1);
  std::uint64_t seen = 0;
  for (std::size_t i = counts_.size(); i-- > 0;) {
    seen += counts_[i];
    if (seen >= k) return static_cast<std::int64_t>(i) - origin_;
  }
  return min_site();
}

void ParticleEnsemble::step() {
  const std::size_t width = counts_.size();
  const auto quota = static_cast<std::uint64_t>(frozen_);

  // Frozen counts per site: the `quota` leftmost particles, then the
  // `quota` rightmost among those not already frozen. quota <= n/2 so the
  // two sets never compete for the same particle.
  std::vector<std::uint64_t> frozen(width, 0);
  std::uint64_t remaining = quota;
  for (std::size_t i = 0; i < width && remaining > 0; ++i) {
    const auto take = std::min(counts_[i], remaining);
    frozen[i] = take;
    remaining -= take;
  }
  remaining = quota;
  for (std::size_t i = width; i-- > 0 && remaining > 0;) {
    const auto take = std::min(counts_[i] - frozen[i], remaining);
    frozen[i] += take;
    remaining -= take;
  }

  // Shift everything one slot right so site s-1 of the old window fits.
  scratch_.assign(width + 2, 0);
  for (std::size_t i = 0; i < width; ++i) {
    const std::uint64_t free = counts_[i] - frozen[i];
    const std::uint64_t right = fair_binomial(free, rng_);
    scratch_[i + 1] += frozen[i];
    scratch_[i + 2] += right;
    scratch_[i] += free - right;
  }
  std::size_t first = 0;
  while (scratch_[first] == 0) ++first;
  std::size_t last = scratch_.size() - 1;
  while (scratch_[last] == 0) --last;

  counts_.assign(scratch_.begin() + static_cast<std::ptrdiff_t>(first),
                 scratch_.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  origin_ = origin_ + 1 - static_cast<std::int64_t>(first);
  ++t_;
}

ParticleEnsemble frw_step(ParticleEnsemble ens) {
  ens.step();
  return ens;
}

ParticleEnsemble frw_run(std::int64_t n, double alpha, std::int64_t steps,
                         std::uint64_t seed) {
  if (steps < 0) throw DomainError("steps must be nonnegative");
  ParticleEnsemble ens(n, alpha, seed);
  for (std::int64_t s = 0; s < steps; ++s) ens.step();
  return ens;
}

double AveragedProfile::at(std::int64_t site) const {
  const std::int64_t i = site - min_site;
  if (i < 0 || i >= static_cast<std::int64_t>(fraction.size())) return 0.0;
  return fraction[static_cast<std::size_t>(i)];
}

double AveragedProfile::standard_error_at(std::int64_t site) const {
  const std::int64_t i = site - min_site;
  if (i < 0 || i >= static_cast<std::int64_t>(standard_error.size())) {
    return 0.0;
  }
  return standard_error[static_cast<std::size_t>(i)];
}

AveragedProfile frw_average(std::int64_t n, double alpha, std::int64_t steps,
                            std::int64_t trials, std::uint64_t master_seed,
                            unsigned jobs) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (steps < 0) throw DomainError("steps must be nonnegative");

  std::vector<std::optional<ParticleEnsemble>> results(
      static_cast<std::size_t>(trials));
  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (std::int64_t i = next++; i < trials; i = next++) {
      results[static_cast<std::size_t>(i)] =
          frw_run(n, alpha, steps,
                  trial_seed(master_seed, static_cast<std::uint64_t>(i)));
    }
  };
  const unsigned threads =
      std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < threads; ++j) pool.emplace_back(worker);
  }

  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (const auto& r : results) {
    lo = std::min(lo, r->min_site());
    hi = std::max(hi, r->max_site());
  }

  AveragedProfile profile;
  profile.n = n;
  profile.alpha = alpha;
  profile.t = steps;
  profile.trials = trials;
  profile.master_seed = master_seed;
  profile.min_site = lo;
  const auto width = static_cast<std::size_t>(hi - lo + 1);
  profile.fraction.assign(width, 0.0);
  profile.standard_error.assign(width, 0.0);

  const double dn = static_cast<double>(n);
  const double dt = static_cast<double>(trials);
  for (std::size_t i = 0; i < width; ++i) {
    const std::int64_t site = lo + static_cast<std::int64_t>(i);
    std::uint64_t total = 0;
    for (const auto& r : results) total += r->count_at(site);
    const double mean = static_cast<double>(total) / (dn * dt);
    double squares = 0.0;
    for (const auto& r : results) {
      const double d = static_cast<double>(r->count_at(site)) / dn - mean;
      squares += d * d;
    }
    profile.fraction[i] = mean;
    profile.standard_error[i] =
        trials > 1 ? std::sqrt(squares / (dt - 1.0) / dt) : 0.0;
  }
  return profile;
}

double total_variation(const AveragedProfile& profile, const MassState& state) {
  const std::int64_t reach =
      std::max({state.max_site(), -profile.min_site, profile.max_site()});
  CompensatedSum sum;
  for (std::int64_t x = -reach; x <= reach; ++x) {
    sum.add(std::fabs(profile.at(x) - state.at(x)));
  }
  return 0.5 * sum.value();
}

}  // namespace fbd
