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

#include "fbd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fbd/compensated_sum.hpp"
#include "fbd/errors.hpp"

namespace fbd {

namespace {

// Negative entries smaller than this are treated as rounding residue.
constexpr double kNegativeSlack = 1e-12;

void trim_trailing_zeros(std::vector<double>& half) {
  while (half.size() > 1 && half.back() == 0.0) half.pop_back();
}

}  // namespace

MassState MassState::delta(double alpha) { return MassState(alpha, 0, {1.0}); }

MassState::MassState(double alpha, std::int64_t t, std::vector<double> half)
    : alpha_(alpha), t_(t), half_(std::move(half)) {
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha_));
  }
  if (t_ < 0) throw DomainError("time must be nonnegative");
  if (half_.empty()) half_.push_back(0.0);
  for (std::size_t x = 0; x < half_.size(); ++x) {
    if (!std::isfinite(half_[x]) || half_[x] < 0.0) {
      throw InvalidState("mass at site " + std::to_string(x) +
                         " is negative or non-finite");
    }
  }
  trim_trailing_zeros(half_);
}

std::int64_t MassState::max_site() const {
  for (std::size_t x = half_.size(); x-- > 0;) {
    if (half_[x] > 0.0) return static_cast<std::int64_t>(x);
  }
  return 0;
}

double MassState::at(std::int64_t x) const {
  const auto ax = static_cast<std::size_t>(x < 0 ? -x : x);
  return ax < half_.size() ? half_[ax] : 0.0;
}

double MassState::total_mass() const { return half_array_total(half_); }

MassState MassState::perturbed(std::int64_t site, double delta) const {
  auto half = half_;
  const auto ax = static_cast<std::size_t>(site < 0 ? -site : site);
  if (ax >= half.size()) half.resize(ax + 1, 0.0);
  half[ax] = std::max(0.0, half[ax] + delta);
  return MassState(alpha_, t_, std::move(half));
}

double half_array_total(std::span<const double> half) {
  if (half.empty()) return 0.0;
  CompensatedSum tail;
  for (std::size_t x = half.size(); x-- > 1;) tail.add(half[x]);
  CompensatedSum total(half[0]);
  total.add(2.0 * tail.value());
  return total.value();
}

double FrozenSplit::free_total() const { return half_array_total(free); }
double FrozenSplit::frozen_total() const { return half_array_total(frozen); }

std::int64_t boundary(const MassState& state) {
  const auto half = state.half();
  const double target = 0.5 * state.alpha() - kTieTolerance;
  CompensatedSum suffix;
  for (std::size_t x = half.size(); x-- > 0;) {
    suffix.add(half[x]);
    if (suffix.value() >= target) return static_cast<std::int64_t>(x);
  }
  return 0;
}

FrozenSplit freeze_split(const MassState& state) {
  const auto half = state.half();
  const std::int64_t beta = boundary(state);
  const auto b = static_cast<std::size_t>(beta);

  FrozenSplit split;
  split.alpha = state.alpha();
  split.t = state.time();
  split.beta = beta;
  split.frozen.assign(half.size(), 0.0);
  split.free.assign(half.begin(), half.end());

  if (b + 2 < half.size()) {
    for (std::size_t y = b + 2; y < half.size(); ++y) {
      if (half[y] > 0.0) {
        throw InvalidState("mass at site " + std::to_string(y) +
                           " lies beyond boundary + 1 = " +
                           std::to_string(beta + 1));
      }
    }
  }

  CompensatedSum tail;
  for (std::size_t y = half.size(); y-- > b + 1;) {
    tail.add(half[y]);
    split.frozen[y] = half[y];
    split.free[y] = 0.0;
  }

  const double quota =
      beta > 0 ? 0.5 * state.alpha() - tail.value()
               : state.alpha() - 2.0 * tail.value();
  if (quota < -kNegativeSlack) {
    throw InvalidState("negative frozen quota " + std::to_string(quota) +
                       " at boundary site " + std::to_string(beta));
  }
  const double at_boundary = std::clamp(quota, 0.0, half[b]);
  split.frozen[b] = at_boundary;
  split.free[b] = half[b] - at_boundary;
  return split;
}

MassState heat_step(const FrozenSplit& split) {
  const auto& free = split.free;
  const auto& frozen = split.frozen;
  const std::size_t n = free.size();
  std::vector<double> next(n + 1, 0.0);
  auto free_at = [&](std::size_t x) { return x < n ? free[x] : 0.0; };

  // Site 0 receives half of free[1] from each side.
  next[0] = frozen[0] + free_at(1);
  for (std::size_t x = 1; x <= n; ++x) {
    const double left = free[x - 1];
    const double right = free_at(x + 1);
    next[x] = 0.5 * (left + right) + (x < n ? frozen[x] : 0.0);
  }
  return MassState(split.alpha, split.t + 1, std::move(next));
}

}  // namespace fbd
