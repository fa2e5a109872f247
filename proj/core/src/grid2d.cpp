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

#include "fbd/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fbd/compensated_sum.hpp"
#include "fbd/errors.hpp"
#include "fbd/lattice.hpp"

namespace fbd {

namespace {

std::size_t cell_index(std::int64_t x, std::int64_t y, std::int64_t radius) {
  const std::int64_t side = 2 * radius + 1;
  return static_cast<std::size_t>((y + radius) * side + (x + radius));
}

double window_total(std::span<const double> cells) {
  CompensatedSum sum;
  for (double m : cells) sum.add(m);
  return sum.value();
}

}  // namespace

MassGrid2D MassGrid2D::delta(double alpha) {
  return MassGrid2D(alpha, 0, 0, {1.0});
}

MassGrid2D::MassGrid2D(double alpha, std::int64_t t, std::int64_t radius,
                       std::vector<double> cells)
    : alpha_(alpha), t_(t), radius_(radius), cells_(std::move(cells)) {
  if (!(alpha_ > 0.0 && alpha_ < 1.0)) {
    throw DomainError("alpha must lie in (0,1)");
  }
  if (radius_ < 0 || t_ < 0) throw DomainError("negative radius or time");
  const auto side = static_cast<std::size_t>(2 * radius_ + 1);
  if (cells_.size() != side * side) {
    throw DomainError("grid has " + std::to_string(cells_.size()) +
                      " cells, expected " + std::to_string(side * side));
  }
  for (double m : cells_) {
    if (!std::isfinite(m) || m < 0.0) {
      throw InvalidState("grid cell is negative or non-finite");
    }
  }
}

double MassGrid2D::at(std::int64_t x, std::int64_t y) const {
  if (std::abs(x) > radius_ || std::abs(y) > radius_) return 0.0;
  return cells_[cell_index(x, y, radius_)];
}

double MassGrid2D::total_mass() const { return window_total(cells_); }

double MassGrid2D::radial_second_moment() const {
  CompensatedSum sum;
  for (std::int64_t y = -radius_; y <= radius_; ++y) {
    for (std::int64_t x = -radius_; x <= radius_; ++x) {
      sum.add(cells_[cell_index(x, y, radius_)] * static_cast<double>(x * x + y * y));
    }
  }
  return sum.value();
}

bool MassGrid2D::is_dihedral_symmetric() const {
  for (std::int64_t y = -radius_; y <= radius_; ++y) {
    for (std::int64_t x = -radius_; x <= radius_; ++x) {
      const double v = at(x, y);
      if (v != at(-x, y) || v != at(x, -y) || v != at(y, x)) return false;
    }
  }
  return true;
}

double FrozenSplit2D::free_total() const { return window_total(free); }
double FrozenSplit2D::frozen_total() const { return window_total(frozen); }

FrozenSplit2D freeze_split_2d(const MassGrid2D& grid) {
  const std::int64_t radius = grid.radius();
  const auto cells = grid.cells();
  for (double m : cells) {
    if (m < 0.0) throw InvalidState("negative mass in 2D grid");
  }

  // Cell indices ordered by decreasing squared radius.
  std::vector<std::pair<std::int64_t, std::size_t>> order;
  order.reserve(cells.size());
  for (std::int64_t y = -radius; y <= radius; ++y) {
    for (std::int64_t x = -radius; x <= radius; ++x) {
      order.emplace_back(x * x + y * y, cell_index(x, y, radius));
    }
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  FrozenSplit2D split;
  split.alpha = grid.alpha();
  split.t = grid.time();
  split.radius = radius;
  split.free.assign(cells.begin(), cells.end());
  split.frozen.assign(cells.size(), 0.0);

  CompensatedSum frozen_so_far;
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin;
    CompensatedSum shell;
    while (end < order.size() && order[end].first == order[begin].first) {
      shell.add(cells[order[end].second]);
      ++end;
    }
    const double shell_mass = shell.value();
    if (shell_mass > 0.0) {
      const double room = grid.alpha() - frozen_so_far.value();
      if (shell_mass >= room - kTieTolerance) {
        const double ratio = std::clamp(room / shell_mass, 0.0, 1.0);
        for (std::size_t i = begin; i < end; ++i) {
          const std::size_t c = order[i].second;
          split.frozen[c] = cells[c] * ratio;
          split.free[c] = cells[c] - split.frozen[c];
        }
        split.threshold_r2 = order[begin].first;
        break;
      }
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t c = order[i].second;
        split.frozen[c] = cells[c];
        split.free[c] = 0.0;
      }
      frozen_so_far.add(shell_mass);
    }
    begin = end;
  }
  return split;
}

MassGrid2D heat_step_2d(const FrozenSplit2D& split) {
  const std::int64_t r = split.radius;
  bool edge_has_free_mass = false;
  for (std::int64_t y = -r; y <= r && !edge_has_free_mass; ++y) {
    for (std::int64_t x = -r; x <= r; ++x) {
      if ((std::abs(x) == r || std::abs(y) == r) &&
          split.free[cell_index(x, y, r)] > 0.0) {
        edge_has_free_mass = true;
        break;
      }
    }
  }
  const std::int64_t nr = edge_has_free_mass ? r + 1 : r;
  auto free_at = [&](std::int64_t x, std::int64_t y) {
    if (std::abs(x) > r || std::abs(y) > r) return 0.0;
    return split.free[cell_index(x, y, r)];
  };

  const auto side = static_cast<std::size_t>(2 * nr + 1);
  std::vector<double> next(side * side, 0.0);
  for (std::int64_t y = -nr; y <= nr; ++y) {
    for (std::int64_t x = -nr; x <= nr; ++x) {
      // Pairwise grouping keeps the sum bitwise invariant under the
      // dihedral group: each reflection or swap only reorders operands of
      // commutative additions.
      const double horizontal = free_at(x - 1, y) + free_at(x + 1, y);
      const double vertical = free_at(x, y - 1) + free_at(x, y + 1);
      double v = 0.25 * (horizontal + vertical);
      if (std::abs(x) <= r && std::abs(y) <= r) {
        v += split.frozen[cell_index(x, y, r)];
      }
      next[cell_index(x, y, nr)] = v;
    }
  }
  return MassGrid2D(split.alpha, split.t + 1, nr, std::move(next));
}

std::vector<double> column_slice(std::span<const double> cells,
                                 std::int64_t radius) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (std::int64_t y = -radius; y <= radius; ++y) {
    out.push_back(cells[cell_index(0, y, radius)]);
  }
  return out;
}

}  // namespace fbd
