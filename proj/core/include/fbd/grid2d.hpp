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

#ifndef FBD_GRID2D_HPP_
#define FBD_GRID2D_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace fbd {

/// Mass on the square window [-R, R]^2 of Z^2, row-major with y outermost:
/// cell (x, y) lives at index (y + R) * (2R + 1) + (x + R).
class MassGrid2D {
 public:
  static MassGrid2D delta(double alpha);

  /// Throws DomainError on a size mismatch or alpha outside (0,1) and
  /// InvalidState on negative or non-finite cells.
  MassGrid2D(double alpha, std::int64_t t, std::int64_t radius,
             std::vector<double> cells);

  double alpha() const { return alpha_; }
  std::int64_t time() const { return t_; }
  std::int64_t radius() const { return radius_; }
  std::int64_t side() const { return 2 * radius_ + 1; }
  std::span<const double> cells() const { return cells_; }

  /// Zero outside the window.
  double at(std::int64_t x, std::int64_t y) const;

  double total_mass() const;

  /// sum m(x, y) (x^2 + y^2).
  double radial_second_moment() const;

  /// Exact (bitwise) invariance under x -> -x, y -> -y and x <-> y.
  bool is_dihedral_symmetric() const;

 private:
  double alpha_;
  std::int64_t t_;
  std::int64_t radius_;
  std::vector<double> cells_;
};

/// Free and frozen parts on the window of the source grid.
struct FrozenSplit2D {
  double alpha = 0.0;
  std::int64_t t = 0;
  std::int64_t radius = 0;
  std::vector<double> free;
  std::vector<double> frozen;
  std::int64_t threshold_r2 = 0;  // squared radius of the partially frozen shell

  double free_total() const;
  double frozen_total() const;
};

/// Freezes the radially outermost alpha of the mass. Sites are grouped in
/// shells of equal x^2 + y^2; shells are frozen whole from the outside in
/// and the threshold shell is frozen proportionally, which keeps the
/// dihedral symmetry exact. Throws InvalidState on negative cells.
FrozenSplit2D freeze_split_2d(const MassGrid2D& grid);

/// Moves a quarter of each free cell to each of its four neighbours. The
/// window grows by one when free mass touches its edge.
MassGrid2D heat_step_2d(const FrozenSplit2D& split);

/// Values along the column x = 0, y = -R..R, of a window-shaped array.
std::vector<double> column_slice(std::span<const double> cells,
                                 std::int64_t radius);

}  // namespace fbd

#endif  // FBD_GRID2D_HPP_
