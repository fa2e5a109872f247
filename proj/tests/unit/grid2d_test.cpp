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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fbd/errors.hpp"
#include "fbd/grid2d.hpp"

namespace fbd {
namespace {

MassGrid2D evolve2d(double alpha, int steps) {
  MassGrid2D g = MassGrid2D::delta(alpha);
  for (int t = 0; t < steps; ++t) g = heat_step_2d(freeze_split_2d(g));
  return g;
}

TEST(Grid2D, DeltaSplit) {
  const FrozenSplit2D s = freeze_split_2d(MassGrid2D::delta(0.5));
  EXPECT_EQ(s.radius, 0);
  EXPECT_DOUBLE_EQ(s.frozen[0], 0.5);
  EXPECT_DOUBLE_EQ(s.free[0], 0.5);
  EXPECT_EQ(s.threshold_r2, 0);
}

TEST(Grid2D, FirstStep) {
  const MassGrid2D g = evolve2d(0.5, 1);
  EXPECT_EQ(g.time(), 1);
  EXPECT_DOUBLE_EQ(g.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(g.at(1, 0), 0.125);
  EXPECT_DOUBLE_EQ(g.at(-1, 0), 0.125);
  EXPECT_DOUBLE_EQ(g.at(0, 1), 0.125);
  EXPECT_DOUBLE_EQ(g.at(0, -1), 0.125);
  EXPECT_EQ(g.at(1, 1), 0.0);
  EXPECT_EQ(g.at(5, 5), 0.0);
}

TEST(Grid2D, SecondStepFreezesOuterShell) {
  // The four neighbours carry exactly alpha = 1/2 and freeze whole.
  const FrozenSplit2D s = freeze_split_2d(evolve2d(0.5, 1));
  EXPECT_EQ(s.threshold_r2, 1);
  EXPECT_DOUBLE_EQ(s.frozen_total(), 0.5);
  EXPECT_DOUBLE_EQ(s.free_total(), 0.5);
}

TEST(Grid2D, SingleFreeUnitSpreadsToFourNeighbours) {
  FrozenSplit2D s;
  s.alpha = 0.5;
  s.t = 0;
  s.radius = 1;
  s.free.assign(9, 0.0);
  s.frozen.assign(9, 0.0);
  s.free[4] = 1.0;
  const MassGrid2D g = heat_step_2d(s);
  EXPECT_EQ(g.at(1, 0), 0.25);
  EXPECT_EQ(g.at(0, 1), 0.25);
  EXPECT_EQ(g.at(-1, 0), 0.25);
  EXPECT_EQ(g.at(0, -1), 0.25);
  EXPECT_EQ(g.at(0, 0), 0.0);
}

TEST(Grid2D, ZeroFreeMassIsIdentity) {
  FrozenSplit2D s;
  s.alpha = 0.5;
  s.t = 3;
  s.radius = 1;
  s.free.assign(9, 0.0);
  s.frozen = {0.1, 0.0, 0.1, 0.0, 0.4, 0.0, 0.1, 0.0, 0.3};
  const MassGrid2D g = heat_step_2d(s);
  EXPECT_EQ(g.time(), 4);
  EXPECT_EQ(g.radius(), 1);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(g.cells()[i], s.frozen[i]);
}

TEST(Grid2D, RejectsInvalidGrids) {
  EXPECT_THROW(MassGrid2D(0.5, 0, 1, std::vector<double>(4, 0.0)), DomainError);
  std::vector<double> neg(9, 0.0);
  neg[0] = -1e-3;
  EXPECT_THROW(MassGrid2D(0.5, 0, 1, neg), InvalidState);
  EXPECT_THROW(MassGrid2D::delta(1.0), DomainError);
}

class Alpha2D : public ::testing::TestWithParam<double> {};

TEST_P(Alpha2D, ConservationSymmetryAndSecondMoment) {
  const double alpha = GetParam();
  MassGrid2D g = MassGrid2D::delta(alpha);
  for (int t = 0; t < 200; ++t) {
    const FrozenSplit2D s = freeze_split_2d(g);
    EXPECT_NEAR(s.frozen_total(), alpha, 1e-13);
    const MassGrid2D next = heat_step_2d(s);
    // Each free unit gains exactly one unit of |z|^2 on average.
    EXPECT_NEAR(next.radial_second_moment() - g.radial_second_moment(),
                s.free_total(), 1e-11 * (1.0 + t));
    g = next;
    ASSERT_TRUE(g.is_dihedral_symmetric()) << "t=" << g.time();
    ASSERT_NEAR(g.total_mass(), 1.0, 1e-13);
  }
  EXPECT_NEAR(g.radial_second_moment(), 200.0 * (1.0 - alpha), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Alphas, Alpha2D, ::testing::Values(0.1, 0.5, 0.9));

TEST(Grid2D, SliceIsSymmetricAndPeaked) {
  const MassGrid2D g = evolve2d(0.5, 400);
  const std::vector<double> slice = column_slice(g.cells(), g.radius());
  ASSERT_EQ(slice.size(), static_cast<std::size_t>(g.side()));
  const auto r = static_cast<std::size_t>(g.radius());
  for (std::size_t i = 0; i < slice.size(); ++i) {
    EXPECT_EQ(slice[i], slice[slice.size() - 1 - i]);
  }
  // Interior is non-increasing away from the centre up to the frozen ring,
  // compared within one lattice parity class.
  const auto ring = static_cast<std::size_t>(std::sqrt(
      static_cast<double>(freeze_split_2d(g).threshold_r2)));
  for (std::size_t d = 2; d + 2 < ring; ++d) {
    EXPECT_LE(slice[r + d], slice[r + d - 2] * (1.0 + 1e-12)) << d;
  }
  EXPECT_GT(slice[r], 0.0);
}

TEST(Grid2D, ColumnSlice) {
  const std::vector<double> cells{1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_EQ(column_slice(cells, 1), (std::vector<double>{2, 5, 8}));
}

}  // namespace
}  // namespace fbd
