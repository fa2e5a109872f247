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
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fbd/engine.hpp"
#include "fbd/io.hpp"
#include "fbd/lattice.hpp"
#include "fbd/schedule.hpp"

namespace fbd {
namespace {

TEST(FormatReal, RoundTrips) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 5000; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(std::stod(format_real(v)), v) << format_real(v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(std::nan("")), "nan");
}

TEST(DiagnosticsCsv, HeaderAndRoundTrip) {
  const auto schedule = geometric_schedule(100);
  const Trajectory tr = run_fbd(0.5, 100, schedule);
  std::vector<double> levy(tr.rows.size(), 0.125);
  std::stringstream buf;
  write_diagnostics_csv(buf, tr.rows, levy);
  std::string first;
  std::getline(std::stringstream(buf.str()), first);
  EXPECT_EQ(first, kDiagnosticsHeader);
  const CsvTable table = read_csv(buf);
  ASSERT_EQ(table.header.size(), 8u);
  ASSERT_EQ(table.rows.size(), tr.rows.size());
  for (std::size_t i = 0; i < tr.rows.size(); ++i) {
    EXPECT_EQ(table.rows[i][0], static_cast<double>(tr.rows[i].t));
    EXPECT_EQ(table.rows[i][1], static_cast<double>(tr.rows[i].beta));
    EXPECT_EQ(table.rows[i][3], tr.rows[i].m2);
    EXPECT_EQ(table.rows[i][4], tr.rows[i].m4);
    EXPECT_EQ(table.rows[i][5], tr.rows[i].m6);
    EXPECT_EQ(table.rows[i][7], 0.125);
  }
  EXPECT_EQ(buf.str().find('\r'), std::string::npos);
}

TEST(DiagnosticsCsv, MissingLevyWritesNan) {
  const std::vector<std::int64_t> schedule{1};
  const Trajectory tr = run_fbd(0.5, 1, schedule);
  std::stringstream buf;
  write_diagnostics_csv(buf, tr.rows, {});
  const CsvTable table = read_csv(buf);
  EXPECT_TRUE(std::isnan(table.rows[0][7]));
  const std::vector<double> wrong(3, 0.0);
  EXPECT_THROW(write_diagnostics_csv(buf, tr.rows, wrong), std::invalid_argument);
}

TEST(ProfileCsv, CoversBothSides) {
  const MassState s(0.5, 1, {0.5, 0.25});
  std::stringstream buf;
  write_mass_profile_csv(buf, s);
  const CsvTable table = read_csv(buf);
  EXPECT_EQ(table.header, (std::vector<std::string>{"site", "mass"}));
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0], (std::vector<double>{-1, 0.25}));
  EXPECT_EQ(table.rows[1], (std::vector<double>{0, 0.5}));
  EXPECT_EQ(table.rows[2], (std::vector<double>{1, 0.25}));
}

TEST(GridCsv, OneLinePerRow) {
  const std::vector<double> cells{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::stringstream buf;
  write_grid_csv(buf, cells, 1);
  EXPECT_EQ(buf.str(), "1,2,3\n4,5,6\n7,8,9\n");
}

TEST(Pgm, HeaderAndPayload) {
  const std::vector<double> cells{0, 0, 0, 0, 1, 0, 0, 0, 0.5};
  std::stringstream buf;
  write_pgm(buf, cells, 1);
  const std::string s = buf.str();
  const std::string header = "P5\n3 3\n255\n";
  ASSERT_EQ(s.substr(0, header.size()), header);
  ASSERT_EQ(s.size(), header.size() + 9);
  // Top row is y = R, i.e. the last row of the cells.
  EXPECT_EQ(static_cast<unsigned char>(s[header.size() + 2]), 128);
  EXPECT_EQ(static_cast<unsigned char>(s[header.size() + 4]), 255);
}

TEST(ReadCsv, RejectsMalformedInput) {
  std::stringstream empty;
  EXPECT_THROW(read_csv(empty), std::runtime_error);
  std::stringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged), std::runtime_error);
  std::stringstream bad("a\nx1\n");
  EXPECT_THROW(read_csv(bad), std::runtime_error);
}

}  // namespace
}  // namespace fbd
