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

#ifndef FBD_IO_HPP_
#define FBD_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fbd/engine.hpp"
#include "fbd/frw.hpp"
#include "fbd/lattice.hpp"

namespace fbd {

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double value);

inline constexpr const char* kDiagnosticsHeader =
    "t,beta,beta_scaled,m2,m4,m6,m2_residual,levy_distance";

/// One line per row; `levy` must be empty or as long as `rows`, and an
/// empty span writes NaN in the last column. LF line endings throughout.
void write_diagnostics_csv(std::ostream& out,
                           std::span<const DiagnosticsRow> rows,
                           std::span<const double> levy);

/// `site,mass` for every site in [-max_site, max_site].
void write_mass_profile_csv(std::ostream& out, const MassState& state);

/// `site,fraction` over the averaged profile's window.
void write_fraction_csv(std::ostream& out, const AveragedProfile& profile);

/// Headerless matrix, one line per y from -R to R, x increasing along the
/// line.
void write_grid_csv(std::ostream& out, std::span<const double> cells,
                    std::int64_t radius);

/// Binary portable graymap (P5, maxval 255), brightness proportional to
/// cell value, top row y = R.
void write_pgm(std::ostream& out, std::span<const double> cells,
               std::int64_t radius);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with one header line. Throws std::runtime_error on
/// malformed numbers or ragged rows.
CsvTable read_csv(std::istream& in);

}  // namespace fbd

#endif  // FBD_IO_HPP_
