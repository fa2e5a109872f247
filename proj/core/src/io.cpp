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

#include "fbd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace fbd {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, result.ptr);
}

void write_diagnostics_csv(std::ostream& out,
                           std::span<const DiagnosticsRow> rows,
                           std::span<const double> levy) {
  if (!levy.empty() && levy.size() != rows.size()) {
    throw std::invalid_argument("levy column length does not match rows");
  }
  out << kDiagnosticsHeader << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double d =
        levy.empty() ? std::numeric_limits<double>::quiet_NaN() : levy[i];
    out << r.t << ',' << r.beta << ',' << format_real(r.beta_scaled) << ','
        << format_real(r.m2) << ',' << format_real(r.m4) << ','
        << format_real(r.m6) << ',' << format_real(r.m2_residual) << ','
        << format_real(d) << '\n';
  }
}

void write_mass_profile_csv(std::ostream& out, const MassState& state) {
  out << "site,mass\n";
  const std::int64_t reach = state.max_site();
  for (std::int64_t x = -reach; x <= reach; ++x) {
    out << x << ',' << format_real(state.at(x)) << '\n';
  }
}

void write_fraction_csv(std::ostream& out, const AveragedProfile& profile) {
  out << "site,fraction\n";
  for (std::int64_t x = profile.min_site; x <= profile.max_site(); ++x) {
    out << x << ',' << format_real(profile.at(x)) << '\n';
  }
}

void write_grid_csv(std::ostream& out, std::span<const double> cells,
                    std::int64_t radius) {
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      if (col > 0) out << ',';
      out << format_real(cells[row * side + col]);
    }
    out << '\n';
  }
}

void write_pgm(std::ostream& out, std::span<const double> cells,
               std::int64_t radius) {
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  const double peak =
      cells.empty() ? 0.0 : *std::max_element(cells.begin(), cells.end());
  out << "P5\n" << side << ' ' << side << "\n255\n";
  for (std::size_t row = side; row-- > 0;) {
    for (std::size_t col = 0; col < side; ++col) {
      const double v = peak > 0.0 ? cells[row * side + col] / peak : 0.0;
      out.put(static_cast<char>(
          static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0))));
    }
  }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

double parse_real(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::runtime_error("malformed CSV number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  for (auto f : split_fields(line)) table.header.emplace_back(f);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("ragged CSV row: '" + line + "'");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_real(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fbd
