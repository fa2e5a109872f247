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

#include "fbd/schedule.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace fbd {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::vector<std::int64_t> geometric_schedule(std::int64_t steps) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 1; t <= steps; t *= 2) out.push_back(t);
  if (steps >= 1 && out.back() != steps) out.push_back(steps);
  return out;
}

std::vector<std::int64_t> linear_schedule(std::int64_t steps,
                                          std::int64_t every) {
  if (every < 1) throw std::invalid_argument("linear spacing must be >= 1");
  std::vector<std::int64_t> out;
  for (std::int64_t t = every; t <= steps; t += every) out.push_back(t);
  if (steps >= 1 && (out.empty() || out.back() != steps)) out.push_back(steps);
  return out;
}

std::vector<std::int64_t> parse_schedule(std::string_view text,
                                         std::int64_t steps) {
  if (text == "geometric") return geometric_schedule(steps);
  if (text.starts_with("linear:")) {
    return linear_schedule(steps, parse_int(text.substr(7)));
  }
  if (text.starts_with("explicit:")) {
    std::vector<std::int64_t> out;
    std::string_view rest = text.substr(9);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto t = parse_int(rest.substr(0, comma));
      if (t < 0 || t > steps) {
        throw std::invalid_argument("schedule time " + std::to_string(t) +
                                    " outside [0, steps]");
      }
      if (!out.empty() && t <= out.back()) {
        throw std::invalid_argument("schedule must be strictly increasing");
      }
      out.push_back(t);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (out.empty()) throw std::invalid_argument("empty explicit schedule");
    return out;
  }
  throw std::invalid_argument("unknown schedule '" + std::string(text) +
                              "' (expected geometric, linear:<k> or "
                              "explicit:<list>)");
}

}  // namespace fbd
