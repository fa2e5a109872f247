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

#ifndef FBD_SCHEDULE_HPP_
#define FBD_SCHEDULE_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace fbd {

/// 1, 2, 4, ... up to `steps`, with `steps` appended if it is not a power
/// of two.
std::vector<std::int64_t> geometric_schedule(std::int64_t steps);

/// every, 2*every, ... up to `steps`, with `steps` appended.
std::vector<std::int64_t> linear_schedule(std::int64_t steps,
                                          std::int64_t every);

/// Parses `geometric`, `linear:<k>` or `explicit:<t1>,<t2>,...`. Explicit
/// lists must be strictly increasing, nonnegative and <= steps. Throws
/// std::invalid_argument on malformed input.
std::vector<std::int64_t> parse_schedule(std::string_view text,
                                         std::int64_t steps);

}  // namespace fbd

#endif  // FBD_SCHEDULE_HPP_
