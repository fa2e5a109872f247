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

#ifndef FBD_CLI_CLI_HPP_
#define FBD_CLI_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fbd::cli {

/// Process exit codes. Stable contract for scripts.
enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kInvariantViolation = 2,
  kNoConvergence = 3,
};

/// Runs the tool on `args` (without the program name). Normal output goes
/// to `out`, messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fbd::cli

#endif  // FBD_CLI_CLI_HPP_
