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

#ifndef FBD_CLI_CHECKS_HPP_
#define FBD_CLI_CHECKS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbd/engine.hpp"

namespace fbd::cli {

struct CheckResult {
  std::string name;
  double alpha = 0.0;
  bool pass = false;
  std::string detail;
};

struct CheckOptions {
  std::int64_t steps = 10000;
  int max_k = 20;
  std::optional<FaultInjection> fault;
};

/// Step-by-step invariants of one evolution: mass conservation, the exact
/// second moment, the diffusive boundary bounds, two-point support with a
/// non-decreasing boundary, the per-step moment-change identity for
/// k = 1, 2, 3, its telescoped form, and the frozen/free totals.
std::vector<CheckResult> run_evolution_checks(double alpha,
                                              const CheckOptions& options);

/// Root solve residuals, the inequality family at q, series/closed-form
/// agreement for g, truncated Gaussian moments against quadrature, and
/// the moment growth bound.
std::vector<CheckResult> run_analysis_checks(double alpha, int max_k);

}  // namespace fbd::cli

#endif  // FBD_CLI_CHECKS_HPP_
