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

#ifndef FBD_COMPENSATED_SUM_HPP_
#define FBD_COMPENSATED_SUM_HPP_

#include <cmath>

namespace fbd {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays
/// accurate when an addend is larger in magnitude than the running sum,
/// which happens when accumulating x^k weights from the outside in.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace fbd

#endif  // FBD_COMPENSATED_SUM_HPP_
