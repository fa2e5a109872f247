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

#ifndef FBD_ERRORS_HPP_
#define FBD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fbd {

/// A mass array that cannot have come from a valid evolution: negative or
/// non-finite entries, or frozen mass outside the two-point band.
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented range of an evaluator.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root solve exhausted its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fbd

#endif  // FBD_ERRORS_HPP_
