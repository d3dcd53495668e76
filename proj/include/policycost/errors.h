// Copyright 2026 The policycost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLICYCOST_ERRORS_H_
#define POLICYCOST_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace policycost {

// An argument lies outside the domain of the operation (negative case count,
// probability outside [0,1], imports beyond the border-cost domain, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation produced a non-finite value or ran away.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A derivative was requested exactly at a kink without choosing a side.
class AmbiguityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A result violated one of its postconditions at runtime.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration failed to parse or validate. Carries every diagnostic found,
// each prefixed with the offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace policycost

#endif  // POLICYCOST_ERRORS_H_
