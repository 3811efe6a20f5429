// Copyright 2026 The infdim Authors
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

#ifndef INFDIM_ERRORS_HPP_
#define INFDIM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace infdim {

/// Raised when a caller breaks an operation's precondition (dimension
/// mismatch, empty input, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
 public:
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Singular or ill-conditioned affine map.
class InvalidMap : public std::invalid_argument {
 public:
  explicit InvalidMap(const std::string& what) : std::invalid_argument(what) {}
};

/// Sample too degenerate to whiten (singular empirical covariance).
class DegenerateSample : public std::runtime_error {
 public:
  explicit DegenerateSample(const std::string& what) : std::runtime_error(what) {}
};

/// The LP kernel hit its iteration cap or lost numerical footing.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad experiment configuration (parse or validation failure).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace detail
}  // namespace infdim

#endif  // INFDIM_ERRORS_HPP_
