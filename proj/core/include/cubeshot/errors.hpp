// Copyright 2026 The cubeshot Authors
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

#ifndef CUBESHOT_ERRORS_HPP_
#define CUBESHOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cubeshot {

// Input outside an operation's domain: bad vertex index, mismatched
// dimensions, malformed files, partial partitions.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation would exceed its configured search or size budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A constructive procedure could not produce the requested object.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace cubeshot

#endif  // CUBESHOT_ERRORS_HPP_
