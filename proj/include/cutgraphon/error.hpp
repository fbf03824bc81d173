// Copyright 2026 The cutgraphon Authors.
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

#ifndef CUTGRAPHON_ERROR_HPP_
#define CUTGRAPHON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace cutgraphon {

// Invalid input: malformed matrices, weights that do not normalize,
// out-of-range parameters. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A combinatorial or iteration budget would be exceeded. The CLI maps this
// to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cutgraphon

#endif  // CUTGRAPHON_ERROR_HPP_
