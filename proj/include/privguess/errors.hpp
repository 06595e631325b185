// Copyright 2026 The privguess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGUESS_ERRORS_HPP_
#define PRIVGUESS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace privguess {

// Input violates a documented precondition (bad pmf, parameter out of
// range, dimension mismatch). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// A closed form was requested outside its certified regime (e.g. the
// implied Z-channel crossover exceeds 1). The CLI maps this to exit code 3.
class RegimeError : public std::domain_error {
 public:
  explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace privguess

#endif  // PRIVGUESS_ERRORS_HPP_
