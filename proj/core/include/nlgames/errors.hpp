// Copyright 2026 The nlgames Authors
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

#ifndef NLGAMES_ERRORS_HPP_
#define NLGAMES_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments of an operation does not hold.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed its configured budget. `required` is the
// amount of work the search would need (or had already spent when it
// stopped), in the unit the search counts.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long double required)
      : Error(what), required_(required) {}
  long double required() const { return required_; }

 private:
  long double required_;
};

// Malformed file content. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0,
             std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// A numerical object (projector, measurement, packing) fails validation
// beyond the configured tolerance.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlg

#endif  // NLGAMES_ERRORS_HPP_
