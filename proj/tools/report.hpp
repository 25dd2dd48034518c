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

#ifndef NLGAMES_TOOLS_REPORT_HPP_
#define NLGAMES_TOOLS_REPORT_HPP_

#include <string>
#include <vector>

#include "nlgames/game.hpp"

namespace nlg::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // usage and I/O problems
inline constexpr int kExitParse = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitValidation = 4;

struct ReportValue {
  std::string name;
  std::string value;
  // "exact", a tolerance such as "tol 1e-09", or empty for non-numeric facts.
  std::string annotation;
};

struct InputDigest {
  std::string path;
  std::string sha256;
};

struct Timing {
  std::string phase;
  double seconds = 0.0;
};

struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  std::vector<ReportValue> results;
  std::vector<std::string> diagnostics;
  std::vector<std::string> notes;
  std::vector<std::string> artifacts;
  std::vector<Timing> timings;
  int exit_code = kExitOk;
  std::string error;

  void exact(const std::string& name, const Rational& value);
  void exact(const std::string& name, std::size_t value);
  void approx(const std::string& name, double value, double tol);
  void fact(const std::string& name, const std::string& value);
  // Value of the first result with this name, empty if absent.
  std::string find(const std::string& name) const;

  std::string render_text() const;
  std::string render_structured() const;  // JSON
};

std::string format_double(double value);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace nlg::cli

#endif  // NLGAMES_TOOLS_REPORT_HPP_
