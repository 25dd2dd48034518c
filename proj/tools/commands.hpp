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

#ifndef NLGAMES_TOOLS_COMMANDS_HPP_
#define NLGAMES_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <string>

#include "report.hpp"

namespace nlg::cli {

// Every command returns a report with exit_code set; none throws.

RunReport cmd_reduce(const std::string& game_file, const std::string& out_dir);

struct ValuesOptions {
  long double budget = 1e8;  // predicate evaluations and search nodes
};
RunReport cmd_values(const std::string& game_file, const ValuesOptions& options);

struct VerifyOptions {
  std::string kind = "pme";  // pme or general
  double tol = 1e-8;
};
RunReport cmd_verify(const std::string& game_file, const std::string& strategy_file,
                     const VerifyOptions& options);

struct SearchOptions {
  std::size_t dim = 1;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
  std::size_t max_iters = 500;
  double tol = 1e-8;
  bool from_independent_set = false;
  long double budget = 1e8;
  std::string out_dir;  // empty: write nothing
};
RunReport cmd_search(const std::string& input_file, const SearchOptions& options);

RunReport cmd_corpus(const std::string& corpus_dir);

}  // namespace nlg::cli

#endif  // NLGAMES_TOOLS_COMMANDS_HPP_
