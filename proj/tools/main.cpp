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

// nlgames: reductions, values, strategy checks and packing search for
// nonlocal games.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

#ifndef NLGAMES_CORPUS_DIR
#define NLGAMES_CORPUS_DIR "corpus"
#endif

int main(int argc, char** argv) {
  using namespace nlg::cli;
  CLI::App app{"Nonlocal game toolkit: reductions, values, strategy checks, packing search"};
  app.set_config("--config", "", "Read options from an INI or TOML file");
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string game_file, out_dir = "reduction", strategy_file, input_file;
  auto* reduce = app.add_subcommand("reduce", "Reduce a game to an independent-set instance");
  reduce->add_option("game", game_file, "Game file")->required();
  reduce->add_option("--out", out_dir, "Artifact directory")->capture_default_str();

  ValuesOptions values_opts;
  double values_budget = 1e8;
  auto* values = app.add_subcommand("values", "Exact classical value and independence data");
  values->add_option("game", game_file, "Game file")->required();
  values->add_option("--budget", values_budget, "Work budget")->capture_default_str();

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Evaluate and validate a strategy");
  verify->add_option("game", game_file, "Game file")->required();
  verify->add_option("strategy", strategy_file, "Strategy file")->required();
  verify->add_option("--kind", verify_opts.kind, "Strategy kind")
      ->check(CLI::IsMember({"pme", "general"}))
      ->capture_default_str();
  verify->add_option("--tol", verify_opts.tol, "Validation tolerance")->capture_default_str();

  SearchOptions search_opts;
  double search_budget = 1e8;
  auto* search = app.add_subcommand("search", "Seesaw search for a projective packing");
  search->add_option("input", input_file, "Graph file or synchronous game file")->required();
  search->add_option("--dim", search_opts.dim, "Dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--seed", search_opts.seed, "Random seed")->capture_default_str();
  search->add_option("--restarts", search_opts.restarts, "Restarts per rank pass")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--max-iters", search_opts.max_iters, "Sweeps per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search->add_option("--tol", search_opts.tol, "Packing tolerance")->capture_default_str();
  search->add_flag("--from-independent-set", search_opts.from_independent_set,
                   "Start the first restart from a maximum independent set");
  search->add_option("--budget", search_budget, "Node budget for the independent set")
      ->capture_default_str();
  search->add_option("--out", search_opts.out_dir, "Write packing and witness here");

  std::string corpus_dir = NLGAMES_CORPUS_DIR;
  if (const char* env = std::getenv("NLGAMES_CORPUS")) corpus_dir = env;
  auto* corpus = app.add_subcommand("corpus", "List the bundled example files");
  corpus->add_option("--dir", corpus_dir, "Corpus directory")->capture_default_str();

  // Global options such as --format may follow the subcommand.
  for (auto* sub : {reduce, values, verify, search, corpus}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  RunReport report;
  if (*reduce) {
    report = cmd_reduce(game_file, out_dir);
  } else if (*values) {
    values_opts.budget = values_budget;
    report = cmd_values(game_file, values_opts);
  } else if (*verify) {
    report = cmd_verify(game_file, strategy_file, verify_opts);
  } else if (*search) {
    search_opts.budget = search_budget;
    report = cmd_search(input_file, search_opts);
  } else {
    report = cmd_corpus(corpus_dir);
  }
  std::cout << (format == "structured" ? report.render_structured() : report.render_text());
  return report.exit_code;
}
