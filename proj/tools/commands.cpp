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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>

#include "nlgames/errors.hpp"
#include "nlgames/io.hpp"
#include "nlgames/packing_search.hpp"
#include "nlgames/reductions.hpp"

namespace nlg::cli {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& report) : report_(report) {}
  void lap(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings.push_back({phase, std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string read_input(RunReport& report, const std::string& path) {
  std::string text = read_text_file(path);
  report.inputs.push_back({path, sha256_hex(text)});
  return text;
}

// Runs body and maps library errors onto exit codes.
RunReport guarded(const std::string& command, const std::function<void(RunReport&)>& body) {
  RunReport report;
  report.command = command;
  try {
    body(report);
  } catch (const ParseError& e) {
    report.exit_code = kExitParse;
    report.error = std::string("parse error: ") + e.what();
  } catch (const BudgetExceeded& e) {
    report.exit_code = kExitBudget;
    report.error = std::string("budget exceeded: ") + e.what();
  } catch (const ValidationError& e) {
    report.exit_code = kExitValidation;
    report.error = std::string("validation failure: ") + e.what();
  } catch (const InvalidInput& e) {
    report.exit_code = kExitValidation;
    report.error = std::string("invalid input: ") + e.what();
  } catch (const std::exception& e) {
    report.exit_code = kExitError;
    report.error = e.what();
  }
  return report;
}

std::string describe_strategy(const NonlocalGame& game, const DeterministicStrategy& s) {
  std::ostringstream os;
  os << "alice {";
  for (std::size_t q = 0; q < s.alice.size(); ++q) {
    os << (q ? ", " : "") << game.alice_questions()[q] << "->" << game.alice_answers()[s.alice[q]];
  }
  os << "} bob {";
  for (std::size_t r = 0; r < s.bob.size(); ++r) {
    os << (r ? ", " : "") << game.bob_questions()[r] << "->" << game.bob_answers()[s.bob[r]];
  }
  os << "}";
  return os.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
  return out;
}

}  // namespace

RunReport cmd_reduce(const std::string& game_file, const std::string& out_dir) {
  return guarded(join({"reduce", game_file, "--out", out_dir}), [&](RunReport& report) {
    Stopwatch clock(report);
    const NonlocalGame game = parse_game(read_input(report, game_file));
    clock.lap("parse");
    const ReductionArtifact artifact = reduce_pme_to_qindependence(game);
    clock.lap("reduce");
    report.exact("extended_questions", artifact.extended_game.num_questions());
    report.exact("extended_answers", artifact.extended_game.num_answers());
    report.exact("game_graph_vertices", artifact.game_graph.num_vertices());
    report.exact("game_graph_edges", artifact.game_graph.num_edges());
    report.exact("target_t", artifact.target_t);
    const ArtifactPaths paths = write_artifact(out_dir, game, artifact);
    report.artifacts = {paths.game.string(), paths.graph.string(), paths.provenance.string()};
    clock.lap("write");
  });
}

RunReport cmd_values(const std::string& game_file, const ValuesOptions& options) {
  std::ostringstream budget;
  budget << static_cast<double>(options.budget);
  return guarded(join({"values", game_file, "--budget", budget.str()}), [&](RunReport& report) {
    Stopwatch clock(report);
    const NonlocalGame game = parse_game(read_input(report, game_file));
    clock.lap("parse");
    const ClassicalValue omega = classical_value(game, {options.budget});
    report.exact("classical_value", omega.value);
    report.fact("classical_strategy", describe_strategy(game, omega.strategy));
    clock.lap("classical");

    auto checked = validate_synchronous(game);
    if (auto* violations = std::get_if<std::vector<SyncViolation>>(&checked)) {
      report.notes.push_back("game is not synchronous (" + violations->front().describe(game) +
                             "); synchronous section omitted");
      return;
    }
    const SynchronousGame& sync = std::get<SynchronousGame>(checked);
    const Graph graph = game_graph(sync);
    IndependenceOptions iopts;
    iopts.max_nodes = options.budget >= 1.8e19L
                          ? UINT64_MAX
                          : static_cast<std::uint64_t>(std::max<long double>(1, options.budget));
    const IndependenceResult alpha = independence_number(graph, iopts);
    clock.lap("independence");
    const std::size_t nq = sync.num_questions();
    report.exact("questions", nq);
    report.exact("game_graph_vertices", graph.num_vertices());
    report.exact("game_graph_edges", graph.num_edges());
    report.exact("alpha_game_graph", alpha.size);
    const bool perfect = omega.value == 1;
    const bool saturated = alpha.size == nq;
    report.fact("perfect_classical_strategy", perfect ? "yes" : "no");
    report.fact("alpha_equals_questions", saturated ? "yes" : "no");
    if (perfect != saturated) {
      report.diagnostics.push_back("the two perfect-classical verdicts disagree");
      report.exit_code = kExitValidation;
    }
    if (!game.has_uniform_distribution()) {
      report.notes.push_back("classical bound needs a uniform distribution; omitted");
      return;
    }
    const GuaranteedStrategy bound =
        classical_strategy_from_independent_set(sync, graph, alpha.witness);
    report.exact("classical_lower_bound", bound.guarantee);
    report.exact("bound_witness_value", eval_deterministic(game, bound.strategy));
    report.fact("bound_witness", describe_strategy(game, bound.strategy));
    clock.lap("bound");
  });
}

RunReport cmd_verify(const std::string& game_file, const std::string& strategy_file,
                     const VerifyOptions& options) {
  return guarded(join({"verify", game_file, strategy_file, "--kind", options.kind}),
                 [&](RunReport& report) {
    Stopwatch clock(report);
    const NonlocalGame game = parse_game(read_input(report, game_file));
    const std::string text = read_input(report, strategy_file);
    Tolerances tol;
    tol.proj = tol.orth = tol.psd = options.tol;
    std::vector<MeasurementDiagnostic> diagnostics;
    std::vector<double> wins;
    if (options.kind == "pme") {
      const PMEStrategy s = parse_pme_strategy(text, game);
      clock.lap("parse");
      report.exact("dimension", s.dimension);
      diagnostics = validate_pme(game, s, tol);
      wins = pme_pair_wins(game, s);
    } else if (options.kind == "general") {
      const GeneralStrategy s = parse_general_strategy(text, game);
      clock.lap("parse");
      report.exact("alice_dimension", s.alice_dimension);
      report.exact("bob_dimension", s.bob_dimension);
      diagnostics = validate_general(game, s, tol);
      wins = general_pair_wins(game, s);
    } else {
      throw InvalidInput("--kind must be pme or general");
    }
    double value = 0.0;
    for (std::size_t i = 0; i < wins.size(); ++i) {
      value += game.distribution()[i].convert_to<double>() * wins[i];
    }
    clock.lap("evaluate");
    report.approx("winning_probability", value, 1e-9);
    const std::size_t nr = game.num_bob_questions();
    for (std::size_t i = 0; i < wins.size(); ++i) {
      const double p = game.distribution()[i].convert_to<double>();
      const double loss = p * (1.0 - wins[i]);
      if (p > 0 && loss > 1e-12) {
        report.approx("loss(" + game.alice_questions()[i / nr] + "," +
                          game.bob_questions()[i % nr] + ")",
                      loss, 1e-9);
      }
    }
    for (const auto& d : diagnostics) report.diagnostics.push_back(d.describe(game));
    if (!diagnostics.empty()) {
      report.exit_code = kExitValidation;
      report.error = "strategy failed validation";
    }
  });
}

RunReport cmd_search(const std::string& input_file, const SearchOptions& options) {
  std::ostringstream cmd;
  cmd << "search " << input_file << " --dim " << options.dim << " --seed " << options.seed
      << " --restarts " << options.restarts << " --max-iters " << options.max_iters << " --tol "
      << options.tol << (options.from_independent_set ? " --from-independent-set" : "");
  if (!options.out_dir.empty()) cmd << " --out " << options.out_dir;
  return guarded(cmd.str(), [&](RunReport& report) {
    Stopwatch clock(report);
    const std::string text = read_input(report, input_file);
    std::optional<SynchronousGame> game;
    Graph graph;
    if (looks_like_json(text)) {
      game.emplace(require_synchronous(parse_game(text)));
      graph = game_graph(*game);
    } else {
      graph = parse_graph(text);
    }
    clock.lap("parse");

    SearchConfig config;
    config.dimension = options.dim;
    config.seed = options.seed;
    config.restarts = options.restarts;
    config.max_iters = options.max_iters;
    config.tol.proj = config.tol.orth = options.tol;
    if (options.from_independent_set) {
      IndependenceOptions iopts;
      iopts.max_nodes = static_cast<std::uint64_t>(std::max<long double>(1, options.budget));
      const IndependenceResult alpha = independence_number(graph, iopts);
      ProjectivePacking initial;
      initial.dimension = options.dim;
      const auto d = static_cast<Eigen::Index>(options.dim);
      initial.projectors.assign(graph.num_vertices(), Matrix::Zero(d, d));
      for (std::size_t v : alpha.witness) initial.projectors[v] = Matrix::Identity(d, d);
      config.initial = std::move(initial);
      report.exact("seed_independent_set_size", alpha.size);
    }
    const SearchResult result = seesaw_search(graph, config);
    clock.lap("search");
    const PackingReport check = validate_packing(graph, result.packing, config.tol);
    if (!check.valid()) {
      for (const auto& v : check.violations) report.diagnostics.push_back(v.describe(graph));
      throw ValidationError("search returned an invalid packing");
    }
    report.exact("graph_vertices", graph.num_vertices());
    report.exact("dimension", options.dim);
    report.approx("gamma_lower_bound", check.value, options.tol);
    report.exact("best_restart", result.best_restart);
    report.exact("restarts_run", result.restarts_run);
    report.notes.push_back(
        "search results are lower bounds only; failure to find a packing is not evidence "
        "that none exists");

    std::filesystem::path out;
    if (!options.out_dir.empty()) {
      out = options.out_dir;
      std::error_code ec;
      std::filesystem::create_directories(out, ec);
      if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());
      write_text_file(out / "packing.json", write_packing(graph, result.packing));
      report.artifacts.push_back((out / "packing.json").string());
    }
    if (!game) return;
    const double nq = static_cast<double>(game->num_questions());
    report.exact("questions", game->num_questions());
    if (check.value > nq + 1e-8) {
      report.diagnostics.push_back("packing value exceeds |Q|");
      report.exit_code = kExitValidation;
    }
    if (!game->game().has_uniform_distribution()) {
      report.notes.push_back("entangled bound needs a uniform distribution; omitted");
      return;
    }
    const EntangledBound bound = entangled_lower_bound(*game, result.packing, config.tol);
    report.approx("entangled_value_lower_bound", bound.bound, options.tol);
    report.approx("witness_value", eval_pme(game->game(), bound.witness), 1e-9);
    if (!out.empty()) {
      write_text_file(out / "witness_strategy.json", write_strategy(game->game(), bound.witness));
      report.artifacts.push_back((out / "witness_strategy.json").string());
    }
    clock.lap("bound");
  });
}

RunReport cmd_corpus(const std::string& corpus_dir) {
  return guarded("corpus " + corpus_dir, [&](RunReport& report) {
    if (!std::filesystem::is_directory(corpus_dir)) {
      throw IoError("corpus directory " + corpus_dir + " not found");
    }
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    // Strategies need their game, so they are only listed.
    for (const auto& f : files) {
      const std::string name = std::filesystem::path(f).filename().string();
      const std::string text = read_text_file(f);
      std::ostringstream summary;
      if (!looks_like_json(text)) {
        const Graph g = parse_graph(text);
        summary << "graph, " << g.num_vertices() << " vertices, " << g.num_edges() << " edges";
      } else if (text.find("\"kind\"") != std::string::npos) {
        summary << "strategy";
      } else {
        const NonlocalGame g = parse_game(text);
        summary << "game, " << g.num_alice_questions() << "x" << g.num_bob_questions()
                << " questions, " << g.num_alice_answers() << "x" << g.num_bob_answers()
                << " answers, " << (synchronous_violations(g).empty() ? "synchronous" : "nonlocal");
      }
      report.fact(name, summary.str());
    }
  });
}

}  // namespace nlg::cli
