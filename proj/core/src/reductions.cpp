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

#include "nlgames/reductions.hpp"

#include "nlgames/errors.hpp"

namespace nlg {

std::string alice_tag(const std::string& label) { return "(" + label + ",0)"; }
std::string bob_tag(const std::string& label) { return "(" + label + ",1)"; }

SynchronousGame synchronous_extension(const NonlocalGame& game) {
  const std::size_t nq = game.num_alice_questions();
  const std::size_t nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers();
  const std::size_t nb = game.num_bob_answers();
  const std::size_t n_questions = nq + nr;
  const std::size_t n_answers = na + nb;

  std::vector<std::string> questions;
  for (const auto& q : game.alice_questions()) questions.push_back(alice_tag(q));
  for (const auto& r : game.bob_questions()) questions.push_back(bob_tag(r));
  std::vector<std::string> answers;
  for (const auto& a : game.alice_answers()) answers.push_back(alice_tag(a));
  for (const auto& b : game.bob_answers()) answers.push_back(bob_tag(b));

  // Alice-side questions are [0, nq), Alice-side answers [0, na).
  auto role_mismatch = [&](std::size_t x, std::size_t y) {
    return (x < nq) != (y < na);
  };
  std::vector<std::uint8_t> predicate(n_answers * n_answers * n_questions *
                                      n_questions);
  std::size_t cell = 0;
  for (std::size_t y = 0; y < n_answers; ++y) {
    for (std::size_t y2 = 0; y2 < n_answers; ++y2) {
      for (std::size_t x = 0; x < n_questions; ++x) {
        for (std::size_t x2 = 0; x2 < n_questions; ++x2, ++cell) {
          bool win;
          if (role_mismatch(x, y) || role_mismatch(x2, y2)) {
            win = false;
          } else if (x == x2) {
            win = y == y2;
          } else if (x < nq && x2 >= nq) {
            win = game.wins(y, y2 - na, x, x2 - nq);
          } else if (x >= nq && x2 < nq) {
            win = game.wins(y2, y - na, x2, x - nq);
          } else {
            win = true;
          }
          predicate[cell] = win ? 1 : 0;
        }
      }
    }
  }
  return require_synchronous(NonlocalGame(
      questions, questions, answers, answers,
      uniform_distribution(n_questions, n_questions), std::move(predicate)));
}

Graph game_graph(const SynchronousGame& game) {
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  std::vector<std::string> labels;
  labels.reserve(nq * na);
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t a = 0; a < na; ++a)
      labels.push_back(game_graph_vertex_label(game.answers()[a], game.questions()[q]));
  Graph g(std::move(labels));
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t u = q * na + a;
      if (!game.wins(a, a, q, q)) g.add_edge(u, u);
      for (std::size_t q2 = q; q2 < nq; ++q2) {
        for (std::size_t a2 = (q2 == q ? a + 1 : 0); a2 < na; ++a2) {
          if (!game.wins(a, a2, q, q2) || !game.wins(a2, a, q2, q)) {
            g.add_edge(u, q2 * na + a2);
          }
        }
      }
    }
  }
  std::vector<CliqueBlock> blocks;
  for (std::size_t q = 0; q < nq; ++q) {
    CliqueBlock block{game.questions()[q], {}};
    for (std::size_t a = 0; a < na; ++a) block.vertices.push_back(q * na + a);
    blocks.push_back(std::move(block));
  }
  g.set_clique_partition(std::move(blocks));
  return g;
}

Graph homomorphic_product(const Graph& x, const Graph& y) {
  if (x.has_loops() || y.has_loops()) {
    throw InvalidInput("homomorphic product needs loop-free graphs");
  }
  const std::size_t nx = x.num_vertices();
  const std::size_t ny = y.num_vertices();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
  Graph g(std::move(labels));
  for (std::size_t u = 0; u < nx * ny; ++u) {
    for (std::size_t v = u + 1; v < nx * ny; ++v) {
      const std::size_t xu = u / ny, yu = u % ny, xv = v / ny, yv = v % ny;
      const bool edge = (xu == xv && yu != yv) ||
                        (x.adjacent(xu, xv) && (yu == yv || !y.adjacent(yu, yv)));
      if (edge) g.add_edge(u, v);
    }
  }
  return g;
}

ReductionArtifact reduce_pme_to_qindependence(const NonlocalGame& game) {
  auto extended = synchronous_extension(game);
  Graph graph = game_graph(extended);
  const std::size_t nq = game.num_alice_questions();
  const std::size_t nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers();
  const std::size_t nb = game.num_bob_answers();
  Provenance p;
  for (std::size_t q = 0; q < nq; ++q) {
    p.alice_questions.push_back(q);
    p.extended_questions.push_back({Origin::Side::kAlice, q});
  }
  for (std::size_t r = 0; r < nr; ++r) {
    p.bob_questions.push_back(nq + r);
    p.extended_questions.push_back({Origin::Side::kBob, r});
  }
  for (std::size_t a = 0; a < na; ++a) {
    p.alice_answers.push_back(a);
    p.extended_answers.push_back({Origin::Side::kAlice, a});
  }
  for (std::size_t b = 0; b < nb; ++b) {
    p.bob_answers.push_back(na + b);
    p.extended_answers.push_back({Origin::Side::kBob, b});
  }
  return {std::move(extended), std::move(graph), nq + nr, std::move(p)};
}

namespace {

void require_valid(const NonlocalGame& game, const PMEStrategy& strategy,
                   const Tolerances& tol) {
  const auto diagnostics = validate_pme(game, strategy, tol);
  if (diagnostics.empty()) return;
  const auto& first = diagnostics.front();
  if (first.kind == MeasurementDiagnostic::Kind::kShape) {
    throw InvalidInput("strategy does not match the game: " + first.describe(game));
  }
  throw ValidationError("strategy is not projective: " + first.describe(game));
}

}  // namespace

PMEStrategy lift_pme_strategy(const NonlocalGame& game,
                              const PMEStrategy& strategy,
                              const Tolerances& tol) {
  require_valid(game, strategy, tol);
  const std::size_t nq = game.num_alice_questions();
  const std::size_t nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers();
  const std::size_t nb = game.num_bob_answers();
  const auto d = static_cast<Eigen::Index>(strategy.dimension);
  const Matrix zero = Matrix::Zero(d, d);
  PMEStrategy out;
  out.dimension = strategy.dimension;
  out.alice.assign(nq + nr, std::vector<Matrix>(na + nb, zero));
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t a = 0; a < na; ++a) out.alice[q][a] = strategy.alice[q][a];
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t b = 0; b < nb; ++b)
      out.alice[nq + r][na + b] = strategy.bob_projector(r, b).transpose();
  return out;
}

IndependentSetStrategy strategy_to_is_game(const SynchronousGame& game,
                                           const PMEStrategy& strategy,
                                           const Tolerances& tol) {
  if (!is_symmetric(game)) {
    throw InvalidInput("strategy_to_is_game needs a symmetric game");
  }
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      if (!game.wins(a, a, q, q)) {
        throw InvalidInput("strategy_to_is_game needs V(a,a|q,q) = 1; fails at a=" +
                           game.answers()[a] + ", q=" + game.questions()[q]);
      }
    }
  }
  require_valid(game.game(), strategy, tol);
  Graph graph = game_graph(game);
  auto is_game = make_independent_set_game(graph, nq, game.game().distribution());

  const auto d = static_cast<Eigen::Index>(strategy.dimension);
  const Matrix identity = Matrix::Identity(d, d);
  const std::size_t n = graph.num_vertices();
  auto relabel = [&](auto&& projector) {
    Measurements out(nq, std::vector<Matrix>(n, Matrix::Zero(d, d)));
    for (std::size_t q = 0; q < nq; ++q) {
      Matrix remainder = identity;
      for (std::size_t a = 0; a < na; ++a) {
        out[q][q * na + a] = projector(q, a);
        remainder -= out[q][q * na + a];
      }
      out[q][q * na] += remainder;
    }
    return out;
  };
  PMEStrategy mapped;
  mapped.dimension = strategy.dimension;
  mapped.alice = relabel([&](std::size_t q, std::size_t a) -> Matrix {
    return strategy.alice[q][a];
  });
  if (!strategy.transpose_paired()) {
    mapped.bob = relabel([&](std::size_t q, std::size_t a) -> Matrix {
      return (*strategy.bob)[q][a];
    });
  }
  return {std::move(is_game), std::move(graph), std::move(mapped)};
}

}  // namespace nlg
