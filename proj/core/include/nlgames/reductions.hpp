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

#ifndef NLGAMES_REDUCTIONS_HPP_
#define NLGAMES_REDUCTIONS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "nlgames/game.hpp"
#include "nlgames/graph.hpp"
#include "nlgames/quantum.hpp"

namespace nlg {

// Disjointness tags: "(x,0)" for Alice-side labels, "(x,1)" for Bob-side.
std::string alice_tag(const std::string& label);
std::string bob_tag(const std::string& label);

// Synchronous extension. Questions are Alice's tagged questions followed by
// Bob's, answers likewise; the distribution is uniform on the extended
// question pairs. Cells are zero when a player answers a question with the
// other side's answer, require equal answers on equal questions, copy V in
// both orders for mixed question pairs, and are one otherwise.
SynchronousGame synchronous_extension(const NonlocalGame& game);

// Game graph on (a, q), question-major. Distinct vertices are adjacent iff
// V(a, a' | q, q') = 0 or V(a', a | q', q) = 0; (a, q) carries a loop iff
// V(a, a | q, q) = 0. The clique partition has one block per question,
// named by the question label.
Graph game_graph(const SynchronousGame& game);

// Homomorphic product on (x, y), x-major: (x, y) ~ (x', y') iff
// [x = x' and y != y'] or [x ~ x' and y !~ y'].
Graph homomorphic_product(const Graph& x, const Graph& y);

// Where an extended question or answer came from.
struct Origin {
  enum class Side { kAlice, kBob };
  Side side;
  std::size_t index;

  friend bool operator==(const Origin&, const Origin&) = default;
};

struct Provenance {
  std::vector<std::size_t> alice_questions;  // original q -> extended index
  std::vector<std::size_t> bob_questions;
  std::vector<std::size_t> alice_answers;
  std::vector<std::size_t> bob_answers;
  std::vector<Origin> extended_questions;  // extended index -> original
  std::vector<Origin> extended_answers;

  // Game-graph vertex of extended (answer, question).
  std::size_t vertex(std::size_t answer, std::size_t question) const {
    return question * extended_answers.size() + answer;
  }
};

struct ReductionArtifact {
  SynchronousGame extended_game;
  Graph game_graph;
  std::size_t target_t;  // |Q| + |R|
  Provenance provenance;
};

ReductionArtifact reduce_pme_to_qindependence(const NonlocalGame& game);

// PME strategy for synchronous_extension(game): on an Alice-origin question
// a player measures Alice's projectors (Bob transposed), on a Bob-origin
// question Bob's projectors (Alice transposed). Cross-role answers get the
// zero projector. The result is transpose-paired. Throws InvalidInput on
// shape mismatch and ValidationError on non-projective input.
PMEStrategy lift_pme_strategy(const NonlocalGame& game,
                              const PMEStrategy& strategy,
                              const Tolerances& tol = {});

struct IndependentSetStrategy {
  SynchronousGame is_game;  // (game_graph(game), |Q|), game's distribution
  Graph graph;
  PMEStrategy strategy;
};

// Maps answer a on question q to vertex (a, q); the i-th independent-set
// question is the i-th question of the game. Any incompleteness remainder
// goes to the first vertex of the question's block. Requires a symmetric
// game whose game graph has no loops.
IndependentSetStrategy strategy_to_is_game(const SynchronousGame& game,
                                           const PMEStrategy& strategy,
                                           const Tolerances& tol = {});

}  // namespace nlg

#endif  // NLGAMES_REDUCTIONS_HPP_
