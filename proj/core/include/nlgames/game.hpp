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

#ifndef NLGAMES_GAME_HPP_
#define NLGAMES_GAME_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nlg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string to_string(const Rational& r);

class Graph;

// A finite two-player one-round game: the referee samples (q, r) from an
// exact rational distribution, the players answer (a, b), and they win iff
// the predicate V(a, b | q, r) is 1.
//
// Labels are opaque strings; every set is ordered by declaration. The
// distribution is stored row-major over (q, r) and the predicate row-major
// over (a, b, q, r).
class NonlocalGame {
 public:
  // Throws InvalidInput if a set is empty or has duplicate labels, the
  // table sizes do not match, an entry is negative, or the distribution does
  // not sum to exactly 1.
  NonlocalGame(std::vector<std::string> alice_questions,
               std::vector<std::string> bob_questions,
               std::vector<std::string> alice_answers,
               std::vector<std::string> bob_answers,
               std::vector<Rational> distribution,
               std::vector<std::uint8_t> predicate);

  const std::vector<std::string>& alice_questions() const { return alice_questions_; }
  const std::vector<std::string>& bob_questions() const { return bob_questions_; }
  const std::vector<std::string>& alice_answers() const { return alice_answers_; }
  const std::vector<std::string>& bob_answers() const { return bob_answers_; }

  std::size_t num_alice_questions() const { return alice_questions_.size(); }
  std::size_t num_bob_questions() const { return bob_questions_.size(); }
  std::size_t num_alice_answers() const { return alice_answers_.size(); }
  std::size_t num_bob_answers() const { return bob_answers_.size(); }

  const Rational& probability(std::size_t q, std::size_t r) const {
    return distribution_[q * bob_questions_.size() + r];
  }
  bool wins(std::size_t a, std::size_t b, std::size_t q, std::size_t r) const {
    return predicate_[predicate_index(a, b, q, r)] != 0;
  }
  std::size_t predicate_index(std::size_t a, std::size_t b, std::size_t q,
                              std::size_t r) const {
    return ((a * bob_answers_.size() + b) * alice_questions_.size() + q) *
               bob_questions_.size() +
           r;
  }

  const std::vector<Rational>& distribution() const { return distribution_; }
  const std::vector<std::uint8_t>& predicate() const { return predicate_; }

  // True iff every question pair has probability 1 / (|Q| |R|).
  bool has_uniform_distribution() const;

  std::optional<std::size_t> alice_question_index(const std::string& label) const;
  std::optional<std::size_t> bob_question_index(const std::string& label) const;
  std::optional<std::size_t> alice_answer_index(const std::string& label) const;
  std::optional<std::size_t> bob_answer_index(const std::string& label) const;

  friend bool operator==(const NonlocalGame&, const NonlocalGame&) = default;

 private:
  std::vector<std::string> alice_questions_;
  std::vector<std::string> bob_questions_;
  std::vector<std::string> alice_answers_;
  std::vector<std::string> bob_answers_;
  std::vector<Rational> distribution_;
  std::vector<std::uint8_t> predicate_;
};

// Uniform distribution over an nq x nr grid.
std::vector<Rational> uniform_distribution(std::size_t nq, std::size_t nr);

struct DeterministicStrategy {
  std::vector<std::size_t> alice;  // question index -> answer index
  std::vector<std::size_t> bob;

  friend bool operator==(const DeterministicStrategy&,
                         const DeterministicStrategy&) = default;
};

struct SyncViolation {
  enum class Kind {
    kQuestionSetsDiffer,
    kAnswerSetsDiffer,
    kZeroDiagonalProbability,  // pi(q, q) = 0
    kDisagreementAccepted,     // V(a, b | q, q) = 1 with a != b
  };
  Kind kind;
  std::size_t question = 0;
  std::size_t alice_answer = 0;
  std::size_t bob_answer = 0;

  std::string describe(const NonlocalGame& game) const;
  friend bool operator==(const SyncViolation&, const SyncViolation&) = default;
};

// Every violated synchronicity condition: label-identical question and
// answer sets, pi(q, q) > 0, and V(a, b | q, q) = 0 for a != b.
std::vector<SyncViolation> synchronous_violations(const NonlocalGame& game);

// A game that has passed synchronous validation. Only validate_synchronous
// creates one, so holding a SynchronousGame is the witness.
class SynchronousGame {
 public:
  const NonlocalGame& game() const { return game_; }
  std::size_t num_questions() const { return game_.num_alice_questions(); }
  std::size_t num_answers() const { return game_.num_alice_answers(); }
  const std::vector<std::string>& questions() const { return game_.alice_questions(); }
  const std::vector<std::string>& answers() const { return game_.alice_answers(); }
  bool wins(std::size_t a, std::size_t b, std::size_t q, std::size_t r) const {
    return game_.wins(a, b, q, r);
  }

 private:
  explicit SynchronousGame(NonlocalGame game) : game_(std::move(game)) {}
  friend std::variant<SynchronousGame, std::vector<SyncViolation>>
  validate_synchronous(NonlocalGame game);

  NonlocalGame game_;
};

std::variant<SynchronousGame, std::vector<SyncViolation>> validate_synchronous(
    NonlocalGame game);

// As validate_synchronous, but throws InvalidInput listing the violations.
SynchronousGame require_synchronous(NonlocalGame game);

// V(a, a' | q, q') == V(a', a | q', q) for every cell.
bool is_symmetric(const SynchronousGame& game);

// Throws InvalidInput if the strategy does not match the game's sets.
Rational eval_deterministic(const NonlocalGame& game,
                            const DeterministicStrategy& strategy);

struct ClassicalOptions {
  // Upper limit on predicate evaluations: |A|^|Q| * |Q| * |R| * |B|.
  long double budget = 1e8L;
};

struct ClassicalValue {
  Rational value;
  DeterministicStrategy strategy;
};

// Number of predicate evaluations classical_value performs on this game.
long double classical_value_cost(const NonlocalGame& game);

// Exact classical value with the lexicographically smallest maximizing
// (f_A, f_B). Throws BudgetExceeded when classical_value_cost exceeds the
// budget.
ClassicalValue classical_value(const NonlocalGame& game,
                               const ClassicalOptions& options = {});

// (X, t) independent set game: questions "1".."t", answers the vertices of X.
SynchronousGame make_independent_set_game(const Graph& graph, std::size_t t);

// Same construction with an explicit distribution over [t] x [t].
SynchronousGame make_independent_set_game(const Graph& graph, std::size_t t,
                                          std::vector<Rational> distribution);

// (X, Y) homomorphism game: questions are vertices of X, answers vertices
// of Y, uniform distribution.
SynchronousGame make_homomorphism_game(const Graph& x, const Graph& y);

// CHSH with disjoint question labels x0,x1 (Alice) and y0,y1 (Bob).
NonlocalGame make_chsh();

// Mermin-Peres magic square: rows r1..r3 answered with even-parity strings,
// columns c1..c3 answered with odd-parity strings.
NonlocalGame make_magic_square();

}  // namespace nlg

#endif  // NLGAMES_GAME_HPP_
