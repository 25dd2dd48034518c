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

#include "nlgames/quantum.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "nlgames/errors.hpp"
#include "nlgames/packing_search.hpp"
#include "nlgames/reductions.hpp"
#include "support/oracles.hpp"

namespace nlg {
namespace {

using testing::Rng;

PMEStrategy random_pme(Rng& rng, const SynchronousGame& game, std::size_t d) {
  PMEStrategy s;
  s.dimension = d;
  s.alice = testing::random_projective_measurements(rng, game.num_questions(),
                                                    game.num_answers(), d);
  return s;
}

// Scalar strategy answering `choice[q]` on question q.
PMEStrategy scalar_strategy(const std::vector<std::size_t>& choice, std::size_t answers) {
  PMEStrategy s;
  s.dimension = 1;
  for (std::size_t a : choice) {
    std::vector<Matrix> row(answers, Matrix::Zero(1, 1));
    row[a](0, 0) = 1.0;
    s.alice.push_back(row);
  }
  return s;
}

TEST(EvalPmeTest, MagicSquareStrategyIsPerfect) {
  const NonlocalGame g = make_magic_square();
  const PMEStrategy s = magic_square_strategy();
  EXPECT_TRUE(validate_pme(g, s).empty());
  EXPECT_NEAR(eval_pme(g, s), 1.0, 1e-9);
}

TEST(EvalPmeTest, ScalarStrategiesReproduceDeterministicValues) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto game = testing::random_synchronous_game(rng, 3, 3, 0.4);
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    std::vector<std::size_t> choice = {pick(rng), pick(rng), pick(rng)};
    const double quantum = eval_pme(game.game(), scalar_strategy(choice, 3));
    const Rational exact = eval_deterministic(game.game(), {choice, choice});
    EXPECT_NEAR(quantum, exact.convert_to<double>(), 1e-12);
  }
}

TEST(EvalPmeTest, IdentityHasUnitProbability) {
  PMEStrategy s;
  s.dimension = 3;
  s.alice = {{Matrix::Identity(3, 3)}};
  EXPECT_NEAR(pme_probability(s, 0, 0, 0, 0), 1.0, 1e-15);
}

TEST(EvalPmeTest, TransposePairedIsSymmetric) {
  Rng rng(2);
  const auto game = testing::random_synchronous_game(rng, 3, 3, 0.3);
  const PMEStrategy s = random_pme(rng, game, 3);
  for (std::size_t q = 0; q < 3; ++q)
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
          EXPECT_NEAR(pme_probability(s, q, r, a, b), pme_probability(s, r, q, b, a), 1e-12);
}

TEST(EvalPmeTest, ShapeErrors) {
  const NonlocalGame g = make_magic_square();
  PMEStrategy s = magic_square_strategy();
  s.alice.pop_back();
  EXPECT_THROW(eval_pme(g, s), InvalidInput);
  EXPECT_FALSE(validate_pme(g, s).empty());
}

TEST(ValidatePmeTest, NamesNonIdempotentCell) {
  const NonlocalGame g = make_magic_square();
  PMEStrategy s = magic_square_strategy();
  s.alice[1][2] *= 0.5;
  const auto diagnostics = validate_pme(g, s);
  ASSERT_FALSE(diagnostics.empty());
  EXPECT_EQ(diagnostics.front().kind, MeasurementDiagnostic::Kind::kNotIdempotent);
  EXPECT_EQ(diagnostics.front().question, 1u);
  EXPECT_EQ(diagnostics.front().answer, 2u);
  EXPECT_NE(diagnostics.front().describe(g).find("r2"), std::string::npos);
}

TEST(EvalGeneralTest, AgreesWithPme) {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto game = testing::random_synchronous_game(rng, 3, 2, 0.3);
    const PMEStrategy s = random_pme(rng, game, 1 + trial % 4);
    const GeneralStrategy g = as_general(s);
    EXPECT_TRUE(validate_general(game.game(), g).empty());
    EXPECT_NEAR(eval_general(game.game(), g), eval_pme(game.game(), s), 1e-10);
  }
  const GeneralStrategy ms = as_general(magic_square_strategy());
  EXPECT_NEAR(eval_general(make_magic_square(), ms), 1.0, 1e-10);
}

TEST(EvalGeneralTest, ProductStateWithDeterministicPovms) {
  const NonlocalGame chsh = make_chsh();
  GeneralStrategy s;
  s.alice_dimension = s.bob_dimension = 1;
  s.state = Vector::Ones(1);
  const Matrix one = Matrix::Ones(1, 1), zero = Matrix::Zero(1, 1);
  s.alice = {{one, zero}, {one, zero}};
  s.bob = {{one, zero}, {one, zero}};
  EXPECT_DOUBLE_EQ(eval_general(chsh, s), 0.75);
}

TEST(EvalGeneralTest, ValuesStayInUnitInterval) {
  Rng rng(6);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const NonlocalGame game = testing::random_nonlocal_game(rng, 2, 3, 2, 2);
    GeneralStrategy s;
    s.alice_dimension = 2;
    s.bob_dimension = 3;
    s.state = Vector(6);
    for (Eigen::Index i = 0; i < 6; ++i) s.state(i) = Complex(normal(rng), normal(rng));
    s.state.normalize();
    s.alice = testing::random_projective_measurements(rng, 2, 2, 2);
    s.bob = testing::random_projective_measurements(rng, 3, 2, 3);
    ASSERT_TRUE(validate_general(game, s).empty());
    const double v = eval_general(game, s);
    EXPECT_GE(v, -1e-10);
    EXPECT_LE(v, 1 + 1e-10);
  }
}

TEST(ValidateGeneralTest, FlagsNegativeElementsAndNorm) {
  const NonlocalGame chsh = make_chsh();
  GeneralStrategy s;
  s.alice_dimension = s.bob_dimension = 1;
  s.state = Vector::Constant(1, Complex(2.0, 0.0));
  const Matrix one = Matrix::Ones(1, 1);
  s.alice = {{2.0 * one, -one}, {one, 0.0 * one}};
  s.bob = {{one, 0.0 * one}, {one, 0.0 * one}};
  bool negative = false, norm = false;
  for (const auto& d : validate_general(chsh, s)) {
    negative |= d.kind == MeasurementDiagnostic::Kind::kNotPositive;
    norm |= d.kind == MeasurementDiagnostic::Kind::kStateNorm;
  }
  EXPECT_TRUE(negative);
  EXPECT_TRUE(norm);
}

// Two copies of the lifted magic-square strategy, the second rotated by a
// random unitary, on a state that weights the copies unevenly.
GeneralStrategy uneven_magic_sum(Rng& rng, double weight) {
  const NonlocalGame ms = make_magic_square();
  const auto ext = synchronous_extension(ms);
  const PMEStrategy lifted = lift_pme_strategy(ms, magic_square_strategy());
  const Matrix u = testing::random_unitary_matrix(rng, 4);
  GeneralStrategy s;
  s.alice_dimension = s.bob_dimension = 8;
  s.state = Vector::Zero(64);
  for (int i = 0; i < 4; ++i) {
    s.state(i * 8 + i) = std::sqrt(weight / 4);
    s.state((4 + i) * 8 + 4 + i) = std::sqrt((1 - weight) / 4);
  }
  const std::size_t nq = ext.num_questions(), na = ext.num_answers();
  s.alice.assign(nq, std::vector<Matrix>(na, Matrix::Zero(8, 8)));
  s.bob = s.alice;
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t a = 0; a < na; ++a) {
      const Matrix& p = lifted.alice[q][a];
      const Matrix rotated = u * p * u.adjoint();
      s.alice[q][a].topLeftCorner(4, 4) = p;
      s.alice[q][a].bottomRightCorner(4, 4) = rotated;
      s.bob[q][a].topLeftCorner(4, 4) = p.transpose();
      s.bob[q][a].bottomRightCorner(4, 4) = rotated.transpose();
    }
  return s;
}

TEST(PmeFromPerfectTest, FixedPointOnPmeInput) {
  const NonlocalGame ms = make_magic_square();
  const auto ext = synchronous_extension(ms);
  const PMEStrategy lifted = lift_pme_strategy(ms, magic_square_strategy());
  const PMEStrategy out = pme_from_perfect(ext, as_general(lifted), 1e-9);
  EXPECT_EQ(out.dimension, 4u);
  EXPECT_NEAR(eval_pme(ext.game(), out), 1.0, 1e-9);
}

TEST(PmeFromPerfectTest, UnevenDirectSum) {
  Rng rng(8);
  const auto ext = synchronous_extension(make_magic_square());
  const GeneralStrategy s = uneven_magic_sum(rng, 0.8);
  ASSERT_NEAR(eval_general(ext.game(), s), 1.0, 1e-9);
  const PMEStrategy out = pme_from_perfect(ext, s, 1e-7);
  EXPECT_EQ(out.dimension, 8u);
  EXPECT_TRUE(validate_pme(ext.game(), out).empty());
  EXPECT_NEAR(eval_pme(ext.game(), out), 1.0, 1e-8);
}

TEST(PmeFromPerfectTest, PaddedDeterministicBlock) {
  // (C5, 2) independent set game: five deterministic perfect strategies on
  // the diagonal of a non-maximally entangled state.
  const auto game = make_independent_set_game(Graph::cycle(5), 2);
  const std::vector<std::vector<std::size_t>> choices = {{0, 2}, {1, 3}, {2, 4}, {3, 0}, {4, 1}};
  GeneralStrategy s;
  s.alice_dimension = s.bob_dimension = 5;
  s.state = Vector::Zero(25);
  const double weights[5] = {0.1, 0.15, 0.2, 0.25, 0.3};
  s.alice.assign(2, std::vector<Matrix>(5, Matrix::Zero(5, 5)));
  for (std::size_t k = 0; k < 5; ++k) {
    s.state(static_cast<Eigen::Index>(k * 5 + k)) = std::sqrt(weights[k]);
    for (std::size_t q = 0; q < 2; ++q) {
      s.alice[q][choices[k][q]](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
    }
  }
  s.bob = s.alice;
  ASSERT_NEAR(eval_general(game.game(), s), 1.0, 1e-12);
  const PMEStrategy out = pme_from_perfect(game, s, 1e-9);
  EXPECT_EQ(out.dimension, 5u);
  EXPECT_NEAR(eval_pme(game.game(), out), 1.0, 1e-8);
}

TEST(PmeFromPerfectTest, ResidualStatesOrthogonalOnLosingCells) {
  Rng rng(9);
  const auto ext = synchronous_extension(make_magic_square());
  const GeneralStrategy s = uneven_magic_sum(rng, 0.3);
  const Measurements rho = residual_states(s);
  const std::size_t nq = ext.num_questions(), na = ext.num_answers();
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t r = 0; r < nq; ++r)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b)
          if (!ext.wins(a, b, q, r)) {
            EXPECT_LE(std::abs((rho[q][a] * rho[r][b]).trace()), 1e-9);
          }
}

TEST(PmeFromPerfectTest, RejectsImperfectInput) {
  Rng rng(10);
  const auto game = testing::random_synchronous_game(rng, 3, 3, 0.5);
  const GeneralStrategy s = as_general(random_pme(rng, game, 2));
  ASSERT_LT(eval_general(game.game(), s), 0.999);
  EXPECT_THROW(pme_from_perfect(game, s, 1e-6), InvalidInput);
}

TEST(PackingTest, ValidateExamples) {
  const Graph k2 = Graph::complete(2);
  ProjectivePacking zero{2, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}};
  const auto r0 = validate_packing(k2, zero);
  EXPECT_TRUE(r0.valid());
  EXPECT_EQ(r0.value, 0.0);

  ProjectivePacking both{2, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
  const auto r1 = validate_packing(k2, both);
  ASSERT_EQ(r1.violations.size(), 1u);
  EXPECT_EQ(r1.violations.front().kind, PackingViolation::Kind::kOverlap);

  const Graph c5 = Graph::cycle(5);
  const std::vector<std::size_t> set = {1, 3};
  const auto r2 = validate_packing(c5, packing_from_independent_set(c5, set));
  EXPECT_TRUE(r2.valid());
  EXPECT_EQ(r2.value, 2.0);
}

TEST(PackingTest, LoopsNeedZeroProjectors) {
  Graph g = Graph::empty(2);
  g.add_edge(0, 0);
  ProjectivePacking p{1, {Matrix::Ones(1, 1), Matrix::Ones(1, 1)}};
  EXPECT_FALSE(validate_packing(g, p).valid());
  p.projectors[0].setZero();
  EXPECT_TRUE(validate_packing(g, p).valid());
}

TEST(PackingTest, MagicSquarePipeline) {
  const NonlocalGame ms = make_magic_square();
  const auto ext = synchronous_extension(ms);
  const PMEStrategy lifted = lift_pme_strategy(ms, magic_square_strategy());
  const ProjectivePacking p = packing_from_strategy(ext, lifted);
  const Graph graph = game_graph(ext);
  EXPECT_EQ(graph.num_vertices(), 48u);
  const auto report = validate_packing(graph, p);
  EXPECT_TRUE(report.valid());
  EXPECT_NEAR(report.value, 6.0, 1e-8);
  const PMEStrategy back = strategy_from_packing(ext, p, 1e-6);
  EXPECT_NEAR(eval_pme(ext.game(), back), 1.0, 1e-8);
}

TEST(PackingTest, ScalarPerfectStrategyGivesZeroOnePacking) {
  const auto game = make_independent_set_game(Graph::cycle(5), 2);
  const ProjectivePacking p = packing_from_strategy(game, scalar_strategy({0, 2}, 5));
  EXPECT_DOUBLE_EQ(p.value(), 2.0);
  for (const auto& m : p.projectors) {
    const double x = m(0, 0).real();
    EXPECT_TRUE(x == 0.0 || x == 1.0);
  }
}

TEST(PackingTest, StrategyFromPackingRejectsLowValue) {
  const auto game = make_independent_set_game(Graph::cycle(5), 2);
  const Graph graph = game_graph(game);
  // One-dimensional packing of value 1 on a 2-question game.
  ProjectivePacking p{1, std::vector<Matrix>(10, Matrix::Zero(1, 1))};
  p.projectors[0](0, 0) = 1.0;
  EXPECT_THROW(strategy_from_packing(game, p, 0.5), InvalidInput);
  // From a maximum independent set the packing reads back a perfect strategy.
  const auto alpha = independence_number(graph);
  const PMEStrategy s = strategy_from_packing(game, packing_from_independent_set(graph, alpha.witness), 1e-9);
  EXPECT_NEAR(eval_pme(game.game(), s), 1.0, 1e-12);
}

TEST(PackingTest, PackingFromImperfectStrategyThrows) {
  Rng rng(12);
  const auto game = testing::random_synchronous_game(rng, 3, 3, 0.5);
  EXPECT_THROW(packing_from_strategy(game, random_pme(rng, game, 2)), InvalidInput);
}

TEST(EntangledBoundTest, Examples) {
  const auto game = make_independent_set_game(Graph::cycle(5), 3);
  const Graph graph = game_graph(game);
  const auto alpha = independence_number(graph);
  const auto bound = entangled_lower_bound(game, packing_from_independent_set(graph, alpha.witness));
  const double expected = std::pow(static_cast<double>(alpha.size) / 3.0, 2);
  EXPECT_NEAR(bound.bound, expected, 1e-15);
  EXPECT_GE(eval_pme(game.game(), bound.witness), bound.bound - 1e-9);

  const auto ext = synchronous_extension(make_magic_square());
  const auto full = entangled_lower_bound(
      ext, packing_from_strategy(ext, lift_pme_strategy(make_magic_square(), magic_square_strategy())));
  EXPECT_NEAR(full.bound, 1.0, 1e-8);
  EXPECT_NEAR(eval_pme(ext.game(), full.witness), 1.0, 1e-8);
}

TEST(EntangledBoundTest, RandomPackings) {
  Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto game = testing::random_synchronous_game(rng, 3, 3, 0.3);
    const Graph graph = game_graph(game);
    const ProjectivePacking p = testing::random_valid_packing(rng, graph, 1 + trial % 4);
    ASSERT_TRUE(validate_packing(graph, p).valid());
    const auto bound = entangled_lower_bound(game, p);
    EXPECT_GE(eval_pme(game.game(), bound.witness), bound.bound - 1e-9);
    EXPECT_LE(bound.gamma, 3 + 1e-8);
  }
}

TEST(EntangledBoundTest, RequiresUniformDistribution) {
  const Graph c5 = Graph::cycle(5);
  const auto game = make_independent_set_game(
      c5, 2, {Rational(1, 2), 0, Rational(1, 4), Rational(1, 4)});
  const Graph graph = game_graph(game);
  const std::vector<std::size_t> set = {0};
  EXPECT_THROW(entangled_lower_bound(game, packing_from_independent_set(graph, set)),
               InvalidInput);
}

}  // namespace
}  // namespace nlg
