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

#ifndef NLGAMES_QUANTUM_HPP_
#define NLGAMES_QUANTUM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlgames/game.hpp"
#include "nlgames/graph.hpp"
#include "nlgames/linalg.hpp"

namespace nlg {

// Numerical tolerances shared by the quantum and packing code.
struct Tolerances {
  double proj = 1e-8;     // Frobenius: Hermitian, idempotent, complete
  double orth = 1e-8;     // tr(P_u P_v) on edges
  double supp = 1e-7;     // eigenvalue cutoff for supports
  double perfect = 1e-6;  // gate for "perfect" inputs
  double psd = 1e-8;      // smallest allowed POVM eigenvalue is -psd
};

// Measurements indexed [question][answer].
using Measurements = std::vector<std::vector<Matrix>>;

// Projective measurements on the canonical maximally entangled state
// phi = d^{-1/2} sum_i e_i (x) e_i. When `bob` is empty Bob measures the
// entrywise transposes of Alice's projectors, which needs |Q| = |R| and
// |A| = |B|.
struct PMEStrategy {
  std::size_t dimension = 0;
  Measurements alice;
  std::optional<Measurements> bob;

  bool transpose_paired() const { return !bob.has_value(); }
  Matrix bob_projector(std::size_t r, std::size_t b) const {
    return bob ? (*bob)[r][b] : Matrix(alice[r][b].transpose());
  }
};

// Arbitrary pure state in C^{d_A} (x) C^{d_B} (index i * d_B + j) with one
// POVM per question for each player.
struct GeneralStrategy {
  std::size_t alice_dimension = 0;
  std::size_t bob_dimension = 0;
  Vector state;
  Measurements alice;
  Measurements bob;
};

// Projector per graph vertex, in vertex order.
struct ProjectivePacking {
  std::size_t dimension = 0;
  std::vector<Matrix> projectors;

  // (1/d) sum_u tr(P_u)
  double value() const;
};

struct MeasurementDiagnostic {
  enum class Kind {
    kShape,         // wrong number of questions/answers or matrix size
    kNotHermitian,
    kNotIdempotent,
    kNotPositive,
    kIncomplete,    // answers for a question do not sum to I
    kStateNorm,
  };
  enum class Party { kAlice, kBob, kState };
  Kind kind;
  Party party;
  std::size_t question = 0;
  std::size_t answer = 0;
  double residual = 0.0;

  std::string describe(const NonlocalGame& game) const;
};

// Shape plus Hermitian/idempotent/completeness checks on every projector.
std::vector<MeasurementDiagnostic> validate_pme(const NonlocalGame& game,
                                                const PMEStrategy& strategy,
                                                const Tolerances& tol = {});

// Shape, positivity, completeness and state norm.
std::vector<MeasurementDiagnostic> validate_general(
    const NonlocalGame& game, const GeneralStrategy& strategy,
    const Tolerances& tol = {});

// Conditional winning probability for each question pair, row-major (q, r).
// Throws InvalidInput on shape mismatch.
std::vector<double> pme_pair_wins(const NonlocalGame& game,
                                  const PMEStrategy& strategy);
std::vector<double> general_pair_wins(const NonlocalGame& game,
                                      const GeneralStrategy& strategy);

// (1/d) Re tr(P_aq B_br^T).
double pme_probability(const PMEStrategy& strategy, std::size_t q,
                       std::size_t r, std::size_t a, std::size_t b);

// Raw winning probability (not clamped). Summation is question-major,
// answer-minor.
double eval_pme(const NonlocalGame& game, const PMEStrategy& strategy);
double eval_general(const NonlocalGame& game, const GeneralStrategy& strategy);

// The same strategy written as a GeneralStrategy on the canonical
// maximally entangled state.
GeneralStrategy as_general(const PMEStrategy& strategy);

// Bob's residual states rho_aq = tr_A((M_aq (x) I) psi psi*), [q][a].
Measurements residual_states(const GeneralStrategy& strategy);

// Perfect-strategy conversion for synchronous games: restrict to Bob's
// Schmidt support, take supports of the residual states as Alice's
// projectors, Bob uses transposes. Throws InvalidInput if the input wins
// with probability below 1 - tolerance or is not a valid strategy, and
// ValidationError if the supports are not complete.
PMEStrategy pme_from_perfect(const SynchronousGame& game,
                             const GeneralStrategy& strategy, double tolerance,
                             const Tolerances& tol = {});

struct PackingViolation {
  enum class Kind { kShape, kNotHermitian, kNotIdempotent, kOverlap };
  Kind kind;
  std::size_t u = 0;
  std::size_t v = 0;  // equal to u except for overlaps on edges
  double residual = 0.0;

  std::string describe(const Graph& graph) const;
};

struct PackingReport {
  double value = 0.0;
  std::vector<PackingViolation> violations;
  bool valid() const { return violations.empty(); }
};

// Checks idempotence per vertex and tr(P_u P_v) <= orth on every edge
// (loops included).
PackingReport validate_packing(const Graph& graph,
                               const ProjectivePacking& packing,
                               const Tolerances& tol = {});

// Packing of the game graph with P_aq on vertex (a, q). Throws InvalidInput
// if the strategy is not perfect within tol.perfect, ValidationError if the
// packing does not validate.
ProjectivePacking packing_from_strategy(const SynchronousGame& game,
                                        const PMEStrategy& strategy,
                                        const Tolerances& tol = {});

// Reads the measurements back off a packing of value >= |Q| - tolerance.
// Throws InvalidInput below that value or on an invalid packing, and
// ValidationError when some question's projectors do not sum to I.
PMEStrategy strategy_from_packing(const SynchronousGame& game,
                                  const ProjectivePacking& packing,
                                  double tolerance, const Tolerances& tol = {});

struct EntangledBound {
  double bound = 0.0;  // gamma^2 / |Q|^2
  double gamma = 0.0;
  PMEStrategy witness;
};

// Value bound from a packing of the game graph. The witness measures
// (P_aq)_a plus the remainder I - sum_a P_aq, which is reported as the first
// answer. Requires a uniform distribution and a valid packing.
EntangledBound entangled_lower_bound(const SynchronousGame& game,
                                     const ProjectivePacking& packing,
                                     const Tolerances& tol = {});

// Standard d = 4 perfect strategy for make_magic_square() built from Pauli
// observables; Bob measures transposed observables.
PMEStrategy magic_square_strategy();

}  // namespace nlg

#endif  // NLGAMES_QUANTUM_HPP_
