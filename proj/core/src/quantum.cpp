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
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nlgames/errors.hpp"
#include "nlgames/reductions.hpp"

namespace nlg {

double ProjectivePacking::value() const {
  if (dimension == 0) return 0.0;
  double total = 0.0;
  for (const auto& p : projectors) total += p.trace().real();
  return total / static_cast<double>(dimension);
}

std::string MeasurementDiagnostic::describe(const NonlocalGame& game) const {
  std::ostringstream os;
  const bool alice = party == Party::kAlice;
  const auto& questions = alice ? game.alice_questions() : game.bob_questions();
  const auto& answers = alice ? game.alice_answers() : game.bob_answers();
  auto q_label = [&] {
    return question < questions.size() ? questions[question] : std::to_string(question);
  };
  auto a_label = [&] {
    return answer < answers.size() ? answers[answer] : std::to_string(answer);
  };
  const char* who = alice ? "alice" : "bob";
  switch (kind) {
    case Kind::kShape:
      os << who << " measurement shape mismatch at q=" << q_label();
      break;
    case Kind::kNotHermitian:
      os << who << " (q=" << q_label() << ", a=" << a_label()
         << ") not Hermitian, ||M - M*||_F = " << residual;
      break;
    case Kind::kNotIdempotent:
      os << who << " (q=" << q_label() << ", a=" << a_label()
         << ") not idempotent, ||P^2 - P||_F = " << residual;
      break;
    case Kind::kNotPositive:
      os << who << " (q=" << q_label() << ", a=" << a_label()
         << ") not positive, smallest eigenvalue " << -residual;
      break;
    case Kind::kIncomplete:
      os << who << " q=" << q_label()
         << " does not sum to identity, ||sum - I||_F = " << residual;
      break;
    case Kind::kStateNorm:
      os << "state norm differs from 1 by " << residual;
      break;
  }
  return os.str();
}

namespace {

using Kind = MeasurementDiagnostic::Kind;
using Party = MeasurementDiagnostic::Party;

bool check_shape(const Measurements& m, std::size_t questions,
                 std::size_t answers, std::size_t dim, Party party,
                 std::vector<MeasurementDiagnostic>& out) {
  if (m.size() != questions) {
    out.push_back({Kind::kShape, party, m.size()});
    return false;
  }
  for (std::size_t q = 0; q < questions; ++q) {
    bool ok = m[q].size() == answers;
    for (std::size_t a = 0; ok && a < m[q].size(); ++a) {
      ok = m[q][a].rows() == static_cast<Eigen::Index>(dim) &&
           m[q][a].cols() == static_cast<Eigen::Index>(dim);
    }
    if (!ok) {
      out.push_back({Kind::kShape, party, q});
      return false;
    }
  }
  return true;
}

void check_measurements(const Measurements& m, std::size_t dim, Party party,
                        bool projective, const Tolerances& tol,
                        std::vector<MeasurementDiagnostic>& out) {
  const auto d = static_cast<Eigen::Index>(dim);
  for (std::size_t q = 0; q < m.size(); ++q) {
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < m[q].size(); ++a) {
      const Matrix& x = m[q][a];
      sum += x;
      const double herm = hermitian_residual(x);
      if (herm > tol.proj) {
        out.push_back({Kind::kNotHermitian, party, q, a, herm});
        continue;
      }
      if (projective) {
        const double idem = idempotent_residual(x);
        if (idem > tol.proj) out.push_back({Kind::kNotIdempotent, party, q, a, idem});
      } else {
        Eigen::SelfAdjointEigenSolver<Matrix> eig((x + x.adjoint()) / 2.0,
                                                  Eigen::EigenvaluesOnly);
        const double smallest = eig.eigenvalues()(0);
        if (smallest < -tol.psd) out.push_back({Kind::kNotPositive, party, q, a, -smallest});
      }
    }
    const double incomplete = (sum - Matrix::Identity(d, d)).norm();
    if (incomplete > tol.proj) out.push_back({Kind::kIncomplete, party, q, 0, incomplete});
  }
}

void require_shape(const NonlocalGame& game, const PMEStrategy& s) {
  std::vector<MeasurementDiagnostic> out;
  if (s.dimension == 0) throw InvalidInput("strategy dimension must be positive");
  if (!check_shape(s.alice, game.num_alice_questions(), game.num_alice_answers(),
                   s.dimension, Party::kAlice, out)) {
    throw InvalidInput(out.front().describe(game));
  }
  if (s.bob) {
    if (!check_shape(*s.bob, game.num_bob_questions(), game.num_bob_answers(),
                     s.dimension, Party::kBob, out)) {
      throw InvalidInput(out.front().describe(game));
    }
  } else if (game.num_alice_questions() != game.num_bob_questions() ||
             game.num_alice_answers() != game.num_bob_answers()) {
    throw InvalidInput(
        "transpose-paired strategy needs equal question and answer set sizes");
  }
}

// Psi with psi = sum_ij Psi_ij e_i (x) e_j.
Matrix state_matrix(const GeneralStrategy& s) {
  const auto da = static_cast<Eigen::Index>(s.alice_dimension);
  const auto db = static_cast<Eigen::Index>(s.bob_dimension);
  Matrix psi(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) psi(i, j) = s.state(i * db + j);
  return psi;
}

void require_shape(const NonlocalGame& game, const GeneralStrategy& s) {
  std::vector<MeasurementDiagnostic> out;
  if (s.alice_dimension == 0 || s.bob_dimension == 0) {
    throw InvalidInput("strategy dimensions must be positive");
  }
  if (s.state.size() != static_cast<Eigen::Index>(s.alice_dimension * s.bob_dimension)) {
    throw InvalidInput("state has " + std::to_string(s.state.size()) +
                       " entries, expected d_A * d_B = " +
                       std::to_string(s.alice_dimension * s.bob_dimension));
  }
  if (!check_shape(s.alice, game.num_alice_questions(), game.num_alice_answers(),
                   s.alice_dimension, Party::kAlice, out) ||
      !check_shape(s.bob, game.num_bob_questions(), game.num_bob_answers(),
                   s.bob_dimension, Party::kBob, out)) {
    throw InvalidInput(out.front().describe(game));
  }
}

}  // namespace

std::vector<MeasurementDiagnostic> validate_pme(const NonlocalGame& game,
                                                const PMEStrategy& strategy,
                                                const Tolerances& tol) {
  std::vector<MeasurementDiagnostic> out;
  if (strategy.dimension == 0) {
    out.push_back({Kind::kShape, Party::kAlice});
    return out;
  }
  if (!check_shape(strategy.alice, game.num_alice_questions(),
                   game.num_alice_answers(), strategy.dimension, Party::kAlice, out)) {
    return out;
  }
  if (strategy.bob) {
    if (!check_shape(*strategy.bob, game.num_bob_questions(),
                     game.num_bob_answers(), strategy.dimension, Party::kBob, out)) {
      return out;
    }
  } else if (game.num_alice_questions() != game.num_bob_questions() ||
             game.num_alice_answers() != game.num_bob_answers()) {
    out.push_back({Kind::kShape, Party::kBob});
    return out;
  }
  check_measurements(strategy.alice, strategy.dimension, Party::kAlice, true, tol, out);
  if (strategy.bob) {
    check_measurements(*strategy.bob, strategy.dimension, Party::kBob, true, tol, out);
  }
  return out;
}

std::vector<MeasurementDiagnostic> validate_general(
    const NonlocalGame& game, const GeneralStrategy& strategy,
    const Tolerances& tol) {
  std::vector<MeasurementDiagnostic> out;
  if (strategy.alice_dimension == 0 || strategy.bob_dimension == 0 ||
      strategy.state.size() !=
          static_cast<Eigen::Index>(strategy.alice_dimension * strategy.bob_dimension)) {
    out.push_back({Kind::kShape, Party::kState});
    return out;
  }
  if (!check_shape(strategy.alice, game.num_alice_questions(),
                   game.num_alice_answers(), strategy.alice_dimension,
                   Party::kAlice, out) ||
      !check_shape(strategy.bob, game.num_bob_questions(), game.num_bob_answers(),
                   strategy.bob_dimension, Party::kBob, out)) {
    return out;
  }
  const double norm_error = std::abs(strategy.state.norm() - 1.0);
  if (norm_error > tol.proj) {
    out.push_back({Kind::kStateNorm, Party::kState, 0, 0, norm_error});
  }
  check_measurements(strategy.alice, strategy.alice_dimension, Party::kAlice,
                     false, tol, out);
  check_measurements(strategy.bob, strategy.bob_dimension, Party::kBob, false,
                     tol, out);
  return out;
}

double pme_probability(const PMEStrategy& strategy, std::size_t q,
                       std::size_t r, std::size_t a, std::size_t b) {
  const Matrix& p = strategy.alice[q][a];
  // tr(P B^T) with B = P_br^T is tr(P P_br).
  const Complex t = strategy.bob ? trace_with_transpose(p, (*strategy.bob)[r][b])
                                 : (p * strategy.alice[r][b]).trace();
  return t.real() / static_cast<double>(strategy.dimension);
}

std::vector<double> pme_pair_wins(const NonlocalGame& game,
                                  const PMEStrategy& strategy) {
  require_shape(game, strategy);
  const std::size_t nq = game.num_alice_questions();
  const std::size_t nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers();
  const std::size_t nb = game.num_bob_answers();
  Measurements bob(nr, std::vector<Matrix>(nb));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t b = 0; b < nb; ++b) bob[r][b] = strategy.bob_projector(r, b);
  const double d = static_cast<double>(strategy.dimension);
  std::vector<double> wins(nq * nr, 0.0);
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t r = 0; r < nr; ++r) {
      double w = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
          if (game.wins(a, b, q, r)) {
            w += trace_with_transpose(strategy.alice[q][a], bob[r][b]).real() / d;
          }
        }
      }
      wins[q * nr + r] = w;
    }
  }
  return wins;
}

std::vector<double> general_pair_wins(const NonlocalGame& game,
                                      const GeneralStrategy& strategy) {
  require_shape(game, strategy);
  const std::size_t nq = game.num_alice_questions();
  const std::size_t nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers();
  const std::size_t nb = game.num_bob_answers();
  const Matrix psi = state_matrix(strategy);
  // psi*(M (x) N) psi = tr(Psi* M Psi N^T)
  Measurements sandwiched(nq, std::vector<Matrix>(na));
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t a = 0; a < na; ++a)
      sandwiched[q][a] = psi.adjoint() * strategy.alice[q][a] * psi;
  std::vector<double> wins(nq * nr, 0.0);
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t r = 0; r < nr; ++r) {
      double w = 0.0;
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
          if (game.wins(a, b, q, r)) {
            w += trace_with_transpose(sandwiched[q][a], strategy.bob[r][b]).real();
          }
        }
      }
      wins[q * nr + r] = w;
    }
  }
  return wins;
}

namespace {
double weigh(const NonlocalGame& game, const std::vector<double>& wins) {
  double total = 0.0;
  for (std::size_t i = 0; i < wins.size(); ++i) {
    total += game.distribution()[i].convert_to<double>() * wins[i];
  }
  return total;
}
}  // namespace

double eval_pme(const NonlocalGame& game, const PMEStrategy& strategy) {
  return weigh(game, pme_pair_wins(game, strategy));
}

double eval_general(const NonlocalGame& game, const GeneralStrategy& strategy) {
  return weigh(game, general_pair_wins(game, strategy));
}

GeneralStrategy as_general(const PMEStrategy& strategy) {
  const std::size_t d = strategy.dimension;
  GeneralStrategy out;
  out.alice_dimension = d;
  out.bob_dimension = d;
  out.state = Vector::Zero(static_cast<Eigen::Index>(d * d));
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    out.state(static_cast<Eigen::Index>(i * d + i)) = amplitude;
  }
  out.alice = strategy.alice;
  if (strategy.bob) {
    out.bob = *strategy.bob;
  } else {
    out.bob = strategy.alice;
    for (auto& row : out.bob)
      for (auto& m : row) m = m.transpose().eval();
  }
  return out;
}

Measurements residual_states(const GeneralStrategy& strategy) {
  const Matrix psi = state_matrix(strategy);
  Measurements out(strategy.alice.size());
  for (std::size_t q = 0; q < strategy.alice.size(); ++q) {
    for (const auto& m : strategy.alice[q]) {
      out[q].push_back(psi.transpose() * m.transpose() * psi.conjugate());
    }
  }
  return out;
}

PMEStrategy pme_from_perfect(const SynchronousGame& game,
                             const GeneralStrategy& strategy, double tolerance,
                             const Tolerances& tol) {
  const auto diagnostics = validate_general(game.game(), strategy, tol);
  if (!diagnostics.empty()) {
    throw InvalidInput("invalid strategy: " + diagnostics.front().describe(game.game()));
  }
  const double value = eval_general(game.game(), strategy);
  if (value < 1.0 - tolerance) {
    std::ostringstream os;
    os << "strategy wins with probability " << value
       << ", not within " << tolerance << " of 1";
    throw InvalidInput(os.str());
  }
  // Restrict Bob's space to the Schmidt support.
  const Matrix psi = state_matrix(strategy);
  const Matrix reduced = psi.transpose() * psi.conjugate();
  Eigen::SelfAdjointEigenSolver<Matrix> eig((reduced + reduced.adjoint()) / 2.0);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) > tol.supp) kept.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(kept.size());
  Matrix basis(psi.cols(), k);
  for (Eigen::Index j = 0; j < k; ++j) basis.col(j) = eig.eigenvectors().col(kept[j]);

  const auto residuals = residual_states(strategy);
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  PMEStrategy out;
  out.dimension = static_cast<std::size_t>(k);
  out.alice.assign(nq, std::vector<Matrix>(na));
  const Matrix identity = Matrix::Identity(k, k);
  for (std::size_t q = 0; q < nq; ++q) {
    Matrix sum = Matrix::Zero(k, k);
    for (std::size_t a = 0; a < na; ++a) {
      const Matrix restricted = basis.adjoint() * residuals[q][a] * basis;
      out.alice[q][a] = support_projector(restricted, tol.supp);
      sum += out.alice[q][a];
    }
    const double incomplete = (sum - identity).norm();
    if (incomplete > tol.perfect) {
      std::ostringstream os;
      os << "residual-state supports for question " << game.questions()[q]
         << " do not sum to identity (||sum - I||_F = " << incomplete << ")";
      throw ValidationError(os.str());
    }
  }
  return out;
}

std::string PackingViolation::describe(const Graph& graph) const {
  std::ostringstream os;
  auto name = [&](std::size_t v) {
    return v < graph.num_vertices() ? graph.label(v) : std::to_string(v);
  };
  switch (kind) {
    case Kind::kShape:
      os << "projector for vertex " << name(u) << " missing or wrong size";
      break;
    case Kind::kNotHermitian:
      os << "P[" << name(u) << "] not Hermitian, residual " << residual;
      break;
    case Kind::kNotIdempotent:
      os << "P[" << name(u) << "] not idempotent, residual " << residual;
      break;
    case Kind::kOverlap:
      os << "tr(P[" << name(u) << "] P[" << name(v) << "]) = " << residual
         << " on an edge";
      break;
  }
  return os.str();
}

PackingReport validate_packing(const Graph& graph,
                               const ProjectivePacking& packing,
                               const Tolerances& tol) {
  PackingReport report;
  using PKind = PackingViolation::Kind;
  const std::size_t n = graph.num_vertices();
  const auto d = static_cast<Eigen::Index>(packing.dimension);
  if (packing.dimension == 0 || packing.projectors.size() != n) {
    report.violations.push_back({PKind::kShape, packing.projectors.size(),
                                 packing.projectors.size()});
    return report;
  }
  for (std::size_t u = 0; u < n; ++u) {
    const Matrix& p = packing.projectors[u];
    if (p.rows() != d || p.cols() != d) {
      report.violations.push_back({PKind::kShape, u, u});
    }
  }
  if (!report.violations.empty()) return report;
  for (std::size_t u = 0; u < n; ++u) {
    const Matrix& p = packing.projectors[u];
    const double herm = hermitian_residual(p);
    if (herm > tol.proj) {
      report.violations.push_back({PKind::kNotHermitian, u, u, herm});
      continue;
    }
    const double idem = idempotent_residual(p);
    if (idem > tol.proj) report.violations.push_back({PKind::kNotIdempotent, u, u, idem});
  }
  for (const auto& [u, v] : graph.edges()) {
    const double overlap =
        std::abs(trace_with_transpose(packing.projectors[u],
                                      packing.projectors[v].transpose()));
    if (overlap > tol.orth) report.violations.push_back({PKind::kOverlap, u, v, overlap});
  }
  report.value = packing.value();
  return report;
}

ProjectivePacking packing_from_strategy(const SynchronousGame& game,
                                        const PMEStrategy& strategy,
                                        const Tolerances& tol) {
  const auto diagnostics = validate_pme(game.game(), strategy, tol);
  if (!diagnostics.empty()) {
    throw InvalidInput("invalid strategy: " + diagnostics.front().describe(game.game()));
  }
  const double value = eval_pme(game.game(), strategy);
  if (value < 1.0 - tol.perfect) {
    std::ostringstream os;
    os << "strategy is not perfect (value " << value << ")";
    throw InvalidInput(os.str());
  }
  const Graph graph = game_graph(game);
  ProjectivePacking packing;
  packing.dimension = strategy.dimension;
  for (std::size_t q = 0; q < game.num_questions(); ++q)
    for (std::size_t a = 0; a < game.num_answers(); ++a)
      packing.projectors.push_back(strategy.alice[q][a]);
  const auto report = validate_packing(graph, packing, tol);
  if (!report.valid()) {
    throw ValidationError("strategy projectors do not form a packing: " +
                          report.violations.front().describe(graph));
  }
  return packing;
}

PMEStrategy strategy_from_packing(const SynchronousGame& game,
                                  const ProjectivePacking& packing,
                                  double tolerance, const Tolerances& tol) {
  const Graph graph = game_graph(game);
  const auto report = validate_packing(graph, packing, tol);
  if (!report.valid()) {
    throw InvalidInput("invalid packing: " + report.violations.front().describe(graph));
  }
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  if (report.value < static_cast<double>(nq) - tolerance) {
    std::ostringstream os;
    os << "packing value " << report.value << " is below |Q| - tol = "
       << static_cast<double>(nq) - tolerance;
    throw InvalidInput(os.str());
  }
  const auto d = static_cast<Eigen::Index>(packing.dimension);
  PMEStrategy out;
  out.dimension = packing.dimension;
  out.alice.assign(nq, std::vector<Matrix>(na));
  for (std::size_t q = 0; q < nq; ++q) {
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t a = 0; a < na; ++a) {
      out.alice[q][a] = packing.projectors[q * na + a];
      sum += out.alice[q][a];
    }
    const double incomplete = (sum - Matrix::Identity(d, d)).norm();
    if (incomplete > tol.perfect) {
      std::ostringstream os;
      os << "projectors of question " << game.questions()[q]
         << " do not sum to identity (||sum - I||_F = " << incomplete << ")";
      throw ValidationError(os.str());
    }
  }
  return out;
}

EntangledBound entangled_lower_bound(const SynchronousGame& game,
                                     const ProjectivePacking& packing,
                                     const Tolerances& tol) {
  if (!game.game().has_uniform_distribution()) {
    throw InvalidInput("the packing bound needs a uniform distribution");
  }
  const Graph graph = game_graph(game);
  const auto report = validate_packing(graph, packing, tol);
  if (!report.valid()) {
    throw InvalidInput("invalid packing: " + report.violations.front().describe(graph));
  }
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  const auto d = static_cast<Eigen::Index>(packing.dimension);
  EntangledBound out;
  out.gamma = report.value;
  out.bound = (out.gamma * out.gamma) / static_cast<double>(nq * nq);
  out.witness.dimension = packing.dimension;
  out.witness.alice.assign(nq, std::vector<Matrix>(na));
  for (std::size_t q = 0; q < nq; ++q) {
    Matrix remainder = Matrix::Identity(d, d);
    for (std::size_t a = 0; a < na; ++a) {
      out.witness.alice[q][a] = packing.projectors[q * na + a];
      remainder -= out.witness.alice[q][a];
    }
    out.witness.alice[q][0] += remainder;
  }
  return out;
}

PMEStrategy magic_square_strategy() {
  const Complex i(0.0, 1.0);
  Matrix id2 = Matrix::Identity(2, 2);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -i, i, 0;
  z << 1, 0, 0, -1;
  auto kron = [](const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
  };
  // Rows multiply to +I, columns to -I.
  const Matrix observables[3][3] = {
      {kron(x, id2), kron(id2, x), kron(x, x)},
      {kron(id2, z), kron(z, id2), kron(z, z)},
      {-kron(x, z), -kron(z, x), kron(y, y)},
  };
  const std::vector<std::string> even = {"000", "011", "101", "110"};
  const std::vector<std::string> odd = {"001", "010", "100", "111"};
  const Matrix id4 = Matrix::Identity(4, 4);
  PMEStrategy s;
  s.dimension = 4;
  s.alice.assign(3, std::vector<Matrix>(4));
  s.bob = Measurements(3, std::vector<Matrix>(4));
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t ans = 0; ans < 4; ++ans) {
      Matrix row = id4;
      Matrix col = id4;
      for (std::size_t j = 0; j < 3; ++j) {
        const double row_sign = even[ans][j] == '1' ? -1.0 : 1.0;
        const double col_sign = odd[ans][j] == '1' ? -1.0 : 1.0;
        row = row * (id4 + row_sign * observables[k][j]) / 2.0;
        col = col * (id4 + col_sign * observables[j][k].transpose()) / 2.0;
      }
      s.alice[k][ans] = row;
      (*s.bob)[k][ans] = col;
    }
  }
  return s;
}

}  // namespace nlg
