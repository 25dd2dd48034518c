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

#include "oracles.hpp"

#include <algorithm>
#include <numeric>

#include "nlgames/reductions.hpp"

namespace nlg::testing {

namespace {

// Odometer over maps from `positions` slots into `base` values.
bool next_map(std::vector<std::size_t>& digits, std::size_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

}  // namespace

Rational naive_classical_value(const NonlocalGame& game) {
  const std::size_t nq = game.num_alice_questions(), nr = game.num_bob_questions();
  const std::size_t na = game.num_alice_answers(), nb = game.num_bob_answers();
  Rational best = 0;
  std::vector<std::size_t> alice(nq, 0);
  do {
    std::vector<std::size_t> bob(nr, 0);
    do {
      Rational value = 0;
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t r = 0; r < nr; ++r)
          if (game.wins(alice[q], bob[r], q, r)) value += game.probability(q, r);
      best = std::max(best, value);
    } while (next_map(bob, nb));
  } while (next_map(alice, na));
  return best;
}

std::size_t brute_independence_number(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t u = 0; ok && u < n; ++u) {
      if (!((mask >> u) & 1u)) continue;
      for (std::size_t v = u; ok && v < n; ++v) {
        if (((mask >> v) & 1u) && graph.adjacent(u, v)) ok = false;
      }
    }
    if (ok) best = size;
  }
  return best;
}

bool brute_homomorphism_exists(const Graph& x, const Graph& y) {
  const std::size_t nx = x.num_vertices(), ny = y.num_vertices();
  std::vector<std::size_t> f(nx, 0);
  do {
    bool ok = true;
    for (std::size_t u = 0; ok && u < nx; ++u)
      for (std::size_t v = 0; ok && v < nx; ++v)
        if (x.adjacent(u, v) && !y.adjacent(f[u], f[v])) ok = false;
    if (ok) return true;
  } while (next_map(f, ny));
  return false;
}

std::size_t naive_edge_count(const Graph& graph) {
  std::size_t count = 0;
  for (std::size_t u = 0; u < graph.num_vertices(); ++u)
    for (std::size_t v = u; v < graph.num_vertices(); ++v) count += graph.adjacent(u, v) ? 1 : 0;
  return count;
}

namespace {

struct Tagged {
  std::string original;
  bool alice;
};

Tagged untag(const std::string& label) {
  // "(x,0)" or "(x,1)"
  const bool alice = label.substr(label.size() - 3) == ",0)";
  return {label.substr(1, label.size() - 4), alice};
}

}  // namespace

bool reference_extension_wins(const NonlocalGame& original, const std::string& y,
                              const std::string& y2, const std::string& x,
                              const std::string& x2) {
  const Tagged ty = untag(y), ty2 = untag(y2), tx = untag(x), tx2 = untag(x2);
  // A player must answer with an answer of the question's own side.
  if (tx.alice != ty.alice || tx2.alice != ty2.alice) return false;
  if (x == x2) return y == y2;
  if (tx.alice && !tx2.alice) {
    return original.wins(*original.alice_answer_index(ty.original),
                         *original.bob_answer_index(ty2.original),
                         *original.alice_question_index(tx.original),
                         *original.bob_question_index(tx2.original));
  }
  if (!tx.alice && tx2.alice) {
    return original.wins(*original.alice_answer_index(ty2.original),
                         *original.bob_answer_index(ty.original),
                         *original.alice_question_index(tx2.original),
                         *original.bob_question_index(tx.original));
  }
  return true;
}

bool reference_game_graph_adjacent(const SynchronousGame& game, std::size_t u,
                                   std::size_t v) {
  const std::size_t na = game.num_answers();
  const std::size_t q = u / na, a = u % na, r = v / na, b = v % na;
  if (u == v) return !game.wins(a, a, q, q);
  return !game.wins(a, b, q, r) || !game.wins(b, a, r, q);
}

bool reference_product_adjacent(const Graph& x, const Graph& y, std::size_t xu,
                                std::size_t yu, std::size_t xv, std::size_t yv) {
  if (xu == xv && yu == yv) return false;
  if (xu == xv) return yu != yv;
  return x.adjacent(xu, xv) && (yu == yv || !y.adjacent(yu, yv));
}

std::vector<std::uint8_t> random_synchronous_predicate(Rng& rng, std::size_t nq,
                                                       std::size_t na,
                                                       double zero_rate) {
  std::bernoulli_distribution lose(zero_rate);
  std::vector<std::uint8_t> predicate(na * na * nq * nq);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t r = 0; r < nq; ++r) {
          const bool forced = q == r && a != b;
          predicate[((a * na + b) * nq + q) * nq + r] = (forced || lose(rng)) ? 0 : 1;
        }
  return predicate;
}

SynchronousGame make_synchronous_game(std::size_t nq, std::size_t na,
                                      std::vector<std::uint8_t> predicate) {
  std::vector<std::string> questions, answers;
  for (std::size_t q = 0; q < nq; ++q) questions.push_back("q" + std::to_string(q + 1));
  for (std::size_t a = 0; a < na; ++a) answers.push_back("a" + std::to_string(a + 1));
  return require_synchronous(NonlocalGame(questions, questions, answers, answers,
                                          uniform_distribution(nq, nq), std::move(predicate)));
}

SynchronousGame random_synchronous_game(Rng& rng, std::size_t nq, std::size_t na,
                                        double zero_rate) {
  return make_synchronous_game(nq, na, random_synchronous_predicate(rng, nq, na, zero_rate));
}

SynchronousGame random_symmetric_game(Rng& rng, std::size_t nq, std::size_t na,
                                      double zero_rate) {
  std::bernoulli_distribution lose(zero_rate);
  std::vector<std::uint8_t> predicate(na * na * nq * nq, 1);
  auto at = [&](std::size_t a, std::size_t b, std::size_t q, std::size_t r) -> std::uint8_t& {
    return predicate[((a * na + b) * nq + q) * nq + r];
  };
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t r = q; r < nq; ++r)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < na; ++b) {
          if (q == r && b < a) continue;
          std::uint8_t win;
          if (q == r) win = a == b ? 1 : 0;
          else win = lose(rng) ? 0 : 1;
          at(a, b, q, r) = win;
          at(b, a, r, q) = win;
        }
  return make_synchronous_game(nq, na, std::move(predicate));
}

NonlocalGame random_nonlocal_game(Rng& rng, std::size_t nq, std::size_t nr,
                                  std::size_t na, std::size_t nb) {
  std::uniform_int_distribution<int> weight(0, 5);
  std::vector<int> weights(nq * nr);
  int total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : weights) total += (w = weight(rng));
  }
  std::vector<Rational> distribution;
  for (int w : weights) distribution.emplace_back(w, total);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> predicate(na * nb * nq * nr);
  for (auto& c : predicate) c = coin(rng) ? 1 : 0;
  auto labels = [](const std::string& prefix, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  return NonlocalGame(labels("x", nq), labels("y", nr), labels("a", na), labels("b", nb),
                      std::move(distribution), std::move(predicate));
}

Graph random_graph(Rng& rng, std::size_t n, double edge_rate) {
  Graph g = Graph::empty(n);
  std::bernoulli_distribution edge(edge_rate);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

Matrix random_unitary_matrix(Rng& rng, std::size_t dim) {
  std::normal_distribution<double> normal;
  return random_unitary(dim, [&] { return normal(rng); });
}

Measurements random_projective_measurements(Rng& rng, std::size_t questions,
                                            std::size_t answers, std::size_t dim) {
  std::uniform_int_distribution<std::size_t> pick(0, answers - 1);
  const auto d = static_cast<Eigen::Index>(dim);
  Measurements out(questions, std::vector<Matrix>(answers, Matrix::Zero(d, d)));
  for (std::size_t q = 0; q < questions; ++q) {
    const Matrix u = random_unitary_matrix(rng, dim);
    for (Eigen::Index c = 0; c < d; ++c) {
      out[q][pick(rng)] += u.col(c) * u.col(c).adjoint();
    }
  }
  return out;
}

ProjectivePacking random_valid_packing(Rng& rng, const Graph& graph, std::size_t dim) {
  const std::size_t n = graph.num_vertices();
  const auto d = static_cast<Eigen::Index>(dim);
  ProjectivePacking packing{dim, std::vector<Matrix>(n, Matrix::Zero(d, d))};
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::normal_distribution<double> normal;
  std::vector<bool> done(n, false);
  for (std::size_t u : order) {
    done[u] = true;
    if (graph.has_loop(u)) continue;
    Matrix cover = Matrix::Zero(d, d);
    for (std::size_t v : graph.neighbors(u))
      if (v != u && done[v]) cover += packing.projectors[v];
    const Matrix complement = Matrix::Identity(d, d) - support_projector(cover, 1e-9);
    const auto free_dims =
        static_cast<std::size_t>(std::lround(complement.trace().real()));
    const std::size_t rank = std::uniform_int_distribution<std::size_t>(0, free_dims)(rng);
    if (rank == 0) continue;
    Matrix g(d, static_cast<Eigen::Index>(rank));
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = Complex(normal(rng), normal(rng));
    const Matrix projected = complement * g;
    Eigen::HouseholderQR<Matrix> qr(projected);
    const Matrix basis = Matrix(qr.householderQ()).leftCols(static_cast<Eigen::Index>(rank));
    packing.projectors[u] = basis * basis.adjoint();
  }
  return packing;
}

std::vector<std::size_t> random_independent_set(Rng& rng, const Graph& graph) {
  std::vector<std::size_t> order(graph.num_vertices());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution take(0.7);
  std::vector<std::size_t> set;
  for (std::size_t u : order) {
    if (graph.has_loop(u) || !take(rng)) continue;
    bool ok = true;
    for (std::size_t v : set) ok = ok && !graph.adjacent(u, v);
    if (ok) set.push_back(u);
  }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace nlg::testing
