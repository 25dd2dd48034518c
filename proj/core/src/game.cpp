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

#include "nlgames/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>

#include "nlgames/errors.hpp"
#include "nlgames/graph.hpp"

namespace nlg {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) {
    os << '/' << boost::multiprecision::denominator(r);
  }
  return os.str();
}

namespace {

void check_labels(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) {
    throw InvalidInput(std::string(what) + " must be nonempty");
  }
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw InvalidInput(std::string("duplicate label '") + l + "' in " + what);
    }
  }
}

std::optional<std::size_t> find_label(const std::vector<std::string>& labels,
                                      const std::string& label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

NonlocalGame::NonlocalGame(std::vector<std::string> alice_questions,
                           std::vector<std::string> bob_questions,
                           std::vector<std::string> alice_answers,
                           std::vector<std::string> bob_answers,
                           std::vector<Rational> distribution,
                           std::vector<std::uint8_t> predicate)
    : alice_questions_(std::move(alice_questions)),
      bob_questions_(std::move(bob_questions)),
      alice_answers_(std::move(alice_answers)),
      bob_answers_(std::move(bob_answers)),
      distribution_(std::move(distribution)),
      predicate_(std::move(predicate)) {
  check_labels(alice_questions_, "alice questions");
  check_labels(bob_questions_, "bob questions");
  check_labels(alice_answers_, "alice answers");
  check_labels(bob_answers_, "bob answers");
  const std::size_t nq = alice_questions_.size();
  const std::size_t nr = bob_questions_.size();
  if (distribution_.size() != nq * nr) {
    throw InvalidInput("distribution has " +
                       std::to_string(distribution_.size()) +
                       " entries, expected " + std::to_string(nq * nr));
  }
  const std::size_t cells = alice_answers_.size() * bob_answers_.size() * nq * nr;
  if (predicate_.size() != cells) {
    throw InvalidInput("predicate has " + std::to_string(predicate_.size()) +
                       " entries, expected " + std::to_string(cells));
  }
  Rational total = 0;
  for (const auto& p : distribution_) {
    if (p < 0) throw InvalidInput("negative probability " + to_string(p));
    total += p;
  }
  if (total != 1) {
    throw InvalidInput("distribution sums to " + to_string(total) +
                       ", expected 1");
  }
  for (auto& v : predicate_) {
    if (v > 1) throw InvalidInput("predicate entries must be 0 or 1");
  }
}

bool NonlocalGame::has_uniform_distribution() const {
  const Rational u(1, static_cast<long long>(distribution_.size()));
  return std::all_of(distribution_.begin(), distribution_.end(),
                     [&](const Rational& p) { return p == u; });
}

std::optional<std::size_t> NonlocalGame::alice_question_index(
    const std::string& label) const {
  return find_label(alice_questions_, label);
}
std::optional<std::size_t> NonlocalGame::bob_question_index(
    const std::string& label) const {
  return find_label(bob_questions_, label);
}
std::optional<std::size_t> NonlocalGame::alice_answer_index(
    const std::string& label) const {
  return find_label(alice_answers_, label);
}
std::optional<std::size_t> NonlocalGame::bob_answer_index(
    const std::string& label) const {
  return find_label(bob_answers_, label);
}

std::vector<Rational> uniform_distribution(std::size_t nq, std::size_t nr) {
  if (nq == 0 || nr == 0) return {};
  return std::vector<Rational>(nq * nr,
                               Rational(1, static_cast<long long>(nq * nr)));
}

std::string SyncViolation::describe(const NonlocalGame& game) const {
  switch (kind) {
    case Kind::kQuestionSetsDiffer:
      return "alice and bob question sets differ";
    case Kind::kAnswerSetsDiffer:
      return "alice and bob answer sets differ";
    case Kind::kZeroDiagonalProbability:
      return "pi(q,q) = 0 for q=" + game.alice_questions()[question];
    case Kind::kDisagreementAccepted:
      return "V(a,b|q,q) = 1 with a != b for a=" +
             game.alice_answers()[alice_answer] +
             ", b=" + game.alice_answers()[bob_answer] +
             ", q=" + game.alice_questions()[question];
  }
  return "unknown violation";
}

std::vector<SyncViolation> synchronous_violations(const NonlocalGame& game) {
  std::vector<SyncViolation> out;
  if (game.alice_questions() != game.bob_questions()) {
    out.push_back({SyncViolation::Kind::kQuestionSetsDiffer});
  }
  if (game.alice_answers() != game.bob_answers()) {
    out.push_back({SyncViolation::Kind::kAnswerSetsDiffer});
  }
  if (!out.empty()) return out;
  const std::size_t nq = game.num_alice_questions();
  const std::size_t na = game.num_alice_answers();
  for (std::size_t q = 0; q < nq; ++q) {
    if (game.probability(q, q) <= 0) {
      out.push_back({SyncViolation::Kind::kZeroDiagonalProbability, q});
    }
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t b = 0; b < na; ++b) {
        if (a != b && game.wins(a, b, q, q)) {
          out.push_back({SyncViolation::Kind::kDisagreementAccepted, q, a, b});
        }
      }
    }
  }
  return out;
}

std::variant<SynchronousGame, std::vector<SyncViolation>> validate_synchronous(
    NonlocalGame game) {
  auto violations = synchronous_violations(game);
  if (!violations.empty()) return violations;
  return SynchronousGame(std::move(game));
}

SynchronousGame require_synchronous(NonlocalGame game) {
  const auto violations = synchronous_violations(game);
  if (!violations.empty()) {
    std::string msg = "game is not synchronous: " + violations.front().describe(game);
    if (violations.size() > 1) {
      msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    }
    throw InvalidInput(msg);
  }
  return std::get<SynchronousGame>(validate_synchronous(std::move(game)));
}

bool is_symmetric(const SynchronousGame& game) {
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      for (std::size_t q = 0; q < nq; ++q)
        for (std::size_t r = 0; r < nq; ++r)
          if (game.wins(a, b, q, r) != game.wins(b, a, r, q)) return false;
  return true;
}

Rational eval_deterministic(const NonlocalGame& game,
                            const DeterministicStrategy& strategy) {
  if (strategy.alice.size() != game.num_alice_questions() ||
      strategy.bob.size() != game.num_bob_questions()) {
    throw InvalidInput("strategy is not total on the question sets");
  }
  for (auto a : strategy.alice)
    if (a >= game.num_alice_answers()) throw InvalidInput("alice answer out of range");
  for (auto b : strategy.bob)
    if (b >= game.num_bob_answers()) throw InvalidInput("bob answer out of range");
  Rational total = 0;
  for (std::size_t q = 0; q < game.num_alice_questions(); ++q) {
    for (std::size_t r = 0; r < game.num_bob_questions(); ++r) {
      if (game.wins(strategy.alice[q], strategy.bob[r], q, r)) {
        total += game.probability(q, r);
      }
    }
  }
  return total;
}

long double classical_value_cost(const NonlocalGame& game) {
  const long double nq = game.num_alice_questions();
  return std::pow(static_cast<long double>(game.num_alice_answers()), nq) * nq *
         game.num_bob_questions() * game.num_bob_answers();
}

namespace {

// Depth-first enumeration of Alice's maps in lexicographic order. For a
// fixed f_A, Bob's best reply decouples over his questions, so only
// |A|^|Q| leaves are visited. partial[k] holds, for every (r, b), the
// weight Bob would collect from Alice's questions < k.
template <typename Weight>
class ClassicalSearch {
 public:
  ClassicalSearch(const NonlocalGame& game, std::vector<Weight> weights,
                  Weight total)
      : game_(game),
        weights_(std::move(weights)),
        total_(std::move(total)),
        nq_(game.num_alice_questions()),
        nr_(game.num_bob_questions()),
        na_(game.num_alice_answers()),
        nb_(game.num_bob_answers()),
        partial_(nq_ + 1, std::vector<Weight>(nr_ * nb_, Weight(0))),
        current_(nq_, 0) {
    // contrib_[(q * na + a)][r * nb + b] = w(q, r) * V(a, b | q, r)
    contrib_.assign(nq_ * na_, std::vector<Weight>(nr_ * nb_, Weight(0)));
    for (std::size_t q = 0; q < nq_; ++q)
      for (std::size_t a = 0; a < na_; ++a)
        for (std::size_t r = 0; r < nr_; ++r)
          for (std::size_t b = 0; b < nb_; ++b)
            if (game.wins(a, b, q, r))
              contrib_[q * na_ + a][r * nb_ + b] = weights_[q * nr_ + r];
  }

  void run() { descend(0); }

  const Weight& best() const { return best_; }
  const DeterministicStrategy& strategy() const { return strategy_; }

 private:
  void descend(std::size_t k) {
    if (done_) return;
    if (k == nq_) {
      leaf();
      return;
    }
    for (std::size_t a = 0; a < na_ && !done_; ++a) {
      current_[k] = a;
      const auto& add = contrib_[k * na_ + a];
      auto& next = partial_[k + 1];
      const auto& prev = partial_[k];
      for (std::size_t i = 0; i < next.size(); ++i) next[i] = prev[i] + add[i];
      descend(k + 1);
    }
  }

  void leaf() {
    const auto& sums = partial_[nq_];
    Weight value(0);
    std::vector<std::size_t> bob(nr_, 0);
    for (std::size_t r = 0; r < nr_; ++r) {
      std::size_t arg = 0;
      for (std::size_t b = 1; b < nb_; ++b) {
        if (sums[r * nb_ + b] > sums[r * nb_ + arg]) arg = b;
      }
      bob[r] = arg;
      value += sums[r * nb_ + arg];
    }
    if (!found_ || value > best_) {
      found_ = true;
      best_ = value;
      strategy_.alice = current_;
      strategy_.bob = std::move(bob);
      // Later maps cannot beat a perfect strategy strictly.
      if (best_ == total_) done_ = true;
    }
  }

  const NonlocalGame& game_;
  std::vector<Weight> weights_;
  Weight total_;
  std::size_t nq_, nr_, na_, nb_;
  std::vector<std::vector<Weight>> contrib_;
  std::vector<std::vector<Weight>> partial_;
  std::vector<std::size_t> current_;
  bool found_ = false;
  bool done_ = false;
  Weight best_{0};
  DeterministicStrategy strategy_;
};

}  // namespace

ClassicalValue classical_value(const NonlocalGame& game,
                               const ClassicalOptions& options) {
  const long double cost = classical_value_cost(game);
  if (cost > options.budget) {
    std::ostringstream os;
    os << "classical value enumeration needs " << cost
       << " predicate evaluations, budget is " << options.budget;
    throw BudgetExceeded(os.str(), cost);
  }
  // Scale the distribution to integers over the common denominator.
  BigInt common = 1;
  for (const auto& p : game.distribution()) {
    common = boost::multiprecision::lcm(common,
                                        boost::multiprecision::denominator(p));
  }
  std::vector<BigInt> big_weights;
  big_weights.reserve(game.distribution().size());
  for (const auto& p : game.distribution()) {
    big_weights.push_back(boost::multiprecision::numerator(p) *
                          (common / boost::multiprecision::denominator(p)));
  }
  ClassicalValue out;
  if (common < (BigInt(1) << 62)) {
    std::vector<std::int64_t> weights;
    weights.reserve(big_weights.size());
    for (const auto& w : big_weights) weights.push_back(w.convert_to<std::int64_t>());
    ClassicalSearch<std::int64_t> search(game, std::move(weights),
                                         common.convert_to<std::int64_t>());
    search.run();
    out.value = Rational(BigInt(search.best()), common);
    out.strategy = search.strategy();
  } else {
    ClassicalSearch<BigInt> search(game, std::move(big_weights), common);
    search.run();
    out.value = Rational(search.best(), common);
    out.strategy = search.strategy();
  }
  return out;
}

namespace {

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

void reject_loops(const Graph& g, const char* what) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.has_loop(v)) {
      throw InvalidInput(std::string(what) + " has a self-loop at " +
                         g.label(v));
    }
  }
}

}  // namespace

SynchronousGame make_independent_set_game(const Graph& graph, std::size_t t) {
  return make_independent_set_game(graph, t, uniform_distribution(t, t));
}

SynchronousGame make_independent_set_game(const Graph& graph, std::size_t t,
                                          std::vector<Rational> distribution) {
  if (t < 1) throw InvalidInput("independent set game needs t >= 1");
  if (graph.num_vertices() == 0) {
    throw InvalidInput("independent set game needs a nonempty graph");
  }
  reject_loops(graph, "independent set game graph");
  const std::size_t n = graph.num_vertices();
  std::vector<std::uint8_t> predicate(n * n * t * t, 1);
  auto index = [&](std::size_t u, std::size_t v, std::size_t i, std::size_t j) {
    return ((u * n + v) * t + i) * t + j;
  };
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
          const bool lose = (i == j && u != v) ||
                            (i != j && (u == v || graph.adjacent(u, v)));
          if (lose) predicate[index(u, v, i, j)] = 0;
        }
      }
    }
  }
  return require_synchronous(NonlocalGame(
      numbered_labels(t), numbered_labels(t), graph.labels(), graph.labels(),
      std::move(distribution), std::move(predicate)));
}

SynchronousGame make_homomorphism_game(const Graph& x, const Graph& y) {
  if (x.num_vertices() == 0 || y.num_vertices() == 0) {
    throw InvalidInput("homomorphism game needs nonempty graphs");
  }
  reject_loops(x, "homomorphism game source graph");
  reject_loops(y, "homomorphism game target graph");
  const std::size_t nx = x.num_vertices();
  const std::size_t ny = y.num_vertices();
  std::vector<std::uint8_t> predicate(ny * ny * nx * nx, 1);
  auto index = [&](std::size_t a, std::size_t b, std::size_t q, std::size_t r) {
    return ((a * ny + b) * nx + q) * nx + r;
  };
  for (std::size_t a = 0; a < ny; ++a) {
    for (std::size_t b = 0; b < ny; ++b) {
      for (std::size_t q = 0; q < nx; ++q) {
        for (std::size_t r = 0; r < nx; ++r) {
          const bool lose = (q == r && a != b) ||
                            (x.adjacent(q, r) && !y.adjacent(a, b));
          if (lose) predicate[index(a, b, q, r)] = 0;
        }
      }
    }
  }
  return require_synchronous(NonlocalGame(x.labels(), x.labels(), y.labels(),
                                          y.labels(), uniform_distribution(nx, nx),
                                          std::move(predicate)));
}

NonlocalGame make_chsh() {
  std::vector<std::uint8_t> predicate(16, 0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t r = 0; r < 2; ++r)
          predicate[((a * 2 + b) * 2 + q) * 2 + r] = (a ^ b) == (q & r);
  return NonlocalGame({"x0", "x1"}, {"y0", "y1"}, {"0", "1"}, {"0", "1"},
                      uniform_distribution(2, 2), std::move(predicate));
}

NonlocalGame make_magic_square() {
  const std::vector<std::string> even = {"000", "011", "101", "110"};
  const std::vector<std::string> odd = {"001", "010", "100", "111"};
  std::vector<std::uint8_t> predicate(4 * 4 * 3 * 3, 0);
  // Win iff the row and column strings agree on the shared cell.
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
          predicate[((a * 4 + b) * 3 + r) * 3 + c] = even[a][c] == odd[b][r];
  return NonlocalGame({"r1", "r2", "r3"}, {"c1", "c2", "c3"}, even, odd,
                      uniform_distribution(3, 3), std::move(predicate));
}

}  // namespace nlg
