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

#ifndef NLGAMES_GRAPH_HPP_
#define NLGAMES_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlgames/game.hpp"

namespace nlg {

// Named block of a clique partition (a question's V_q in a game graph).
struct CliqueBlock {
  std::string name;
  std::vector<std::size_t> vertices;

  friend bool operator==(const CliqueBlock&, const CliqueBlock&) = default;
};

// Undirected graph over ordered, opaque vertex labels, stored as a dense
// bit matrix. A self-loop marks a vertex that can never be chosen: it is
// excluded from every independent set and must carry the zero projector in
// a packing. Game graphs use loops for answers a with V(a, a | q, q) = 0;
// all other constructions reject them.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels);

  static Graph empty(std::size_t n);     // vertices v1..vn, no edges
  static Graph complete(std::size_t n);  // K_n on v1..vn
  static Graph cycle(std::size_t n);     // C_n on v1..vn

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const;  // loops count once
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  // Throws InvalidInput for unknown labels.
  std::size_t require_index(const std::string& label) const;

  void add_edge(std::size_t u, std::size_t v);
  void add_edge(const std::string& u, const std::string& v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u][v >> 6] >> (v & 63)) & 1u;
  }
  bool has_loop(std::size_t v) const { return adjacent(v, v); }
  bool has_loops() const;

  // Edges (u, v) with u <= v, ordered by u then v.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> neighbors(std::size_t u) const;
  std::vector<std::size_t> degree_sequence() const;

  // Row of the adjacency bit matrix; bit v of word v / 64.
  std::span<const std::uint64_t> row(std::size_t u) const { return rows_[u]; }
  std::size_t words() const { return words_; }

  // Blocks must be disjoint, cover every vertex, and be cliques.
  // Blocks may be empty. Throws InvalidInput otherwise.
  void set_clique_partition(std::vector<CliqueBlock> blocks);
  void clear_clique_partition() { partition_.reset(); }
  const std::optional<std::vector<CliqueBlock>>& clique_partition() const {
    return partition_;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.rows_ == b.rows_ &&
           a.partition_ == b.partition_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::optional<std::vector<CliqueBlock>> partition_;
};

// Throws InvalidInput if a vertex index is out of range.
bool is_independent_set(const Graph& graph, std::span<const std::size_t> set);
bool is_independent_set(const Graph& graph,
                        const std::vector<std::string>& labels);

struct IndependenceOptions {
  std::uint64_t max_nodes = 500'000'000;
};

struct IndependenceResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // sorted vertex indices
  std::uint64_t nodes = 0;
};

// Exact independence number by branch and bound. The witness is the
// lexicographically smallest maximum independent set. Throws BudgetExceeded
// (reporting nodes explored) when max_nodes is hit.
IndependenceResult independence_number(const Graph& graph,
                                       const IndependenceOptions& options = {});

// Complement on the same vertex order; loops and the partition are dropped.
Graph complement(const Graph& graph);

// Label of game-graph vertex (a, q).
std::string game_graph_vertex_label(const std::string& answer,
                                    const std::string& question);

// If alpha(X) = |Q|, the strategy f_A = f_B = f read off a maximum
// independent set of the game graph; otherwise nullopt. Throws InvalidInput
// when X does not carry the game's V_q partition.
std::optional<DeterministicStrategy> perfect_classical_strategy(
    const SynchronousGame& game, const Graph& game_graph,
    const IndependenceOptions& options = {});

struct GuaranteedStrategy {
  DeterministicStrategy strategy;
  Rational guarantee;  // (|S| / |Q|)^2
};

// Strategy answering f(q) where S meets V_q and the first answer elsewhere.
// Requires a uniform distribution. Throws InvalidInput if S is not
// independent or names vertices outside the game graph.
GuaranteedStrategy classical_strategy_from_independent_set(
    const SynchronousGame& game, const Graph& game_graph,
    std::span<const std::size_t> independent_set);

}  // namespace nlg

#endif  // NLGAMES_GRAPH_HPP_
