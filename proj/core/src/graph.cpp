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

#include "nlgames/graph.hpp"

#include <algorithm>
#include <bit>

#include "nlgames/errors.hpp"

namespace nlg {

Graph::Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw InvalidInput("duplicate vertex label '" + labels_[i] + "'");
    }
  }
  words_ = (labels_.size() + 63) / 64;
  rows_.assign(labels_.size(), std::vector<std::uint64_t>(words_, 0));
}

namespace {
std::vector<std::string> v_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}
}  // namespace

Graph Graph::empty(std::size_t n) { return Graph(v_labels(n)); }

Graph Graph::complete(std::size_t n) {
  Graph g(v_labels(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph Graph::cycle(std::size_t n) {
  Graph g(v_labels(n));
  if (n < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  for (std::size_t u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

std::size_t Graph::num_edges() const {
  std::size_t twice = 0;
  std::size_t loops = 0;
  for (std::size_t u = 0; u < rows_.size(); ++u) {
    for (auto w : rows_[u]) twice += std::popcount(w);
    if (has_loop(u)) ++loops;
  }
  return (twice - loops) / 2 + loops;
}

std::optional<std::size_t> Graph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Graph::require_index(const std::string& label) const {
  auto idx = index_of(label);
  if (!idx) throw InvalidInput("unknown vertex '" + label + "'");
  return *idx;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= labels_.size() || v >= labels_.size()) {
    throw InvalidInput("edge references a vertex out of range");
  }
  rows_[u][v >> 6] |= std::uint64_t{1} << (v & 63);
  rows_[v][u >> 6] |= std::uint64_t{1} << (u & 63);
}

void Graph::add_edge(const std::string& u, const std::string& v) {
  add_edge(require_index(u), require_index(v));
}

bool Graph::has_loops() const {
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (has_loop(v)) return true;
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < labels_.size(); ++u)
    for (std::size_t v = u; v < labels_.size(); ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::size_t> Graph::neighbors(std::size_t u) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (v != u && adjacent(u, v)) out.push_back(v);
  return out;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> out;
  for (std::size_t u = 0; u < labels_.size(); ++u) out.push_back(neighbors(u).size());
  std::sort(out.begin(), out.end());
  return out;
}

void Graph::set_clique_partition(std::vector<CliqueBlock> blocks) {
  std::vector<int> owner(labels_.size(), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (auto v : blocks[b].vertices) {
      if (v >= labels_.size()) {
        throw InvalidInput("clique block '" + blocks[b].name +
                           "' references a vertex out of range");
      }
      if (owner[v] != -1) {
        throw InvalidInput("vertex '" + labels_[v] +
                           "' appears in more than one clique block");
      }
      owner[v] = static_cast<int>(b);
    }
    const auto& vs = blocks[b].vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        if (!adjacent(vs[i], vs[j])) {
          throw InvalidInput("clique block '" + blocks[b].name +
                             "' is not a clique: " + labels_[vs[i]] + " and " +
                             labels_[vs[j]] + " are not adjacent");
        }
      }
    }
  }
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (owner[v] == -1) {
      throw InvalidInput("clique partition does not cover vertex '" +
                         labels_[v] + "'");
    }
  }
  partition_ = std::move(blocks);
}

bool is_independent_set(const Graph& graph, std::span<const std::size_t> set) {
  for (auto v : set) {
    if (v >= graph.num_vertices()) throw InvalidInput("vertex index out of range");
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (graph.has_loop(set[i])) return false;
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || graph.adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

bool is_independent_set(const Graph& graph,
                        const std::vector<std::string>& labels) {
  std::vector<std::size_t> set;
  for (const auto& l : labels) set.push_back(graph.require_index(l));
  return is_independent_set(graph, set);
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t first_bit(const Bits& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(b[i]));
  }
  return static_cast<std::size_t>(-1);
}

// Include-first depth-first search over vertices in index order. Leaves are
// visited in lexicographic order of sorted vertex sets, and the incumbent is
// only replaced by a strictly larger set, so the final witness is the
// lexicographically smallest maximum independent set.
class IndependenceSearch {
 public:
  IndependenceSearch(const Graph& g, const IndependenceOptions& options)
      : g_(g), options_(options), words_(g.words()) {
    if (g.clique_partition()) {
      for (const auto& block : *g.clique_partition()) {
        Bits mask(words_, 0);
        for (auto v : block.vertices) mask[v >> 6] |= std::uint64_t{1} << (v & 63);
        if (any(mask)) block_masks_.push_back(std::move(mask));
      }
    }
  }

  IndependenceResult run() {
    Bits candidates(words_, 0);
    for (std::size_t v = 0; v < g_.num_vertices(); ++v) {
      if (!g_.has_loop(v)) candidates[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    std::vector<std::size_t> current;
    expand(current, candidates);
    IndependenceResult out;
    out.size = best_.size();
    out.witness = best_;
    out.nodes = nodes_;
    return out;
  }

 private:
  std::size_t partition_bound(const Bits& p) const {
    std::size_t count = 0;
    for (const auto& mask : block_masks_) {
      for (std::size_t i = 0; i < words_; ++i) {
        if (mask[i] & p[i]) {
          ++count;
          break;
        }
      }
    }
    return count;
  }

  // Number of cliques in a greedy clique cover of p.
  std::size_t greedy_cover_bound(Bits p) const {
    std::size_t count = 0;
    while (any(p)) {
      const std::size_t v = first_bit(p);
      Bits clique_candidates(words_);
      auto row = g_.row(v);
      for (std::size_t i = 0; i < words_; ++i) clique_candidates[i] = p[i] & row[i];
      p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      while (any(clique_candidates)) {
        const std::size_t u = first_bit(clique_candidates);
        p[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
        auto urow = g_.row(u);
        for (std::size_t i = 0; i < words_; ++i) clique_candidates[i] &= urow[i];
      }
      ++count;
    }
    return count;
  }

  void expand(std::vector<std::size_t>& current, const Bits& p) {
    if (++nodes_ > options_.max_nodes) {
      throw BudgetExceeded("independence number search exceeded " +
                               std::to_string(options_.max_nodes) +
                               " nodes",
                           static_cast<long double>(nodes_));
    }
    if (!any(p)) {
      if (current.size() > best_.size() || !found_) {
        found_ = true;
        best_ = current;
      }
      return;
    }
    if (found_) {
      std::size_t bound = block_masks_.empty() ? greedy_cover_bound(p)
                                               : partition_bound(p);
      if (current.size() + bound <= best_.size()) return;
      if (!block_masks_.empty()) {
        bound = greedy_cover_bound(p);
        if (current.size() + bound <= best_.size()) return;
      }
    }
    const std::size_t v = first_bit(p);
    Bits with(words_);
    auto row = g_.row(v);
    for (std::size_t i = 0; i < words_; ++i) with[i] = p[i] & ~row[i];
    with[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    current.push_back(v);
    expand(current, with);
    current.pop_back();
    Bits without = p;
    without[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    expand(current, without);
  }

  const Graph& g_;
  IndependenceOptions options_;
  std::size_t words_;
  std::vector<Bits> block_masks_;
  std::vector<std::size_t> best_;
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

IndependenceResult independence_number(const Graph& graph,
                                       const IndependenceOptions& options) {
  return IndependenceSearch(graph, options).run();
}

Graph complement(const Graph& graph) {
  Graph out(graph.labels());
  const std::size_t n = graph.num_vertices();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (!graph.adjacent(u, v)) out.add_edge(u, v);
  return out;
}

std::string game_graph_vertex_label(const std::string& answer,
                                    const std::string& question) {
  return "(" + answer + "," + question + ")";
}

namespace {

// vertex index of (a, q) for every cell, validated against the partition.
std::vector<std::size_t> vertex_map(const SynchronousGame& game,
                                    const Graph& graph) {
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  const auto& partition = graph.clique_partition();
  if (!partition || partition->size() != nq) {
    throw InvalidInput("game graph must carry a clique partition with " +
                       std::to_string(nq) + " blocks");
  }
  std::vector<std::size_t> map(nq * na);
  for (std::size_t q = 0; q < nq; ++q) {
    const auto& block = (*partition)[q];
    if (block.vertices.size() != na) {
      throw InvalidInput("clique block for question '" + game.questions()[q] +
                         "' has " + std::to_string(block.vertices.size()) +
                         " vertices, expected " + std::to_string(na));
    }
    for (std::size_t a = 0; a < na; ++a) {
      const auto label = game_graph_vertex_label(game.answers()[a], game.questions()[q]);
      auto idx = graph.index_of(label);
      if (!idx || std::find(block.vertices.begin(), block.vertices.end(), *idx) ==
                      block.vertices.end()) {
        throw InvalidInput("clique partition is inconsistent with the game: " +
                           label + " is not in block " + std::to_string(q + 1));
      }
      map[q * na + a] = *idx;
    }
  }
  return map;
}

}  // namespace

std::optional<DeterministicStrategy> perfect_classical_strategy(
    const SynchronousGame& game, const Graph& game_graph,
    const IndependenceOptions& options) {
  const auto map = vertex_map(game, game_graph);
  const auto result = independence_number(game_graph, options);
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  if (result.size != nq) return std::nullopt;
  std::vector<std::size_t> f(nq, na);
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      if (std::binary_search(result.witness.begin(), result.witness.end(),
                             map[q * na + a])) {
        f[q] = a;
      }
    }
    if (f[q] == na) {
      throw InvalidInput("independent set misses the block of question '" +
                         game.questions()[q] + "'");
    }
  }
  return DeterministicStrategy{f, f};
}

GuaranteedStrategy classical_strategy_from_independent_set(
    const SynchronousGame& game, const Graph& game_graph,
    std::span<const std::size_t> independent_set) {
  if (!game.game().has_uniform_distribution()) {
    throw InvalidInput("the independent-set bound needs a uniform distribution");
  }
  const auto map = vertex_map(game, game_graph);
  if (!is_independent_set(game_graph, independent_set)) {
    throw InvalidInput("vertex set is not independent in the game graph");
  }
  const std::size_t nq = game.num_questions();
  const std::size_t na = game.num_answers();
  std::vector<std::size_t> f(nq, 0);
  for (auto v : independent_set) {
    auto it = std::find(map.begin(), map.end(), v);
    f[static_cast<std::size_t>(it - map.begin()) / na] =
        static_cast<std::size_t>(it - map.begin()) % na;
  }
  const auto s = static_cast<long long>(independent_set.size());
  return {DeterministicStrategy{f, f},
          Rational(s * s, static_cast<long long>(nq * nq))};
}

}  // namespace nlg
