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

#include "nlgames/packing_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "nlgames/errors.hpp"

namespace nlg {

namespace {

// Projector onto the eigenvectors of h with the `rank` smallest eigenvalues.
Matrix bottom_eigenspace_projector(const Matrix& h, std::size_t rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Matrix& vectors = eig.eigenvectors();
  const auto k = std::min<Eigen::Index>(static_cast<Eigen::Index>(rank), h.rows());
  const auto basis = vectors.leftCols(k);
  return basis * basis.adjoint();
}

double overlap_energy(const Graph& graph, const std::vector<Matrix>& p) {
  double energy = 0.0;
  for (const auto& [u, v] : graph.edges()) {
    if (u != v) energy += trace_with_transpose(p[u], p[v].transpose()).real();
  }
  return energy;
}

class Searcher {
 public:
  Searcher(const Graph& graph, const SearchConfig& config)
      : graph_(graph), config_(config), d_(static_cast<Eigen::Index>(config.dimension)) {
    for (std::size_t u = 0; u < graph.num_vertices(); ++u) {
      neighbors_.push_back(graph.neighbors(u));
      std::erase(neighbors_.back(), u);
    }
  }

  std::vector<Matrix> random_start(const std::vector<std::size_t>& ranks,
                                   std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<Matrix> p;
    for (std::size_t u = 0; u < ranks.size(); ++u) {
      Matrix g(d_, d_);
      for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j) g(i, j) = Complex(normal(rng), normal(rng));
      p.push_back(top_eigenspace_projector(g + g.adjoint(), ranks[u]));
    }
    return p;
  }

  void descend(std::vector<Matrix>& p, const std::vector<std::size_t>& ranks) const {
    double energy = overlap_energy(graph_, p);
    for (std::size_t iter = 0; iter < config_.max_iters; ++iter) {
      for (std::size_t u = 0; u < p.size(); ++u) {
        if (ranks[u] == 0 || neighbors_[u].empty()) continue;
        Matrix field = Matrix::Zero(d_, d_);
        for (std::size_t v : neighbors_[u]) field += p[v];
        p[u] = bottom_eigenspace_projector(field, ranks[u]);
      }
      const double next = overlap_energy(graph_, p);
      const bool settled = std::abs(energy - next) < config_.eps_conv;
      energy = next;
      if (settled || energy < config_.eps_conv) break;
    }
  }

  // Removes from each vertex the span of its earlier neighbours, keeping
  // directions that were at least half inside P_u.
  void deflate(std::vector<Matrix>& p) const {
    const Matrix identity = Matrix::Identity(d_, d_);
    for (std::size_t u = 0; u < p.size(); ++u) {
      if (graph_.has_loop(u)) {
        p[u].setZero();
        continue;
      }
      Matrix cover = Matrix::Zero(d_, d_);
      bool any = false;
      for (std::size_t v : neighbors_[u]) {
        if (v >= u) break;
        cover += p[v];
        any = true;
      }
      if (!any) continue;
      const Matrix keep = identity - support_projector(cover, config_.tol.supp);
      p[u] = support_projector(keep * p[u] * keep, 0.5);
    }
  }

  // Zeroes vertices until the packing validates. Only reachable through
  // floating-point noise; deflation already yields orthogonal ranges.
  void enforce(ProjectivePacking& packing) const {
    for (;;) {
      const auto report = validate_packing(graph_, packing, config_.tol);
      if (report.valid()) return;
      for (const auto& v : report.violations) {
        packing.projectors[std::max(v.u, v.v)].setZero();
      }
    }
  }

 private:
  const Graph& graph_;
  const SearchConfig& config_;
  Eigen::Index d_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

std::vector<std::size_t> ranks_of(const ProjectivePacking& packing) {
  std::vector<std::size_t> ranks;
  for (const auto& p : packing.projectors) {
    ranks.push_back(static_cast<std::size_t>(std::lround(p.trace().real())));
  }
  return ranks;
}

}  // namespace

SearchResult seesaw_search(const Graph& graph, const SearchConfig& config) {
  if (config.dimension < 1) throw InvalidInput("search dimension must be at least 1");
  if (config.restarts < 1) throw InvalidInput("restarts must be at least 1");
  if (config.max_iters < 1) throw InvalidInput("max_iters must be at least 1");
  const std::size_t n = graph.num_vertices();
  const std::size_t d = config.dimension;
  if (config.rank_profile && config.rank_profile->size() != n) {
    throw InvalidInput("rank profile has " + std::to_string(config.rank_profile->size()) +
                       " entries for " + std::to_string(n) + " vertices");
  }
  if (config.initial) {
    if (config.initial->dimension != d || config.initial->projectors.size() != n) {
      throw InvalidInput("initial packing does not match the graph and dimension");
    }
    const auto report = validate_packing(graph, *config.initial, config.tol);
    if (!report.valid()) {
      throw InvalidInput("initial packing is invalid: " +
                         report.violations.front().describe(graph));
    }
  }

  auto clamp = [&](std::vector<std::size_t> ranks) {
    for (std::size_t u = 0; u < n; ++u) {
      ranks[u] = graph.has_loop(u) ? 0 : std::min(ranks[u], d);
    }
    return ranks;
  };
  std::vector<std::vector<std::size_t>> passes;
  if (config.rank_profile) {
    passes.push_back(clamp(*config.rank_profile));
  } else {
    passes.push_back(clamp(std::vector<std::size_t>(n, 1)));
    if (graph.clique_partition()) {
      std::vector<std::size_t> balanced(n, 1);
      for (const auto& block : *graph.clique_partition()) {
        std::size_t open = 0;
        for (std::size_t u : block.vertices) open += graph.has_loop(u) ? 0 : 1;
        for (std::size_t u : block.vertices) balanced[u] = std::max<std::size_t>(1, d / std::max<std::size_t>(1, open));
      }
      balanced = clamp(std::move(balanced));
      if (balanced != passes.front()) passes.push_back(std::move(balanced));
    }
  }

  Searcher searcher(graph, config);
  SearchResult best;
  best.packing.dimension = d;
  best.packing.projectors.assign(
      n, Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  bool have_best = false;
  std::size_t run = 0;
  for (const auto& ranks : passes) {
    for (std::size_t k = 0; k < config.restarts; ++k, ++run) {
      std::vector<Matrix> p;
      std::vector<std::size_t> restart_ranks = ranks;
      if (run == 0 && config.initial) {
        p = config.initial->projectors;
        restart_ranks = ranks_of(*config.initial);
      } else {
        p = searcher.random_start(ranks, config.seed + run);
      }
      searcher.descend(p, restart_ranks);
      searcher.deflate(p);
      ProjectivePacking candidate{d, std::move(p)};
      searcher.enforce(candidate);
      const double value = candidate.value();
      if (!have_best || value > best.value + 1e-12) {
        best.packing = std::move(candidate);
        best.value = value;
        best.best_restart = run;
        have_best = true;
      }
    }
  }
  best.restarts_run = run;
  return best;
}

ProjectivePacking seesaw_packing(const Graph& graph, const SearchConfig& config) {
  return seesaw_search(graph, config).packing;
}

ProjectivePacking packing_from_independent_set(const Graph& graph,
                                               std::span<const std::size_t> set) {
  if (!is_independent_set(graph, set)) {
    throw InvalidInput("vertex set is not independent");
  }
  ProjectivePacking packing;
  packing.dimension = 1;
  packing.projectors.assign(graph.num_vertices(), Matrix::Zero(1, 1));
  for (std::size_t u : set) packing.projectors[u](0, 0) = 1.0;
  return packing;
}

}  // namespace nlg
