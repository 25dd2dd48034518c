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

#ifndef NLGAMES_PACKING_SEARCH_HPP_
#define NLGAMES_PACKING_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlgames/graph.hpp"
#include "nlgames/quantum.hpp"

namespace nlg {

struct SearchConfig {
  std::size_t dimension = 1;
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
  std::size_t max_iters = 500;
  double eps_conv = 1e-12;
  // Target rank per vertex. When absent, one pass uses rank 1 everywhere and,
  // on graphs with a clique partition, a second pass uses d / |block|.
  std::optional<std::vector<std::size_t>> rank_profile;
  // Optional starting point for the first restart; its ranks override the
  // profile for that restart.
  std::optional<ProjectivePacking> initial;
  Tolerances tol;
};

struct SearchResult {
  ProjectivePacking packing;
  double value = 0.0;
  std::size_t best_restart = 0;  // counted across passes
  std::size_t restarts_run = 0;
};

// Local search on the edge overlap sum_{u~v} tr(P_u P_v): each vertex in
// turn takes the rank-r_u projector minimizing its overlap with its
// neighbours, until the overlap changes by less than eps_conv. Survivors
// are then deflated in vertex order against earlier neighbours, so the
// result passes validate_packing. Deterministic in (graph, config).
// Throws InvalidInput on a bad config.
SearchResult seesaw_search(const Graph& graph, const SearchConfig& config);

ProjectivePacking seesaw_packing(const Graph& graph, const SearchConfig& config);

// One-dimensional packing: 1 on the set, 0 elsewhere. Throws InvalidInput
// if the set is not independent.
ProjectivePacking packing_from_independent_set(const Graph& graph,
                                               std::span<const std::size_t> set);

}  // namespace nlg

#endif  // NLGAMES_PACKING_SEARCH_HPP_
