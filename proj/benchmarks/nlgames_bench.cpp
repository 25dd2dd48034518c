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

#include <random>

#include <benchmark/benchmark.h>

#include "nlgames/game.hpp"
#include "nlgames/graph.hpp"
#include "nlgames/packing_search.hpp"
#include "nlgames/quantum.hpp"
#include "nlgames/reductions.hpp"

namespace nlg {
namespace {

Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(p);
  Graph g = Graph::empty(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (edge(rng)) g.add_edge(u, v);
  return g;
}

void BM_ClassicalValueMagicSquare(benchmark::State& state) {
  const NonlocalGame game = make_magic_square();
  for (auto _ : state) benchmark::DoNotOptimize(classical_value(game));
}
BENCHMARK(BM_ClassicalValueMagicSquare);

void BM_ClassicalValueHomCycle(benchmark::State& state) {
  const auto game = make_homomorphism_game(Graph::cycle(static_cast<std::size_t>(state.range(0))),
                                           Graph::complete(3));
  for (auto _ : state) benchmark::DoNotOptimize(classical_value(game.game()));
}
BENCHMARK(BM_ClassicalValueHomCycle)->Arg(5)->Arg(7)->Arg(9);

void BM_IndependenceNumberRandom(benchmark::State& state) {
  const Graph g = random_graph(static_cast<std::size_t>(state.range(0)), 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(independence_number(g));
}
BENCHMARK(BM_IndependenceNumberRandom)->Arg(30)->Arg(60)->Arg(90);

void BM_IndependenceNumberMagicExtension(benchmark::State& state) {
  const Graph g = game_graph(synchronous_extension(make_magic_square()));
  for (auto _ : state) benchmark::DoNotOptimize(independence_number(g));
}
BENCHMARK(BM_IndependenceNumberMagicExtension);

void BM_SeesawMagicExtension(benchmark::State& state) {
  const Graph g = game_graph(synchronous_extension(make_magic_square()));
  SearchConfig config;
  config.dimension = static_cast<std::size_t>(state.range(0));
  config.restarts = 1;
  for (auto _ : state) benchmark::DoNotOptimize(seesaw_search(g, config));
}
BENCHMARK(BM_SeesawMagicExtension)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EvalPmeMagicExtension(benchmark::State& state) {
  const NonlocalGame ms = make_magic_square();
  const auto ext = synchronous_extension(ms);
  const PMEStrategy lifted = lift_pme_strategy(ms, magic_square_strategy());
  for (auto _ : state) benchmark::DoNotOptimize(eval_pme(ext.game(), lifted));
}
BENCHMARK(BM_EvalPmeMagicExtension);

void BM_EvalGeneralMagicSquare(benchmark::State& state) {
  const NonlocalGame ms = make_magic_square();
  const GeneralStrategy s = as_general(magic_square_strategy());
  for (auto _ : state) benchmark::DoNotOptimize(eval_general(ms, s));
}
BENCHMARK(BM_EvalGeneralMagicSquare);

}  // namespace
}  // namespace nlg

BENCHMARK_MAIN();
