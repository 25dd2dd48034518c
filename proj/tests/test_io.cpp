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

#include "nlgames/io.hpp"

#include <filesystem>

#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace nlg {
namespace {

using testing::Rng;

// Runs `fn`, expecting a ParseError at the given line, and returns it.
template <typename Fn>
ParseError expect_parse_error(Fn fn, std::size_t line) {
  try {
    fn();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    return e;
  }
  ADD_FAILURE() << "no ParseError";
  return ParseError("none");
}

TEST(GameIoTest, RoundTripsBuiltins) {
  for (const NonlocalGame& g : {make_chsh(), make_magic_square()}) {
    EXPECT_EQ(parse_game(write_game(g)), g);
  }
}

TEST(GameIoTest, RoundTripsRandomGames) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const NonlocalGame g = testing::random_nonlocal_game(rng, 1 + trial % 3, 2, 2, 1 + trial % 2);
    EXPECT_EQ(parse_game(write_game(g)), g);
  }
}

TEST(GameIoTest, SynchronousShorthand) {
  const NonlocalGame g = parse_game(R"({
    "questions": ["1", "2"],
    "answers": ["a", "b"],
    "distribution": [["1", "1", "1/2"], ["2", "2", 0.5]],
    "predicate": {"ones": [["a", "a", "1", "1"], ["b", "b", "2", "2"]]}
  })");
  EXPECT_EQ(g.alice_questions(), g.bob_questions());
  EXPECT_EQ(g.probability(0, 0), Rational(1, 2));
  EXPECT_EQ(g.probability(0, 1), 0);
  EXPECT_TRUE(g.wins(0, 0, 0, 0));
  EXPECT_FALSE(g.wins(1, 1, 0, 0));
}

TEST(GameIoTest, DecimalsAreExact) {
  const NonlocalGame g = parse_game(R"({
    "questions": ["1", "2"], "answers": ["a"],
    "distribution": [["1", "1", 0.25], ["1", "2", "0.25"], ["2", "1", "025e-2"],
                     ["2", "2", 0.250]],
    "predicate": {"zeros": []}
  })");
  for (const auto& p : g.distribution()) EXPECT_EQ(p, Rational(1, 4));
}

TEST(GameIoTest, ReportsDistributionSumWithLocations) {
  const auto e = expect_parse_error(
      [] {
        parse_game("{\"questions\": [\"1\"], \"answers\": [\"a\"],\n"
                   "\"distribution\": [[\"1\", \"1\", \"1/3\"]],\n"
                   "\"predicate\": {\"zeros\": []}}");
      },
      2);
  EXPECT_NE(std::string(e.what()).find("1/3"), std::string::npos);
}

TEST(GameIoTest, UnknownLabelIsLocated) {
  const auto e = expect_parse_error(
      [] {
        parse_game("{\"questions\": [\"1\"], \"answers\": [\"a\"],\n"
                   "\"distribution\": \"uniform\",\n"
                   "\"predicate\": {\"zeros\": [[\"a\", \"z\", \"1\", \"1\"]]}}");
      },
      3);
  EXPECT_NE(std::string(e.what()).find("z"), std::string::npos);
}

TEST(GameIoTest, SyntaxErrorIsLocated) {
  expect_parse_error([] { parse_game("{\n  \"questions\": [\"1\",\n}"); }, 3);
}

TEST(GameIoTest, MissingFieldsAndBadValues) {
  EXPECT_THROW(parse_game("{}"), ParseError);
  EXPECT_THROW(parse_game("[1, 2]"), ParseError);
  EXPECT_THROW(parse_game(R"({"questions": ["1"], "answers": ["a"],
      "distribution": [["1", "1", -1]], "predicate": {"zeros": []}})"),
               ParseError);
  EXPECT_THROW(parse_game(R"({"questions": ["1"], "answers": ["a"],
      "distribution": "uniform", "predicate": {"maybe": []}})"),
               ParseError);
}

TEST(GraphIoTest, EdgeListWithBlocks) {
  const Graph g = parse_graph(
      "# a path with a loop\n"
      "vertices: x y z\n"
      "x y\n"
      "y z  # trailing comment\n"
      "z z\n"
      "block B1: x y\n"
      "block B2: z\n");
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_TRUE(g.adjacent(0, 1));
  EXPECT_FALSE(g.adjacent(0, 2));
  EXPECT_TRUE(g.has_loop(2));
  ASSERT_TRUE(g.clique_partition().has_value());
  EXPECT_EQ(g.clique_partition()->front().name, "B1");
}

TEST(GraphIoTest, VerticesAppearInFirstUseOrder) {
  const Graph g = parse_graph("b a\nc b\n");
  EXPECT_EQ(g.labels(), (std::vector<std::string>{"b", "a", "c"}));
}

TEST(GraphIoTest, RoundTrips) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = testing::random_graph(rng, 1 + trial % 7, 0.4);
    const Graph back = parse_graph(write_graph(g));
    EXPECT_EQ(back.labels(), g.labels());
    EXPECT_EQ(back.edges(), g.edges());
  }
  const Graph gg = game_graph(make_independent_set_game(Graph::cycle(4), 2));
  const Graph back = parse_graph(write_graph(gg));
  EXPECT_EQ(back.edges(), gg.edges());
  EXPECT_EQ(back.clique_partition(), gg.clique_partition());
}

TEST(GraphIoTest, Dimacs) {
  const Graph g = parse_graph("c pentagon\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
  EXPECT_EQ(g.num_vertices(), 5u);
  EXPECT_EQ(g.num_edges(), 5u);
  EXPECT_EQ(g.label(0), "1");
  EXPECT_EQ(independence_number(g).size, 2u);
}

TEST(GraphIoTest, Errors) {
  expect_parse_error([] { parse_graph("a b\nvertices: a b\n"); }, 2);
  expect_parse_error([] { parse_graph("vertices: a b\na c\n"); }, 2);
  expect_parse_error([] { parse_graph("a b c\n"); }, 1);
  expect_parse_error([] { parse_graph("a b\nblock K: a b q\n"); }, 2);
  expect_parse_error([] { parse_graph("p edge 3 1\ne 1 4\n"); }, 2);
}

TEST(StrategyIoTest, PmeRoundTrip) {
  const NonlocalGame ms = make_magic_square();
  const PMEStrategy s = magic_square_strategy();
  const PMEStrategy back = parse_pme_strategy(write_strategy(ms, s), ms);
  EXPECT_EQ(back.dimension, 4u);
  EXPECT_NEAR(eval_pme(ms, back), 1.0, 1e-12);
  for (std::size_t q = 0; q < 3; ++q)
    for (std::size_t a = 0; a < 4; ++a) EXPECT_TRUE(back.alice[q][a].isApprox(s.alice[q][a]));
}

TEST(StrategyIoTest, TransposePairedOmitsBob) {
  const auto game = make_independent_set_game(Graph::empty(2), 2);
  PMEStrategy s;
  s.dimension = 1;
  s.alice = {{Matrix::Ones(1, 1), Matrix::Zero(1, 1)}, {Matrix::Zero(1, 1), Matrix::Ones(1, 1)}};
  const std::string text = write_strategy(game.game(), s);
  EXPECT_EQ(text.find("\"bob\""), std::string::npos);
  const PMEStrategy back = parse_pme_strategy(text, game.game());
  EXPECT_TRUE(back.transpose_paired());
  EXPECT_DOUBLE_EQ(eval_pme(game.game(), back), 1.0);
}

TEST(StrategyIoTest, GeneralRoundTrip) {
  Rng rng(43);
  const NonlocalGame chsh = make_chsh();
  PMEStrategy s;
  s.dimension = 2;
  s.alice = testing::random_projective_measurements(rng, 2, 2, 2);
  s.bob = testing::random_projective_measurements(rng, 2, 2, 2);
  const GeneralStrategy g = as_general(s);
  const GeneralStrategy back = parse_general_strategy(write_strategy(chsh, g), chsh);
  EXPECT_NEAR(eval_general(chsh, back), eval_general(chsh, g), 1e-12);
}

TEST(StrategyIoTest, MissingAnswersAreZero) {
  const NonlocalGame chsh = make_chsh();
  const PMEStrategy s = parse_pme_strategy(R"({"kind": "pme", "dimension": 1,
    "alice": {"x0": {"0": [[[1, 0]]]}, "x1": {"1": [[[1, 0]]]}},
    "bob": {"y0": {"0": [[[1, 0]]]}, "y1": {"0": [[[1, 0]]]}}})",
                                           chsh);
  EXPECT_EQ(s.alice[0][1](0, 0), Complex(0, 0));
  EXPECT_EQ(s.alice[1][1](0, 0), Complex(1, 0));
}

TEST(StrategyIoTest, Errors) {
  const NonlocalGame chsh = make_chsh();
  expect_parse_error(
      [&] {
        parse_pme_strategy("{\"kind\": \"pme\", \"dimension\": 1,\n"
                           "\"alice\": {\"nope\": {}}}",
                           chsh);
      },
      2);
  expect_parse_error(
      [&] {
        parse_pme_strategy("{\"kind\": \"pme\", \"dimension\": 2,\n"
                           "\"alice\": {\"x0\": {\"0\": [[[1, 0]]]}}}",
                           chsh);
      },
      2);
  EXPECT_THROW(parse_pme_strategy(R"({"kind": "general"})", chsh), ParseError);
  EXPECT_THROW(parse_general_strategy(R"({"kind": "general", "alice_dimension": 1,
      "bob_dimension": 1, "state": [[1, 0], [0, 0]], "alice": {}, "bob": {}})",
                                      chsh),
               ParseError);
}

TEST(PackingIoTest, RoundTrip) {
  const auto ext = synchronous_extension(make_magic_square());
  const Graph g = game_graph(ext);
  const ProjectivePacking p =
      packing_from_strategy(ext, lift_pme_strategy(make_magic_square(), magic_square_strategy()));
  const ProjectivePacking back = parse_packing(write_packing(g, p), g);
  EXPECT_EQ(back.dimension, 4u);
  EXPECT_NEAR(validate_packing(g, back).value, 6.0, 1e-10);
}

TEST(PackingIoTest, AbsentVerticesAreZeroAndUnknownOnesFail) {
  const Graph c5 = Graph::cycle(5);
  const ProjectivePacking p = parse_packing(
      R"({"kind": "packing", "dimension": 1, "projectors": {"v2": [[[1, 0]]]}})", c5);
  EXPECT_DOUBLE_EQ(p.value(), 1.0);
  EXPECT_EQ(p.projectors[0](0, 0), Complex(0, 0));
  EXPECT_THROW(parse_packing(
                   R"({"kind": "packing", "dimension": 1, "projectors": {"v9": [[[1, 0]]]}})",
                   c5),
               ParseError);
}

TEST(ArtifactTest, WritesParseableFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "nlgames_io_artifact_test";
  std::filesystem::remove_all(dir);
  const NonlocalGame chsh = make_chsh();
  const auto art = reduce_pme_to_qindependence(chsh);
  const ArtifactPaths paths = write_artifact(dir, chsh, art);
  EXPECT_EQ(parse_game(read_text_file(paths.game)), art.extended_game.game());
  EXPECT_EQ(parse_graph(read_text_file(paths.graph)).edges(), art.game_graph.edges());
  EXPECT_NE(read_text_file(paths.provenance).find("(x0,0)"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(FileTest, MissingFileThrowsIoError) {
  EXPECT_THROW(read_text_file("/nonexistent/nlgames/file.json"), IoError);
}

}  // namespace
}  // namespace nlg
