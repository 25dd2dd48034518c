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

#ifndef NLGAMES_IO_HPP_
#define NLGAMES_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nlgames/errors.hpp"
#include "nlgames/game.hpp"
#include "nlgames/graph.hpp"
#include "nlgames/quantum.hpp"
#include "nlgames/reductions.hpp"

namespace nlg {

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// Game files are JSON:
//   {"questions": [...], "answers": [...]}            synchronous shorthand, or
//   {"alice_questions", "bob_questions", "alice_answers", "bob_answers"}
//   "distribution": "uniform" or [[q, r, p], ...]      absent pairs are 0
//   "predicate": {"zeros": [[a, b, q, r], ...]}         other cells win, or
//                {"ones": [[a, b, q, r], ...]}          other cells lose
// Probabilities are exact: integers, decimals, or strings such as "1/4".
// Throws ParseError with the line and column of the offending value.
NonlocalGame parse_game(std::string_view text);
std::string write_game(const NonlocalGame& game);

// Graph files are either an edge list
//   vertices: u v w        optional; fixes the vertex order
//   u v                    edge (u u is a loop)
//   block NAME: u v        clique partition block
// with '#' comments, or DIMACS ("p edge N M", "e i j") with vertices 1..N.
Graph parse_graph(std::string_view text);
std::string write_graph(const Graph& graph);

// Strategy files are JSON with matrices written as rows of [re, im] pairs:
//   {"kind": "pme", "dimension": d, "alice": {q: {a: M}}, "bob": {...}}
//   {"kind": "general", "alice_dimension": dA, "bob_dimension": dB,
//    "state": [[re, im], ...], "alice": {...}, "bob": {...}}
// "bob" is optional for pme strategies (transpose pairing).
PMEStrategy parse_pme_strategy(std::string_view text, const NonlocalGame& game);
GeneralStrategy parse_general_strategy(std::string_view text,
                                       const NonlocalGame& game);
std::string write_strategy(const NonlocalGame& game, const PMEStrategy& strategy);
std::string write_strategy(const NonlocalGame& game,
                           const GeneralStrategy& strategy);

// {"kind": "packing", "dimension": d, "projectors": {vertex: M}}; vertices
// that are absent get the zero projector.
ProjectivePacking parse_packing(std::string_view text, const Graph& graph);
std::string write_packing(const Graph& graph, const ProjectivePacking& packing);

std::string write_provenance(const NonlocalGame& game,
                             const ReductionArtifact& artifact);

struct ArtifactPaths {
  std::filesystem::path game;
  std::filesystem::path graph;
  std::filesystem::path provenance;
};

// Writes extended_game.json, game_graph.txt and provenance.json into `dir`,
// creating it if needed.
ArtifactPaths write_artifact(const std::filesystem::path& dir,
                             const NonlocalGame& game,
                             const ReductionArtifact& artifact);

}  // namespace nlg

#endif  // NLGAMES_IO_HPP_
