#pragma once

#include "flexi/embedding.hpp"
#include "flexi/flex_engine.hpp"
#include "flexi/graph.hpp"
#include "flexi/list_coloring.hpp"

#include <cstdint>
#include <string>

namespace flexi {

// graph6 codec per the published format: header byte(s) encode n (one byte
// for n <= 62, '~' plus three bytes for n <= 258047), followed by the upper
// triangle of the adjacency matrix in column order, packed big-endian six
// bits per printable byte (offset 63). Malformed headers, truncation, byte
// values outside 63..126, stray trailing bytes and nonzero padding all throw
// std::invalid_argument.
Graph parse_graph6(const std::string& s);
std::string to_graph6(const Graph& g);

// Embedding document: line-oriented text. '#' starts a comment, `V <n>`
// declares the vertex count, and one `R <v>: <u1> <u2> ... <ud>` line per
// vertex gives the clockwise rotation. Vertices are decimal and contiguous
// from 0.
Embedding parse_embedding(const std::string& doc);
std::string serialize_embedding(const Embedding& emb);

// Request document: `L <v>: <c1> ... <ck>` list lines (one per vertex, all
// vertices of the graph required) and `W <v> <c> <weight>` request lines.
// Weights are decimal with at most six fractional digits and parse to exact
// millionths.
struct RequestData {
  ListAssignment lists;
  WeightedRequest weights;
};
RequestData parse_requests(const std::string& doc, const Graph& g);
std::string serialize_requests(const RequestData& data);

// Exact scaled-decimal weights.
long long parse_weight_micro(const std::string& text);
std::string format_weight_micro(long long micro);

// Random connected planar embedded graph with no 4-cycle: grows a random
// triangulation by repeated face splits, then repairs by deleting one
// seeded-random edge of a 4-cycle until none remains. Deterministic per seed.
// The output distribution is not uniform over the class and is not meant to
// be.
Embedding generate_c4_free_planar(int n, std::uint64_t seed);

} // namespace flexi
