#pragma once

#include "flexi/graph.hpp"

#include <vector>

namespace flexi {

// A facial walk: cyclic vertex sequence. length() counts edge traversals with
// multiplicity, so a bridge walked from both sides contributes twice.
struct Face {
  int id = 0;
  std::vector<int> walk;

  int length() const { return static_cast<int>(walk.size()); }
  bool is_triangle() const { return length() == 3; }
};

// Combinatorial embedding: a rotation system giving the clockwise neighbor
// order at each vertex. Face tracing follows the rule: the successor of the
// directed edge (u,v) is (v,w) where w immediately precedes u in the rotation
// of v. Construction validates that every rotation is a permutation of the
// vertex's neighbor set, that the graph is connected, and that Euler's formula
// |V| - |E| + |F| = 2 holds; anything else throws std::invalid_argument.
//
// The edgeless single vertex is embedded with one empty facial walk so that
// Euler's count still closes.
struct Embedding {
  Graph graph;
  std::vector<std::vector<int>> rotation;
};

Embedding make_embedding(Graph graph, std::vector<std::vector<int>> rotation);

// Traces all facial walks of the rotation system. Every directed edge lies on
// exactly one returned walk; face ids index the returned vector.
std::vector<Face> trace_faces(const Embedding& emb);

// Lookup table: face_of[directed edge (u,v)] built from a traced face set.
// Encodes the face id carrying each directed edge.
struct FaceIncidence {
  std::vector<Face> faces;
  // dart_face[u][k] = face id of the directed edge (u, rotation[u][k]).
  std::vector<std::vector<int>> dart_face;

  int face_of(const Embedding& emb, int u, int v) const;
};
FaceIncidence build_face_incidence(const Embedding& emb);

// Distinct faces sharing at least one edge with `f`, deduplicated, excluding
// f itself. (A face bordered by the same edge on both sides is not listed as
// its own neighbor.)
std::vector<int> edge_adjacent_faces(const Embedding& emb, const FaceIncidence& inc, int face_id);

// Builds an embedding from an oriented face list: each face is a vertex cycle
// and every directed edge must appear in exactly one face. The rotations are
// the unique ones whose tracing reproduces the given faces.
Embedding embedding_from_faces(int n, const std::vector<std::vector<int>>& oriented_faces);

// Flood-fills orientations so that every undirected edge is traversed once in
// each direction, starting from the first face as given. Throws if the face
// set is not orientable or an edge is not shared by exactly two face sides.
std::vector<std::vector<int>> orient_faces(int n, const std::vector<std::vector<int>>& faces);

} // namespace flexi
