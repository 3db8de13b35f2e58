#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace flexi {

// Simple undirected graph on vertices 0..n-1. Neighbor lists are kept sorted
// ascending; no loops, no parallel edges. Immutable after construction.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  bool has_edge(int u, int v) const;
  int edge_count() const;
  bool is_connected() const;
  int min_degree() const;
  int max_degree() const;
  bool operator==(const Graph&) const = default;
};

// Builds the simple graph on the given endpoint pairs. Duplicate pairs
// collapse to one edge. Throws std::invalid_argument on a loop and
// std::out_of_range on an endpoint outside [0, n).
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges);

// Induced subgraph on a set of vertices, relabeled to 0..k-1 in ascending
// order of the original ids. `to_host[i]` maps local vertex i back.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> to_host;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// Exhaustive 4-cycle search: returns a cyclic vertex sequence (a,x,b,y) with
// edges a-x, x-b, b-y, y-a, or nullopt when the graph has no 4-cycle. Scans
// vertex pairs in ascending order, so the witness is deterministic.
std::optional<std::array<int, 4>> find_four_cycle(const Graph& g);

} // namespace flexi
