#include "flexi/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace flexi {

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj[u];
  return std::binary_search(a.begin(), a.end(), v);
}

int Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& a : adj) total += a.size();
  return static_cast<int>(total / 2);
}

bool Graph::is_connected() const {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n;
}

int Graph::min_degree() const {
  int d = n == 0 ? 0 : degree(0);
  for (int v = 1; v < n; ++v) d = std::min(d, degree(v));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n; ++v) d = std::max(d, degree(v));
  return d;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  Graph g;
  g.n = n;
  g.adj.resize(n);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::out_of_range("edge endpoint " + std::to_string(u < 0 || u >= n ? u : v) +
                              " outside [0," + std::to_string(n) + ")");
    if (u == v) throw std::invalid_argument("loop edge at vertex " + std::to_string(u));
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::vector<int> verts = vertices;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<int> local(g.n, -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    int v = verts[i];
    if (v < 0 || v >= g.n) throw std::out_of_range("subgraph vertex outside host");
    local[v] = static_cast<int>(i);
  }
  InducedSubgraph sub;
  sub.graph.n = static_cast<int>(verts.size());
  sub.graph.adj.resize(verts.size());
  sub.to_host = verts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (int u : g.adj[verts[i]]) {
      if (local[u] >= 0) sub.graph.adj[i].push_back(local[u]);
    }
  }
  return sub;
}

std::optional<std::array<int, 4>> find_four_cycle(const Graph& g) {
  // A 4-cycle exists iff some vertex pair has two distinct common neighbors.
  std::vector<int> common;
  for (int a = 0; a < g.n; ++a) {
    for (int b = a + 1; b < g.n; ++b) {
      common.clear();
      std::set_intersection(g.adj[a].begin(), g.adj[a].end(), g.adj[b].begin(), g.adj[b].end(),
                            std::back_inserter(common));
      if (common.size() >= 2) return std::array<int, 4>{a, common[0], b, common[1]};
    }
  }
  return std::nullopt;
}

} // namespace flexi
