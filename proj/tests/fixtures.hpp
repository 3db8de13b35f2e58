#pragma once

// Hand-curated embeddings shared by the unit and acceptance suites.

#include "flexi/embedding.hpp"

#include <array>
#include <map>
#include <numeric>
#include <vector>

namespace fixtures {

inline flexi::Embedding k3_embedding() {
  return flexi::embedding_from_faces(3, {{0, 1, 2}, {0, 2, 1}});
}

inline flexi::Embedding k4_embedding() {
  return flexi::embedding_from_faces(4, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
}

inline flexi::Embedding cube_embedding() {
  return flexi::embedding_from_faces(
      8, {{0, 1, 2, 3}, {0, 4, 5, 1}, {1, 5, 6, 2}, {2, 6, 7, 3}, {3, 7, 4, 0}, {4, 7, 6, 5}});
}

inline flexi::Embedding cycle_embedding(int n) {
  std::vector<std::vector<int>> rotation(n);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) {
    rotation[v] = {(v + n - 1) % n, (v + 1) % n};
    edges.emplace_back(v, (v + 1) % n);
  }
  return flexi::make_embedding(flexi::build_graph(n, edges), std::move(rotation));
}

inline flexi::Embedding path_embedding(int n) {
  std::vector<std::vector<int>> rotation(n);
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  for (int v = 0; v < n; ++v) {
    if (v > 0) rotation[v].push_back(v - 1);
    if (v + 1 < n) rotation[v].push_back(v + 1);
  }
  return flexi::make_embedding(flexi::build_graph(n, edges), std::move(rotation));
}

inline flexi::Embedding star_embedding(int leaves) {
  const int n = leaves + 1;
  std::vector<std::vector<int>> rotation(n);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) {
    edges.emplace_back(0, i);
    rotation[0].push_back(i);
    rotation[i].push_back(0);
  }
  return flexi::make_embedding(flexi::build_graph(n, edges), std::move(rotation));
}

// Icosahedron: poles 0 and 11, upper ring 1..5, lower ring 6..10.
inline std::vector<std::array<int, 3>> icosahedron_faces() {
  std::vector<std::array<int, 3>> faces;
  auto up = [](int i) { return 1 + i % 5; };
  auto down = [](int i) { return 6 + i % 5; };
  for (int i = 0; i < 5; ++i) {
    faces.push_back({0, up(i), up(i + 1)});
    faces.push_back({up(i), down(i), up(i + 1)});
    faces.push_back({up(i + 1), down(i), down(i + 1)});
    faces.push_back({11, down(i + 1), down(i)});
  }
  return faces;
}

// Cyclic order of the faces around each vertex of a triangulated closed
// surface given by its face list.
inline std::vector<std::vector<int>> face_cycles_at_vertices(
    const std::vector<std::array<int, 3>>& faces, int n) {
  std::map<std::pair<int, int>, std::vector<int>> at_edge; // (v,u) -> face ids
  std::vector<std::vector<int>> incident(n);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    for (int i = 0; i < 3; ++i) {
      const int v = faces[fi][i];
      incident[v].push_back(static_cast<int>(fi));
      const int a = faces[fi][(i + 1) % 3];
      at_edge[{v, a}].push_back(static_cast<int>(fi));
      at_edge[{a, v}].push_back(static_cast<int>(fi));
    }
  }
  std::vector<std::vector<int>> cycles(n);
  for (int v = 0; v < n; ++v) {
    if (incident[v].empty()) continue;
    const int start = incident[v][0];
    int current = start;
    // leave the starting face through one of its two v-edges
    int exit = -1;
    for (int x : faces[start])
      if (x != v) exit = x;
    do {
      cycles[v].push_back(current);
      const auto& pair = at_edge[{v, exit}];
      const int next = pair[0] == current ? pair[1] : pair[0];
      // the next face's other v-vertex becomes the new exit
      int fresh = -1;
      for (int x : faces[next])
        if (x != v && x != exit) fresh = x;
      current = next;
      exit = fresh;
    } while (current != start);
  }
  return cycles;
}

// Dodecahedron (20 vertices, 3-regular, twelve pentagon faces, no 4-cycles):
// the dual of the icosahedron.
inline flexi::Embedding dodecahedron_embedding() {
  const auto ico = icosahedron_faces();
  const auto cycles = face_cycles_at_vertices(ico, 12);
  std::vector<std::vector<int>> faces(cycles.begin(), cycles.end());
  return flexi::embedding_from_faces(static_cast<int>(ico.size()),
                                     flexi::orient_faces(static_cast<int>(ico.size()), faces));
}

// Icosidodecahedron (30 vertices, 4-regular, twenty triangles and twelve
// pentagons, no 4-cycles): the rectified icosahedron. The only hand-curated
// member of the corpus with minimum degree four.
inline flexi::Embedding icosidodecahedron_embedding() {
  const auto ico = icosahedron_faces();
  std::map<std::pair<int, int>, int> edge_id;
  auto id_of = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    const auto [it, fresh] = edge_id.emplace(std::pair{a, b}, static_cast<int>(edge_id.size()));
    return it->second;
  };
  std::vector<std::vector<int>> faces;
  for (const auto& f : ico)
    faces.push_back({id_of(f[0], f[1]), id_of(f[1], f[2]), id_of(f[2], f[0])});
  const auto cycles = face_cycles_at_vertices(ico, 12);
  for (int v = 0; v < 12; ++v) {
    // consecutive faces around v share an edge at v; take those shared edges
    std::vector<int> pentagon;
    const auto& cyc = cycles[v];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const auto& f1 = ico[cyc[i]];
      const auto& f2 = ico[cyc[(i + 1) % cyc.size()]];
      // the shared edge contains v and one vertex common to both faces
      for (int x : f1) {
        if (x == v) continue;
        for (int y : f2)
          if (x == y) pentagon.push_back(id_of(v, x));
      }
    }
    faces.push_back(pentagon);
  }
  const int n = static_cast<int>(edge_id.size());
  return flexi::embedding_from_faces(n, flexi::orient_faces(n, faces));
}

} // namespace fixtures
