#include "flexi/reducibility.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace flexi {

const char* to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::Obs4: return "Obs4";
    case ConfigKind::Lemma5: return "Lemma5";
    case ConfigKind::Custom: return "Custom";
  }
  return "?";
}

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

ConfigKind classify(const Graph& host, const std::vector<int>& vertices, int* anchor_out) {
  *anchor_out = -1;
  if (vertices.size() == 1) {
    if (host.degree(vertices[0]) <= 3) return ConfigKind::Obs4;
    return ConfigKind::Custom;
  }
  for (int v : vertices) {
    if (host.degree(v) != static_cast<int>(vertices.size())) continue;
    bool star = true;
    for (int u : vertices) {
      if (u == v) continue;
      if (!host.has_edge(v, u) || host.degree(u) != 4) {
        star = false;
        break;
      }
    }
    if (star) {
      *anchor_out = v;
      return ConfigKind::Lemma5;
    }
  }
  return ConfigKind::Custom;
}

} // namespace

DemandFunction delta(const Graph& host, const std::vector<int>& vertices, int k) {
  const auto verts = sorted_unique(vertices);
  DemandFunction f;
  f.demand.reserve(verts.size());
  for (int v : verts) {
    if (v < 0 || v >= host.n) throw std::out_of_range("delta: vertex outside host");
    f.demand.push_back(k - host.degree(v));
  }
  return f;
}

DemandFunction base_demand(const Graph& host, const std::vector<int>& vertices, int k) {
  const auto verts = sorted_unique(vertices);
  const auto sub = induced_subgraph(host, verts);
  DemandFunction f;
  f.demand.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const int value = sub.graph.degree(static_cast<int>(i)) + k - host.degree(verts[i]);
    if (value < 0)
      throw std::invalid_argument("base demand negative at vertex " + std::to_string(verts[i]));
    f.demand.push_back(value);
  }
  return f;
}

std::vector<std::vector<int>> enumerate_independent_sets(const Graph& h, int d, int max_size) {
  if (d < 0 || max_size < 0) throw std::invalid_argument("d and max_size must be nonnegative");
  const int n = h.n;
  constexpr int kUnreachable = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kUnreachable));
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (int u : h.adj[v]) {
        if (dist[s][u] > dist[s][v] + 1) {
          dist[s][u] = dist[s][v] + 1;
          queue.push_back(u);
        }
      }
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto dfs = [&](auto&& self, int from) -> void {
    out.push_back(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : current) {
        if (dist[u][v] <= d) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

FixResult check_fix(const Graph& host, const std::vector<int>& vertices, int k) {
  const auto verts = sorted_unique(vertices);
  const auto sub = induced_subgraph(host, verts);
  const DemandFunction base = base_demand(host, verts, k);
  FixResult result;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto verdict = is_f_choosable(sub.graph, apply_override(base, static_cast<int>(i)));
    if (!verdict.choosable) {
      result.ok = false;
      result.violating_vertex = verts[i];
      result.witness = verdict.counterexample;
      return result;
    }
  }
  result.ok = true;
  return result;
}

ForbResult check_forb(const Graph& host, const std::vector<int>& vertices, int d, int k) {
  const auto verts = sorted_unique(vertices);
  const auto sub = induced_subgraph(host, verts);
  const DemandFunction base = base_demand(host, verts, k);
  ForbResult result;
  const auto to_host_ids = [&](const std::vector<int>& local) {
    std::vector<int> ids;
    ids.reserve(local.size());
    for (int i : local) ids.push_back(verts[i]);
    return ids;
  };
  for (const auto& indep : enumerate_independent_sets(sub.graph, d, k - 2)) {
    // Demand already at zero inside I: no list assignment can serve it.
    bool negative = false;
    for (int v : indep) {
      if (base.demand[v] < 1) {
        negative = true;
        break;
      }
    }
    if (negative) {
      result.ok = false;
      result.violating_set = to_host_ids(indep);
      result.witness.lists.assign(verts.size(), {});
      int next = 0;
      for (std::size_t u = 0; u < verts.size(); ++u) {
        int size = base.demand[u];
        if (std::find(indep.begin(), indep.end(), static_cast<int>(u)) != indep.end()) --size;
        for (int j = 0; j < std::max(size, 0); ++j) result.witness.lists[u].push_back(next++);
      }
      return result;
    }
    const auto verdict = is_f_choosable(sub.graph, subtract_indicator(base, indep));
    if (!verdict.choosable) {
      result.ok = false;
      result.violating_set = to_host_ids(indep);
      result.witness = verdict.counterexample;
      return result;
    }
  }
  result.ok = true;
  return result;
}

ReducibilityOutcome is_reducible(const Graph& host, const std::vector<int>& vertices, int d, int k) {
  ReducibilityOutcome outcome;
  const auto verts = sorted_unique(vertices);
  try {
    (void)base_demand(host, verts, k);
  } catch (const std::invalid_argument&) {
    outcome.failure = ReducibilityOutcome::Failure::StructuralDemand;
    return outcome;
  }
  const FixResult fix = check_fix(host, verts, k);
  if (!fix.ok) {
    outcome.failure = ReducibilityOutcome::Failure::Fix;
    outcome.violating_vertex = fix.violating_vertex;
    outcome.witness = fix.witness;
    return outcome;
  }
  const ForbResult forb = check_forb(host, verts, d, k);
  if (!forb.ok) {
    outcome.failure = ReducibilityOutcome::Failure::Forb;
    outcome.violating_set = forb.violating_set;
    outcome.witness = forb.witness;
    return outcome;
  }
  ReducibleCertificate cert;
  cert.configuration.host = host;
  cert.configuration.vertices = verts;
  cert.configuration.kind = classify(host, verts, &cert.configuration.anchor);
  cert.d = d;
  cert.k = k;
  cert.fix_checked = true;
  cert.forb_checked = true;
  outcome.certificate = std::move(cert);
  return outcome;
}

std::optional<Configuration> find_reducible_subgraph(const Graph& host) {
  for (int v = 0; v < host.n; ++v) {
    if (host.degree(v) <= 3) {
      Configuration c;
      c.host = host;
      c.vertices = {v};
      c.kind = ConfigKind::Obs4;
      c.anchor = v;
      return c;
    }
  }
  for (int v = 0; v < host.n; ++v) {
    std::vector<int> deg4;
    for (int u : host.adj[v])
      if (host.degree(u) == 4) deg4.push_back(u);
    const int wanted = host.degree(v) - 1;
    if (static_cast<int>(deg4.size()) >= wanted) {
      Configuration c;
      c.host = host;
      c.vertices.assign(deg4.begin(), deg4.begin() + wanted);
      c.vertices.push_back(v);
      std::sort(c.vertices.begin(), c.vertices.end());
      c.kind = ConfigKind::Lemma5;
      c.anchor = v;
      return c;
    }
  }
  return std::nullopt;
}

namespace {

// Shape key for the per-run certificate cache. Inside a 4-cycle-free host a
// catalog match determines (H, base demands) up to isomorphism: a singleton is
// pinned by its demand, and a star match is pinned by (center degree, number
// of neighbor-neighbor edges), since any two neighbor-neighbor edges sharing
// an endpoint would close a 4-cycle through the center.
struct ShapeKey {
  int kind;
  int a;
  int b;
  auto operator<=>(const ShapeKey&) const = default;
};

std::optional<ShapeKey> shape_key(const Graph& host, const Configuration& c) {
  if (c.kind == ConfigKind::Obs4 && c.vertices.size() == 1)
    return ShapeKey{0, host.degree(c.vertices[0]), 0};
  if (c.kind == ConfigKind::Lemma5) {
    int inner_edges = 0;
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < c.vertices.size(); ++j)
        if (c.vertices[i] != c.anchor && c.vertices[j] != c.anchor &&
            host.has_edge(c.vertices[i], c.vertices[j]))
          ++inner_edges;
    return ShapeKey{1, host.degree(c.anchor), inner_edges};
  }
  return std::nullopt;
}

} // namespace

PeelResult peel(const Graph& g) {
  PeelResult result;
  if (const auto cycle = find_four_cycle(g)) {
    result.status = PeelResult::Status::FourCycle;
    result.four_cycle = *cycle;
    result.message = "input contains a 4-cycle";
    return result;
  }
  const int max_deg = g.max_degree();
  std::vector<int> residual(g.n);
  std::iota(residual.begin(), residual.end(), 0);
  result.decomposition.residuals.push_back(residual);

  std::set<ShapeKey> verified;
  while (!residual.empty()) {
    const auto sub = induced_subgraph(g, residual);
    const auto config = find_reducible_subgraph(sub.graph);
    if (!config) {
      result.status = PeelResult::Status::Stuck;
      result.stuck_residual = residual;
      result.message = "no catalog configuration matches the residual graph";
      return result;
    }
    const auto key = shape_key(sub.graph, *config);
    if (!key || !verified.count(*key)) {
      const auto outcome = is_reducible(sub.graph, config->vertices, 0, 5);
      if (!outcome.reducible()) {
        result.status = PeelResult::Status::CertificateFailed;
        result.stuck_residual = residual;
        result.message = "matched configuration failed verification";
        return result;
      }
      if (key) verified.insert(*key);
    }
    PeelLayer layer;
    layer.kind = config->kind;
    layer.anchor = config->anchor >= 0 ? sub.to_host[config->anchor] : -1;
    for (int v : config->vertices) layer.vertices.push_back(sub.to_host[v]);
    std::sort(layer.vertices.begin(), layer.vertices.end());
    layer.fix_checked = true;
    layer.forb_checked = true;

    // Certificate sanity pinned by the forbidden-color condition.
    const DemandFunction base = base_demand(sub.graph, config->vertices, 5);
    for (int value : base.demand)
      if (value < 2)
        throw std::logic_error("certified configuration with base demand below 2");
    if (static_cast<int>(layer.vertices.size()) > std::max(max_deg, 1))
      throw std::logic_error("certified configuration larger than the maximum degree");

    std::vector<int> next;
    std::set_difference(residual.begin(), residual.end(), layer.vertices.begin(),
                        layer.vertices.end(), std::back_inserter(next));
    residual = std::move(next);
    result.decomposition.layers.push_back(std::move(layer));
    result.decomposition.residuals.push_back(residual);
  }
  result.status = PeelResult::Status::Complete;
  return result;
}

namespace {

// Canonical key of (graph, demand vector) under vertex relabeling, for the
// verification cache. Any deterministic encoding is a sound key (equal
// encodings exhibit an isomorphism); minimizing over the permutations that
// respect (degree, demand) classes additionally makes isomorphic layers
// collide, which is what gives the cache its hits.
std::vector<int> canonical_key(const Graph& h, const std::vector<int>& demand) {
  const int n = h.n;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<int, int>> cls(n);
  for (int v = 0; v < n; ++v) cls[v] = {h.degree(v), demand[v]};
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return std::pair(cls[a], a) < std::pair(cls[b], b); });

  std::vector<std::pair<int, int>> blocks; // [begin, end) of equal-class runs
  long long shapes = 1;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && cls[perm[j]] == cls[perm[i]]) ++j;
    blocks.emplace_back(i, j);
    for (int f = 2; f <= j - i; ++f) shapes *= f;
    i = j;
  }

  auto encode = [&]() {
    std::vector<int> enc;
    enc.reserve(n + n * (n - 1) / 2);
    for (int i = 0; i < n; ++i) enc.push_back(demand[perm[i]]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) enc.push_back(h.has_edge(perm[i], perm[j]) ? 1 : 0);
    return enc;
  };
  std::vector<int> best = encode();
  if (shapes <= 50000) {
    // odometer over per-block permutations
    auto advance = [&]() {
      for (const auto& [lo, hi] : blocks)
        if (std::next_permutation(perm.begin() + lo, perm.begin() + hi)) return true;
      return false;
    };
    while (advance()) {
      auto enc = encode();
      if (enc < best) best = std::move(enc);
    }
  }
  best.push_back(n);
  return best;
}

} // namespace

VerifyPeelResult verify_peel(const Graph& g, const PeelDecomposition& p) {
  VerifyPeelResult result;
  if (p.residuals.size() != p.layers.size() + 1) {
    result.message = "residual trace length does not match layer count";
    return result;
  }
  std::vector<int> all(g.n);
  std::iota(all.begin(), all.end(), 0);
  if (p.residuals.front() != all) {
    result.message = "first residual is not the whole vertex set";
    return result;
  }
  if (!p.residuals.back().empty()) {
    result.message = "final residual is not empty";
    return result;
  }
  std::map<std::vector<int>, bool> cache;
  for (std::size_t i = 0; i < p.layers.size(); ++i) {
    const auto& layer = p.layers[i];
    const auto& host_set = p.residuals[i];
    // layer vertices must sit inside the recorded host set
    if (!std::includes(host_set.begin(), host_set.end(), layer.vertices.begin(),
                       layer.vertices.end())) {
      result.failed_layer = static_cast<int>(i);
      result.message = "layer vertices escape the recorded residual";
      return result;
    }
    std::vector<int> expected_next;
    std::set_difference(host_set.begin(), host_set.end(), layer.vertices.begin(),
                        layer.vertices.end(), std::back_inserter(expected_next));
    if (expected_next != p.residuals[i + 1]) {
      result.failed_layer = static_cast<int>(i);
      result.message = "residual trace does not subtract the layer";
      return result;
    }
    const auto sub = induced_subgraph(g, host_set);
    std::vector<int> local;
    for (int v : layer.vertices) {
      const auto it = std::lower_bound(sub.to_host.begin(), sub.to_host.end(), v);
      local.push_back(static_cast<int>(it - sub.to_host.begin()));
    }
    const auto config_sub = induced_subgraph(sub.graph, local);
    std::vector<int> demands;
    bool negative = false;
    try {
      demands = base_demand(sub.graph, local, layer.k).demand;
    } catch (const std::invalid_argument&) {
      negative = true;
    }
    bool verdict;
    if (negative) {
      verdict = false;
    } else {
      std::vector<int> key = canonical_key(config_sub.graph, demands);
      key.push_back(layer.d);
      key.push_back(layer.k);
      const auto it = cache.find(key);
      if (it != cache.end()) {
        verdict = it->second;
      } else {
        verdict = is_reducible(sub.graph, local, layer.d, layer.k).reducible();
        cache.emplace(std::move(key), verdict);
      }
    }
    if (!verdict) {
      result.failed_layer = static_cast<int>(i);
      result.message = "layer failed re-verification";
      return result;
    }
  }
  // all layers together must partition V(g)
  std::vector<int> covered;
  for (const auto& layer : p.layers)
    covered.insert(covered.end(), layer.vertices.begin(), layer.vertices.end());
  std::sort(covered.begin(), covered.end());
  if (covered != all) {
    result.message = "layers do not partition the vertex set";
    return result;
  }
  result.ok = true;
  return result;
}

Lemma5Shape make_lemma5_host(int deg, int triangles) {
  if (deg < 2) throw std::invalid_argument("center degree must be at least 2");
  if (triangles < 0 || triangles > (deg - 1) / 2)
    throw std::invalid_argument("triangle count must lie in [0, (deg-1)/2]");
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < deg; ++i) edges.emplace_back(0, i);
  for (int t = 0; t < triangles; ++t) edges.emplace_back(1 + 2 * t, 2 + 2 * t);
  int next = deg;
  std::vector<std::pair<int, int>> padded = edges;
  // one pendant raises the center to host-degree deg
  padded.emplace_back(0, next++);
  for (int i = 1; i < deg; ++i) {
    int have = 1; // edge to the center
    for (auto [a, b] : edges)
      if ((a == i || b == i) && a != 0) ++have;
    for (int j = have; j < 4; ++j) padded.emplace_back(i, next++);
  }
  Lemma5Shape shape;
  shape.host = build_graph(next, padded);
  shape.vertices.resize(deg);
  std::iota(shape.vertices.begin(), shape.vertices.end(), 0);
  shape.anchor = 0;
  return shape;
}

} // namespace flexi
