#include "flexi/list_coloring.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace flexi {

namespace {

// ---------------------------------------------------------------------------
// Mask-based exact L-coloring solver, shared by the public entry point and
// the choosability enumeration. Colors are dense ids < 64.

struct MaskSolver {
  const Graph* g = nullptr;
  std::vector<std::uint64_t> avail;
  std::vector<int> assigned; // dense color id or -1

  bool solve() {
    int best = -1;
    int best_count = 65;
    for (int v = 0; v < g->n; ++v) {
      if (assigned[v] >= 0) continue;
      const int c = std::popcount(avail[v]);
      if (c < best_count) {
        best_count = c;
        best = v;
        if (c == 0) return false;
      }
    }
    if (best < 0) return true;

    std::uint64_t options = avail[best];
    while (options) {
      const int c = std::countr_zero(options);
      options &= options - 1;
      assigned[best] = c;
      // forward pruning with undo
      std::uint64_t touched = 0;
      bool dead = false;
      for (int u : g->adj[best]) {
        if (assigned[u] >= 0) continue;
        if (avail[u] & (1ULL << c)) {
          avail[u] &= ~(1ULL << c);
          touched |= 1ULL << u; // n <= 64 in mask path callers
          if (avail[u] == 0) dead = true;
        }
      }
      if (!dead && solve()) return true;
      for (int u : g->adj[best]) {
        if (touched & (1ULL << u)) avail[u] |= 1ULL << c;
      }
      assigned[best] = -1;
    }
    return false;
  }
};

bool solve_masks(const Graph& g, std::vector<std::uint64_t> avail, std::vector<int>* out) {
  MaskSolver s;
  s.g = &g;
  s.avail = std::move(avail);
  s.assigned.assign(g.n, -1);
  if (!s.solve()) return false;
  if (out) *out = s.assigned;
  return true;
}

// Generic fallback for universes over 64 colors. Same ordering contract.
bool solve_generic(const Graph& g, const std::vector<std::vector<int>>& lists,
                   std::vector<int>& color) {
  const int n = g.n;
  auto remaining = [&](int v) {
    int count = 0;
    for (int c : lists[v]) {
      bool blocked = false;
      for (int u : g.adj[v])
        if (color[u] == c) {
          blocked = true;
          break;
        }
      if (!blocked) ++count;
    }
    return count;
  };
  int best = -1, best_count = INT32_MAX;
  for (int v = 0; v < n; ++v) {
    if (color[v] >= 0) continue;
    const int r = remaining(v);
    if (r < best_count) {
      best_count = r;
      best = v;
    }
  }
  if (best < 0) return true;
  for (int c : lists[best]) {
    bool blocked = false;
    for (int u : g.adj[best])
      if (color[u] == c) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    color[best] = c;
    if (solve_generic(g, lists, color)) return true;
    color[best] = -1;
  }
  return false;
}

struct DenseLists {
  std::vector<int> palette; // dense id -> original color
  std::vector<std::uint64_t> masks;
  bool mask_path = false;
  std::vector<std::vector<int>> lists; // sorted copies (generic path)
};

DenseLists densify(const Graph& g, const ListAssignment& L) {
  if (static_cast<int>(L.lists.size()) != g.n)
    throw std::invalid_argument("list assignment must cover every vertex");
  DenseLists d;
  for (const auto& l : L.lists)
    for (int c : l) {
      if (c < 0) throw std::invalid_argument("colors must be nonnegative");
      d.palette.push_back(c);
    }
  std::sort(d.palette.begin(), d.palette.end());
  d.palette.erase(std::unique(d.palette.begin(), d.palette.end()), d.palette.end());
  d.lists.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    d.lists[v] = L.lists[v];
    std::sort(d.lists[v].begin(), d.lists[v].end());
    d.lists[v].erase(std::unique(d.lists[v].begin(), d.lists[v].end()), d.lists[v].end());
  }
  if (d.palette.size() <= 64 && g.n <= 64) {
    d.mask_path = true;
    d.masks.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v)
      for (int c : d.lists[v]) {
        const auto it = std::lower_bound(d.palette.begin(), d.palette.end(), c);
        d.masks[v] |= 1ULL << (it - d.palette.begin());
      }
  }
  return d;
}

} // namespace

std::optional<Coloring> find_l_coloring(const Graph& g, const ListAssignment& L) {
  DenseLists d = densify(g, L);
  Coloring result;
  result.color.assign(g.n, -1);
  if (g.n == 0) return result;
  if (d.mask_path) {
    std::vector<int> assigned;
    if (!solve_masks(g, d.masks, &assigned)) return std::nullopt;
    for (int v = 0; v < g.n; ++v) result.color[v] = d.palette[assigned[v]];
    return result;
  }
  if (!solve_generic(g, d.lists, result.color)) return std::nullopt;
  return result;
}

bool l_colorable(const Graph& g, const ListAssignment& L) {
  DenseLists d = densify(g, L);
  if (g.n == 0) return true;
  if (d.mask_path) return solve_masks(g, d.masks, nullptr);
  std::vector<int> color(g.n, -1);
  return solve_generic(g, d.lists, color);
}

namespace {

// ---------------------------------------------------------------------------
// Choosability enumeration.

struct ChoosabilitySearch {
  int n = 0;
  std::vector<int> demand;
  std::vector<std::uint64_t> nbr;    // adjacency masks
  std::vector<std::uint64_t> cands;  // connected vertex sets, descending
  std::vector<std::uint64_t> suffix; // union of cands[i..]
  const Graph* g = nullptr;

  std::vector<std::uint64_t> chosen; // class instance -> vertex set
  std::vector<int> coverage;
  std::vector<std::uint64_t> vertex_lists; // vertex -> mask over chosen indices
  std::vector<std::vector<int>> found;     // counterexample lists when search fails

  bool connected(std::uint64_t mask) const {
    const std::uint64_t first = mask & (~mask + 1);
    std::uint64_t reach = first;
    for (;;) {
      std::uint64_t grow = reach;
      std::uint64_t pending = reach;
      while (pending) {
        const int v = std::countr_zero(pending);
        pending &= pending - 1;
        grow |= nbr[v] & mask;
      }
      if (grow == reach) break;
      reach = grow;
    }
    return reach == mask;
  }

  // Proper coloring of the finished assignment: vertex v may use the colors
  // (class instances) whose set contains v.
  bool leaf_colorable() {
    MaskSolver s;
    s.g = g;
    s.avail = vertex_lists;
    s.assigned.assign(n, -1);
    return s.solve();
  }

  // True when every completion of the current partial multiset is colorable:
  // there is a proper partial coloring from the classes chosen so far whose
  // uncolored vertices form an independent set with remaining demand >= 1.
  // Each such vertex later receives at least one private new color, and new
  // colors never collide with old ones, so any completion extends it.
  bool always_colorable(std::uint64_t wild_ok) {
    return wild_dfs(0, 0, wild_ok);
  }

  bool wild_dfs(int v, std::uint64_t wild_mask, std::uint64_t wild_ok) {
    if (v == n) return true;
    // try existing colors
    std::uint64_t options = vertex_lists[v];
    for (int u : g->adj[v]) {
      if (u < v && assigned_tmp[u] >= 0) options &= ~(1ULL << assigned_tmp[u]);
    }
    while (options) {
      const int c = std::countr_zero(options);
      options &= options - 1;
      assigned_tmp[v] = c;
      if (wild_dfs(v + 1, wild_mask, wild_ok)) return true;
    }
    assigned_tmp[v] = -1;
    if ((wild_ok >> v) & 1 && (nbr[v] & wild_mask) == 0) {
      if (wild_dfs(v + 1, wild_mask | (1ULL << v), wild_ok)) return true;
    }
    return false;
  }
  std::vector<int> assigned_tmp;

  // Returns true when the subtree is clear (no counterexample); on false,
  // `found` holds the violating assignment.
  bool dfs(std::size_t min_pos) {
    std::uint64_t need = 0;
    for (int v = 0; v < n; ++v)
      if (coverage[v] < demand[v]) need |= 1ULL << v;
    if (need == 0) {
      if (leaf_colorable()) return true;
      found.assign(n, {});
      for (int v = 0; v < n; ++v)
        for (std::size_t i = 0; i < chosen.size(); ++i)
          if ((chosen[i] >> v) & 1) found[v].push_back(static_cast<int>(i));
      return false;
    }
    if (min_pos >= cands.size() || (need & ~suffix[min_pos]) != 0) return true; // dead branch
    if (always_colorable(need)) return true;

    for (std::size_t i = min_pos; i < cands.size(); ++i) {
      const std::uint64_t c = cands[i];
      if ((c & ~need) != 0) continue;
      const int idx = static_cast<int>(chosen.size());
      chosen.push_back(c);
      std::uint64_t m = c;
      while (m) {
        const int v = std::countr_zero(m);
        m &= m - 1;
        ++coverage[v];
        vertex_lists[v] |= 1ULL << idx;
      }
      const bool ok = dfs(i);
      m = c;
      while (m) {
        const int v = std::countr_zero(m);
        m &= m - 1;
        --coverage[v];
        vertex_lists[v] &= ~(1ULL << idx);
      }
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

} // namespace

ChoosabilityResult is_f_choosable(const Graph& g, const DemandFunction& f) {
  if (static_cast<int>(f.demand.size()) != g.n)
    throw std::invalid_argument("demand function must cover every vertex");
  const int n = g.n;
  if (n == 0) return {true, {}};
  if (n > 16) throw std::invalid_argument("is_f_choosable supports at most 16 vertices");
  long long total = 0;
  for (int v = 0; v < n; ++v) {
    if (f.demand[v] < 0) throw std::invalid_argument("demand must be nonnegative");
    total += f.demand[v];
  }
  if (total > 64) throw std::invalid_argument("is_f_choosable supports demand totals up to 64");

  // An empty list anywhere defeats every assignment containing it: report the
  // witness that gives each vertex fresh disjoint colors (sizes exactly f).
  for (int v = 0; v < n; ++v) {
    if (f.demand[v] == 0) {
      ChoosabilityResult r;
      r.choosable = false;
      r.counterexample.lists.assign(n, {});
      int next = 0;
      for (int u = 0; u < n; ++u)
        for (int k = 0; k < f.demand[u]; ++k) r.counterexample.lists[u].push_back(next++);
      return r;
    }
  }

  ChoosabilitySearch s;
  s.n = n;
  s.g = &g;
  s.demand = f.demand;
  s.nbr.assign(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.adj[v]) s.nbr[v] |= 1ULL << u;
  const std::uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  for (std::uint64_t mask = full; mask >= 1; --mask) {
    if (s.connected(mask)) s.cands.push_back(mask);
  }
  s.suffix.assign(s.cands.size() + 1, 0);
  for (std::size_t i = s.cands.size(); i-- > 0;) s.suffix[i] = s.suffix[i + 1] | s.cands[i];
  s.coverage.assign(n, 0);
  s.vertex_lists.assign(n, 0);
  s.assigned_tmp.assign(n, -1);

  ChoosabilityResult result;
  result.choosable = s.dfs(0);
  if (!result.choosable) result.counterexample.lists = std::move(s.found);
  return result;
}

DemandFunction apply_override(const DemandFunction& f, int v) {
  if (v < 0 || v >= static_cast<int>(f.demand.size()))
    throw std::out_of_range("override vertex outside demand domain");
  DemandFunction out = f;
  out.demand[v] = 1;
  return out;
}

DemandFunction subtract_indicator(const DemandFunction& f, const std::vector<int>& I) {
  DemandFunction out = f;
  std::vector<int> set = I;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (int v : set) {
    if (v < 0 || v >= static_cast<int>(f.demand.size()))
      throw std::out_of_range("indicator vertex outside demand domain");
    if (out.demand[v] < 1)
      throw std::invalid_argument("subtracting indicator would make demand negative");
    out.demand[v] -= 1;
  }
  return out;
}

} // namespace flexi
