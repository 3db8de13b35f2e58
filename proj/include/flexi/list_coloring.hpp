#pragma once

#include "flexi/graph.hpp"

#include <optional>
#include <vector>

namespace flexi {

// Per-vertex color lists; colors are small nonnegative integers and lists are
// kept sorted ascending.
struct ListAssignment {
  std::vector<std::vector<int>> lists;
  bool operator==(const ListAssignment&) const = default;
};

struct Coloring {
  std::vector<int> color;
};

// Integer demand per vertex, aligned with the vertex ids of the graph it was
// built for.
struct DemandFunction {
  std::vector<int> demand;
  bool operator==(const DemandFunction&) const = default;
};

// Complete backtracking solver. Picks the uncolored vertex with the smallest
// remaining list (ties by lowest index) and tries its colors in ascending
// order, so the result is deterministic. Returns a proper coloring with
// color[v] in lists[v] iff one exists.
std::optional<Coloring> find_l_coloring(const Graph& g, const ListAssignment& L);

// True iff a proper coloring exists; avoids materializing one.
bool l_colorable(const Graph& g, const ListAssignment& L);

struct ChoosabilityResult {
  bool choosable = false;
  ListAssignment counterexample; // populated when !choosable
};

// Decides whether g is L-colorable for every assignment of lists with
// |L(v)| = f(v) (supersets never hurt, so exact sizes decide the general
// question). The enumeration runs over the canonical universe
// {0, ..., sum f - 1}: a hypothetical counterexample over any color set uses
// at most sum f distinct colors, and an injective relabeling into the
// canonical universe preserves every list intersection and hence
// non-colorability.
//
// Internally the search enumerates one representative per color-renaming
// orbit: an assignment is the multiset of its color classes (the vertex set
// holding each color), classes are restricted to sets inducing a connected
// subgraph (a disconnected class splits into one class per component without
// changing sizes or colorability), and multisets are generated in
// nonincreasing bitmask order. Subtrees all of whose completions are
// colorable are pruned. A vertex with f(v) = 0 makes the verdict immediately
// false with an empty-list witness. Requires n <= 16 and sum f <= 64.
ChoosabilityResult is_f_choosable(const Graph& g, const DemandFunction& f);

// f with the value at v replaced by 1.
DemandFunction apply_override(const DemandFunction& f, int v);

// f decreased by one exactly on the vertex set I.
DemandFunction subtract_indicator(const DemandFunction& f, const std::vector<int>& I);

} // namespace flexi
