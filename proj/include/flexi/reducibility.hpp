#pragma once

#include "flexi/graph.hpp"
#include "flexi/list_coloring.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace flexi {

enum class ConfigKind { Obs4, Lemma5, Custom };

const char* to_string(ConfigKind kind);

// An induced subgraph H of a host graph, as a candidate reducible
// configuration. `vertices` are host ids (sorted); `anchor` is the center
// vertex for the star-shaped kind, -1 otherwise.
struct Configuration {
  Graph host;
  std::vector<int> vertices;
  ConfigKind kind = ConfigKind::Custom;
  int anchor = -1;
};

struct ReducibleCertificate {
  Configuration configuration;
  int d = 0;
  int k = 5;
  bool fix_checked = false;
  bool forb_checked = false;
};

// k - deg_host(v) on the given vertex set (values may be negative); output is
// aligned with the sorted vertex set.
DemandFunction delta(const Graph& host, const std::vector<int>& vertices, int k);

// deg_H(v) + k - deg_host(v) where H is the induced subgraph on `vertices`.
// Throws std::invalid_argument when any value is negative: such an H can
// never satisfy the forbidden-color condition.
DemandFunction base_demand(const Graph& host, const std::vector<int>& vertices, int k);

// All vertex sets of size <= max_size whose pairwise distance in h exceeds d
// (distance measured inside h; unreachable pairs count as infinite). Includes
// the empty set; emitted in lexicographic order.
std::vector<std::vector<int>> enumerate_independent_sets(const Graph& h, int d, int max_size);

// Pinning condition: for every v in H, H must be colorable from every
// assignment sized base_demand with v overridden to 1.
struct FixResult {
  bool ok = false;
  int violating_vertex = -1;  // host id
  ListAssignment witness;     // lists aligned with the sorted vertex set
};
FixResult check_fix(const Graph& host, const std::vector<int>& vertices, int k);

// Forbidden-color condition: for every d-independent I of size <= k-2
// (including the empty set), H must be colorable from every assignment sized
// base_demand - 1_I. A vertex whose demand would drop below zero is an
// automatic failure with an empty-list witness.
struct ForbResult {
  bool ok = false;
  std::vector<int> violating_set; // host ids
  ListAssignment witness;
};
ForbResult check_forb(const Graph& host, const std::vector<int>& vertices, int d, int k);

struct ReducibilityOutcome {
  enum class Failure { None, StructuralDemand, Fix, Forb };
  std::optional<ReducibleCertificate> certificate;
  Failure failure = Failure::None;
  int violating_vertex = -1;
  std::vector<int> violating_set;
  ListAssignment witness;

  bool reducible() const { return certificate.has_value(); }
};

// Runs both conditions and issues a certificate iff they pass.
ReducibilityOutcome is_reducible(const Graph& host, const std::vector<int>& vertices, int d, int k);

// Catalog scan. First pass: lowest-indexed vertex of degree <= 3 (singleton
// kind). Second pass: lowest-indexed vertex v having at least deg(v)-1
// neighbors of degree exactly four; the configuration takes the deg(v)-1
// lowest-indexed such neighbors. Returns nullopt when neither pattern occurs.
std::optional<Configuration> find_reducible_subgraph(const Graph& host);

struct PeelLayer {
  ConfigKind kind = ConfigKind::Custom;
  int anchor = -1;            // original graph id, -1 when not star-shaped
  std::vector<int> vertices;  // original graph ids, sorted
  int d = 0;
  int k = 5;
  bool fix_checked = false;
  bool forb_checked = false;
};

// Ordered layering of the whole graph into verified configurations.
// residuals[0] is V(G); residuals[i] = residuals[i-1] minus layer i-1's
// vertices; the final entry is empty. Layer i's configuration was certified
// inside the induced subgraph on residuals[i].
struct PeelDecomposition {
  std::vector<PeelLayer> layers;
  std::vector<std::vector<int>> residuals;
};

struct PeelResult {
  enum class Status { Complete, Stuck, FourCycle, CertificateFailed };
  Status status = Status::Complete;
  PeelDecomposition decomposition;
  std::vector<int> stuck_residual;
  std::array<int, 4> four_cycle{-1, -1, -1, -1};
  std::string message;

  bool complete() const { return status == Status::Complete; }
};

// Repeatedly matches, verifies (d=0, k=5) and removes catalog configurations
// until nothing remains. Rejects hosts containing a 4-cycle up front. Shapes
// already verified in this run are certified from a one-entry-per-shape cache
// (sound here because a 4-cycle-free host pins the induced subgraph and its
// demands up to isomorphism).
PeelResult peel(const Graph& g);

struct VerifyPeelResult {
  bool ok = false;
  int failed_layer = -1;
  std::string message;
};

// Independent re-check: every layer re-verified against its recorded residual
// host with the generic checker, and the layers must partition V(g).
VerifyPeelResult verify_peel(const Graph& g, const PeelDecomposition& p);

// Star with center 0 of host-degree `deg`: deg-1 neighbors of host-degree
// exactly four, `triangles` disjoint edges between neighbor pairs, and
// pendant padding vertices supplying the missing host degrees. `vertices`
// spans the configuration, not the padding.
struct Lemma5Shape {
  Graph host;
  std::vector<int> vertices;
  int anchor = 0;
};
Lemma5Shape make_lemma5_host(int deg, int triangles);

} // namespace flexi
