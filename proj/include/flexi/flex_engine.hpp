#pragma once

#include "flexi/graph.hpp"
#include "flexi/list_coloring.hpp"
#include "flexi/reducibility.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace flexi {

// Nonnegative weights on (vertex, color) pairs. Weights are exact scaled
// integers in millionths so satisfied-weight sums never drift.
struct WeightedRequest {
  std::map<std::pair<int, int>, long long> weights; // micro-units

  long long total() const;
  bool empty_domain() const { return total() == 0; }
};

// Unweighted request: one preferred color on a subset of vertices.
struct Request {
  std::map<int, int> choice; // vertex -> color

  WeightedRequest as_weighted() const; // unit weight per chosen pair
};

struct FlexOutcome {
  Coloring coloring;
  long long satisfied = 0; // micro-units
  long long weight_total = 0;
  bool vacuous = false; // empty request domain; fraction reported as 1
  std::uint64_t seed = 0;

  std::pair<long long, long long> fraction() const; // reduced; (1,1) when vacuous
  double fraction_value() const;
};

// Optional instrumentation filled by color_with_requests.
struct FlexTrace {
  struct Layer {
    std::vector<std::pair<int, int>> candidates; // requested pairs alive in residual lists
    int honored_vertex = -1;
    int honored_color = -1;
    bool pin_succeeded = false;
  };
  std::vector<Layer> layers; // in coloring order (reverse removal order)
  int protected_vertex = -1;
  int protected_color = -1;
};

// Peel-and-extend coloring. Peels the graph (d=0, k=5), then colors the
// layers in reverse removal order; each vertex's residual list keeps at least
// deg_H(v) + 5 - deg_host(v) colors (asserted at runtime), which is exactly
// the layer certificate's demand, so an extension always exists.
//
// Request handling: one globally protected pair is drawn uniformly from the
// positive-weight pairs; while its vertex is uncolored, its color is withheld
// from the layer vertices adjacent to it — a forbidden-color instance on a
// set of size at most k-2, covered by the layer certificate — so the pair is
// always honored.
// Additionally each layer pins one uniformly drawn requested pair still alive
// in its residual lists, and the extension search tries requested colors
// first. Deterministic for a fixed seed.
//
// Preconditions (|L(v)| >= 5, no 4-cycle, peel completes) throw
// std::invalid_argument; certified-impossible situations throw
// std::logic_error.
FlexOutcome color_with_requests(const Graph& g, const ListAssignment& L, const WeightedRequest& w,
                                std::uint64_t seed, const PeelDecomposition* peeled = nullptr,
                                FlexTrace* trace = nullptr);

struct RequestSampler {
  double rate = 0.3; // fraction of vertices that receive a request
};

// The request used by trial seed `trial_seed`: round(rate*n) distinct
// vertices (at least one when the rate is positive) chosen by partial
// shuffle; each gets a uniform color from its list.
Request sample_request(const Graph& g, const ListAssignment& L, const RequestSampler& sampler,
                       std::uint64_t trial_seed);

struct EpsilonStats {
  int trials = 0;
  double mean_fraction = 0.0;
  std::pair<long long, long long> min_fraction{1, 1};
  double min_fraction_value = 1.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

// Monte Carlo satisfaction sweep: samples `trials` random requests (unit
// weights on round(rate*n) distinct vertices, at least one for any positive
// rate, none for rate zero; colors uniform from the lists), colors each with
// a per-trial derived seed and reports the worst and mean satisfied
// fraction. The empirical fractions measure the engine; nothing is asserted
// about them here.
EpsilonStats estimate_epsilon(const Graph& g, const ListAssignment& L,
                              const RequestSampler& sampler, int trials, std::uint64_t seed,
                              const std::function<void(int, const FlexOutcome&)>& observer = {});

struct ValidationResult {
  bool ok = false;
  std::string message;
};

// Independent re-check of an outcome: properness, list membership, the
// satisfied-weight sum, the total, and the vacuous flag.
ValidationResult validate_outcome(const Graph& g, const ListAssignment& L,
                                  const WeightedRequest& w, const FlexOutcome& o);

// Canonical one-line-per-fact rendering used for byte-level determinism
// checks and by the command line tool.
std::string serialize_outcome(const FlexOutcome& o);

} // namespace flexi
