#include "flexi/flex_engine.hpp"

#include "fixtures.hpp"
#include "flexi/io.hpp"
#include "flexi/rng.hpp"

#include "doctest.h"

#include <stdexcept>

using namespace flexi;

namespace {

ListAssignment five_lists(const Graph& g, std::uint64_t seed, int universe = 10) {
  SplitMix64 rng(seed);
  ListAssignment L;
  L.lists.assign(g.n, {});
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> palette(universe);
    std::iota(palette.begin(), palette.end(), 0);
    for (int i = 0; i < 5; ++i) {
      const int j = i + static_cast<int>(rng.below(universe - i));
      std::swap(palette[i], palette[j]);
      L.lists[v].push_back(palette[i]);
    }
    std::sort(L.lists[v].begin(), L.lists[v].end());
  }
  return L;
}

} // namespace

TEST_CASE("a single vertex honors its request") {
  const Graph g = build_graph(1, {});
  const ListAssignment L{{{1, 2, 3, 4, 5}}};
  WeightedRequest w;
  w.weights[{0, 3}] = 1'000'000;
  const FlexOutcome outcome = color_with_requests(g, L, w, 7);
  CHECK(outcome.coloring.color[0] == 3);
  CHECK(outcome.fraction() == std::pair<long long, long long>{1, 1});
  CHECK_FALSE(outcome.vacuous);
}

TEST_CASE("an empty request is vacuously satisfied") {
  const Graph g = build_graph(2, {{0, 1}});
  const ListAssignment L{{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}}};
  const FlexOutcome outcome = color_with_requests(g, L, WeightedRequest{}, 3);
  CHECK(outcome.vacuous);
  CHECK(outcome.fraction() == std::pair<long long, long long>{1, 1});
  CHECK(validate_outcome(g, L, WeightedRequest{}, outcome).ok);
}

TEST_CASE("preconditions are enforced") {
  const Graph g = build_graph(2, {{0, 1}});
  SUBCASE("short lists are rejected") {
    CHECK_THROWS_AS(color_with_requests(g, {{{1, 2}, {1, 2, 3, 4, 5}}}, {}, 0),
                    std::invalid_argument);
  }
  SUBCASE("graphs with 4-cycles are rejected") {
    const Graph c4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK_THROWS_AS(color_with_requests(c4, five_lists(c4, 1), {}, 0), std::invalid_argument);
  }
  SUBCASE("off-list requests are rejected") {
    ListAssignment L{{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}}};
    WeightedRequest w;
    w.weights[{0, 9}] = 1'000'000;
    CHECK_THROWS_AS(color_with_requests(g, L, w, 0), std::invalid_argument);
  }
  SUBCASE("negative weights are rejected") {
    ListAssignment L{{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}}};
    WeightedRequest w;
    w.weights[{0, 1}] = -5;
    CHECK_THROWS_AS(color_with_requests(g, L, w, 0), std::invalid_argument);
  }
}

TEST_CASE("outcomes validate and reproduce") {
  const Embedding emb = generate_c4_free_planar(40, 88);
  const Graph& g = emb.graph;
  const ListAssignment L = five_lists(g, 42);
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    WeightedRequest w;
    for (int i = 0; i < 12; ++i) {
      const int v = static_cast<int>(rng.below(g.n));
      const int c = L.lists[v][rng.below(5)];
      w.weights[{v, c}] = 1'000'000 + 500'000 * static_cast<long long>(rng.below(3));
    }
    const std::uint64_t seed = rng.next();
    const FlexOutcome a = color_with_requests(g, L, w, seed);
    const auto verdict = validate_outcome(g, L, w, a);
    CHECK(verdict.ok);
    const FlexOutcome b = color_with_requests(g, L, w, seed);
    CHECK(serialize_outcome(a) == serialize_outcome(b));
  }
}

TEST_CASE("a lone requested pair is always honored") {
  // the protected-pair scheme turns single requests into guarantees
  const Embedding emb = generate_c4_free_planar(36, 4242);
  const Graph& g = emb.graph;
  const ListAssignment L = five_lists(g, 11);
  SplitMix64 rng(100);
  for (int trial = 0; trial < 60; ++trial) {
    const int v = static_cast<int>(rng.below(g.n));
    const int c = L.lists[v][rng.below(5)];
    WeightedRequest w;
    w.weights[{v, c}] = 1'000'000;
    FlexTrace trace;
    const FlexOutcome outcome = color_with_requests(g, L, w, rng.next(), nullptr, &trace);
    CHECK(trace.protected_vertex == v);
    CHECK(trace.protected_color == c);
    CHECK(outcome.coloring.color[v] == c);
    CHECK(outcome.fraction() == std::pair<long long, long long>{1, 1});
  }
}

TEST_CASE("weighted satisfaction sums are exact") {
  const Embedding emb = generate_c4_free_planar(25, 77);
  const Graph& g = emb.graph;
  const ListAssignment L = five_lists(g, 3);
  WeightedRequest w;
  w.weights[{0, L.lists[0][0]}] = 250'000; // 0.25
  w.weights[{1, L.lists[1][1]}] = 750'000; // 0.75
  const FlexOutcome outcome = color_with_requests(g, L, w, 9);
  CHECK(outcome.weight_total == 1'000'000);
  CHECK(validate_outcome(g, L, w, outcome).ok);
  const auto [num, den] = outcome.fraction();
  CHECK(num * 1'000'000 == outcome.satisfied * den);
}

TEST_CASE("sampler edge cases") {
  SUBCASE("rate zero yields the vacuous fraction one") {
    const Embedding emb = generate_c4_free_planar(12, 9);
    const ListAssignment L = five_lists(emb.graph, 2);
    const EpsilonStats stats = estimate_epsilon(emb.graph, L, RequestSampler{0.0}, 1, 5);
    CHECK(stats.mean_fraction == 1.0);
    CHECK(stats.min_fraction == std::pair<long long, long long>{1, 1});
  }
  SUBCASE("a single-vertex graph always satisfies its lone request") {
    const Graph k1 = build_graph(1, {});
    const ListAssignment L{{{0, 1, 2, 3, 4}}};
    const EpsilonStats stats = estimate_epsilon(k1, L, RequestSampler{0.3}, 40, 99);
    CHECK(stats.min_fraction == std::pair<long long, long long>{1, 1});
    CHECK(stats.mean_fraction == 1.0);
  }
}

TEST_CASE("estimate_epsilon is reproducible and never hits zero") {
  const Embedding emb = generate_c4_free_planar(30, 2024);
  const Graph& g = emb.graph;
  const ListAssignment L = five_lists(g, 55);
  const EpsilonStats a = estimate_epsilon(g, L, RequestSampler{0.3}, 50, 12345);
  const EpsilonStats b = estimate_epsilon(g, L, RequestSampler{0.3}, 50, 12345);
  CHECK(a.mean_fraction == b.mean_fraction);
  CHECK(a.min_fraction == b.min_fraction);
  CHECK(a.min_fraction.first > 0);
  CHECK(a.ci95_low <= a.mean_fraction);
  CHECK(a.mean_fraction <= a.ci95_high);
  // vacuous trials are impossible: the sampler always requests something
  CHECK(a.min_fraction_value > 0.0);
}

TEST_CASE("validation rejects corrupted outcomes") {
  const Graph g = build_graph(2, {{0, 1}});
  const ListAssignment L{{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}}};
  WeightedRequest w;
  w.weights[{0, 2}] = 1'000'000;
  FlexOutcome outcome = color_with_requests(g, L, w, 1);
  REQUIRE(validate_outcome(g, L, w, outcome).ok);
  SUBCASE("a color off the list") {
    outcome.coloring.color[0] = 77;
    CHECK_FALSE(validate_outcome(g, L, w, outcome).ok);
  }
  SUBCASE("a properness violation") {
    outcome.coloring.color[0] = outcome.coloring.color[1];
    CHECK_FALSE(validate_outcome(g, L, w, outcome).ok);
  }
  SUBCASE("a wrong satisfied sum") {
    outcome.satisfied += 1;
    CHECK_FALSE(validate_outcome(g, L, w, outcome).ok);
  }
}

TEST_CASE("the icosidodecahedron colors with requests") {
  const Embedding emb = fixtures::icosidodecahedron_embedding();
  const Graph& g = emb.graph;
  const ListAssignment L = five_lists(g, 8);
  WeightedRequest w;
  for (int v = 0; v < g.n; v += 3) w.weights[{v, L.lists[v][0]}] = 1'000'000;
  const FlexOutcome outcome = color_with_requests(g, L, w, 31337);
  CHECK(validate_outcome(g, L, w, outcome).ok);
  CHECK(outcome.satisfied > 0);
}
