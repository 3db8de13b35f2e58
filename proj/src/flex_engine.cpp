#include "flexi/flex_engine.hpp"

#include "flexi/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace flexi {

long long WeightedRequest::total() const {
  long long sum = 0;
  for (const auto& [pair, weight] : weights) sum += weight;
  return sum;
}

WeightedRequest Request::as_weighted() const {
  WeightedRequest w;
  for (const auto& [v, c] : choice) w.weights[{v, c}] = 1'000'000;
  return w;
}

std::pair<long long, long long> FlexOutcome::fraction() const {
  if (vacuous) return {1, 1};
  const long long g = std::gcd(satisfied, weight_total);
  if (g == 0) return {0, 1};
  return {satisfied / g, weight_total / g};
}

double FlexOutcome::fraction_value() const {
  const auto [num, den] = fraction();
  return static_cast<double>(num) / static_cast<double>(den);
}

namespace {

// Exact extension search on one layer. Vertices are layer-local; candidate
// colors per vertex come pre-ordered (requested colors first). Complete
// backtracking, first solution.
struct LayerSolver {
  const Graph* h = nullptr;
  const std::vector<std::vector<int>>* options = nullptr;
  std::vector<int> color;

  bool solve() {
    // smallest remaining candidate set first
    int best = -1;
    std::size_t best_count = SIZE_MAX;
    for (int v = 0; v < h->n; ++v) {
      if (color[v] >= 0) continue;
      std::size_t count = 0;
      for (int c : (*options)[v])
        if (usable(v, c)) ++count;
      if (count < best_count) {
        best_count = count;
        best = v;
      }
    }
    if (best < 0) return true;
    for (int c : (*options)[best]) {
      if (!usable(best, c)) continue;
      color[best] = c;
      if (solve()) return true;
      color[best] = -1;
    }
    return false;
  }

  bool usable(int v, int c) const {
    for (int u : h->adj[v])
      if (color[u] == c) return false;
    return true;
  }
};

} // namespace

FlexOutcome color_with_requests(const Graph& g, const ListAssignment& L, const WeightedRequest& w,
                                std::uint64_t seed, const PeelDecomposition* peeled,
                                FlexTrace* trace) {
  const int n = g.n;
  if (static_cast<int>(L.lists.size()) != n)
    throw std::invalid_argument("list assignment must cover every vertex");
  for (int v = 0; v < n; ++v)
    if (L.lists[v].size() < 5)
      throw std::invalid_argument("every list must have at least five colors");
  for (const auto& [pair, weight] : w.weights) {
    const auto [v, c] = pair;
    if (v < 0 || v >= n) throw std::invalid_argument("request names an unknown vertex");
    if (weight < 0) throw std::invalid_argument("request weights must be nonnegative");
    if (std::find(L.lists[v].begin(), L.lists[v].end(), c) == L.lists[v].end())
      throw std::invalid_argument("requested color is not on the vertex list");
  }

  PeelResult fresh;
  const PeelDecomposition* decomp = peeled;
  if (!decomp) {
    fresh = peel(g);
    if (!fresh.complete())
      throw std::invalid_argument("graph does not peel: " + fresh.message);
    decomp = &fresh.decomposition;
  }
  if (decomp->residuals.empty() || static_cast<int>(decomp->residuals.front().size()) != n)
    throw std::invalid_argument("peel decomposition does not match the graph");

  SplitMix64 rng(seed);
  FlexOutcome outcome;
  outcome.seed = seed;
  outcome.weight_total = w.total();
  outcome.vacuous = outcome.weight_total == 0;
  outcome.coloring.color.assign(n, -1);

  // Requested colors with positive weight, per vertex, sorted by weight
  // descending then color ascending: the extension search prefers them.
  std::vector<std::vector<int>> wanted(n);
  std::vector<std::pair<int, int>> positive_pairs;
  for (const auto& [pair, weight] : w.weights) {
    if (weight <= 0) continue;
    positive_pairs.push_back(pair);
    wanted[pair.first].push_back(pair.second);
  }
  auto weight_of = [&](int v, int c) {
    const auto it = w.weights.find({v, c});
    return it == w.weights.end() ? 0LL : it->second;
  };
  for (int v = 0; v < n; ++v)
    std::sort(wanted[v].begin(), wanted[v].end(), [&](int a, int b) {
      return std::pair(-weight_of(v, a), a) < std::pair(-weight_of(v, b), b);
    });

  // One protected pair, drawn uniformly: its color is withheld from neighbors
  // until the pair's own layer pins it.
  int protect_v = -1, protect_c = -1;
  if (!positive_pairs.empty()) {
    const auto& pick = positive_pairs[rng.below(positive_pairs.size())];
    protect_v = pick.first;
    protect_c = pick.second;
  }
  if (trace) {
    trace->layers.clear();
    trace->protected_vertex = protect_v;
    trace->protected_color = protect_c;
  }

  std::vector<char> colored(n, 0);
  const auto& layers = decomp->layers;
  for (std::size_t step = layers.size(); step-- > 0;) {
    const PeelLayer& layer = layers[step];
    const auto sub = induced_subgraph(g, layer.vertices);
    const Graph& h = sub.graph;
    const int hn = h.n;
    const bool own_layer =
        protect_v >= 0 && std::binary_search(layer.vertices.begin(), layer.vertices.end(), protect_v);
    const bool protecting = protect_v >= 0 && !colored[protect_v] && !own_layer;

    // residual lists and the certificate's demand floor
    std::vector<std::vector<int>> residual(hn);
    for (int i = 0; i < hn; ++i) {
      const int v = sub.to_host[i];
      int colored_nbrs = 0;
      for (int u : g.adj[v])
        if (colored[u]) ++colored_nbrs;
      for (int c : L.lists[v]) {
        bool eaten = false;
        for (int u : g.adj[v])
          if (colored[u] && outcome.coloring.color[u] == c) {
            eaten = true;
            break;
          }
        if (!eaten) residual[i].push_back(c);
      }
      const int deg_h = h.degree(i);
      const int deg_host = deg_h + colored_nbrs;
      if (static_cast<int>(residual[i].size()) < deg_h + 5 - deg_host)
        throw std::logic_error("residual list fell below the certified demand");
    }

    // protection: withhold the protected color from uncolored neighbors
    std::vector<std::vector<int>> usable = residual;
    int forbidden_count = 0;
    if (protecting) {
      for (int i = 0; i < hn; ++i) {
        const int v = sub.to_host[i];
        if (!g.has_edge(protect_v, v)) continue;
        ++forbidden_count;
        std::erase(usable[i], protect_c);
      }
      if (forbidden_count > 3)
        throw std::logic_error("protected color touches more than k-2 layer vertices");
    }

    // requested pairs still alive in this layer
    std::vector<std::pair<int, int>> candidates; // (host vertex, color)
    for (int i = 0; i < hn; ++i) {
      const int v = sub.to_host[i];
      for (int c : wanted[v])
        if (std::find(usable[i].begin(), usable[i].end(), c) != usable[i].end())
          candidates.emplace_back(v, c);
    }
    std::sort(candidates.begin(), candidates.end());

    int pin_v = -1, pin_c = -1;
    if (own_layer) {
      pin_v = protect_v;
      pin_c = protect_c;
      const int local = static_cast<int>(
          std::lower_bound(sub.to_host.begin(), sub.to_host.end(), protect_v) -
          sub.to_host.begin());
      if (std::find(residual[local].begin(), residual[local].end(), protect_c) ==
          residual[local].end())
        throw std::logic_error("protected color was eaten despite the forbidding scheme");
    } else if (!candidates.empty()) {
      const auto& pick = candidates[rng.below(candidates.size())];
      pin_v = pick.first;
      pin_c = pick.second;
    }

    // candidate color order: requested colors by weight, then ascending
    std::vector<std::vector<int>> options(hn);
    for (int i = 0; i < hn; ++i) {
      const int v = sub.to_host[i];
      for (int c : wanted[v])
        if (std::find(usable[i].begin(), usable[i].end(), c) != usable[i].end())
          options[i].push_back(c);
      for (int c : usable[i])
        if (std::find(options[i].begin(), options[i].end(), c) == options[i].end())
          options[i].push_back(c);
    }

    LayerSolver solver;
    solver.h = &h;
    bool pinned_ok = false;
    std::vector<std::vector<int>> pinned = options;
    if (pin_v >= 0) {
      const int local = static_cast<int>(
          std::lower_bound(sub.to_host.begin(), sub.to_host.end(), pin_v) - sub.to_host.begin());
      pinned[local] = {pin_c};
      solver.options = &pinned;
      solver.color.assign(hn, -1);
      pinned_ok = solver.solve();
      if (!pinned_ok && (own_layer || !protecting))
        throw std::logic_error("pin certified by the fixing condition failed to extend");
    }
    if (pin_v < 0 || !pinned_ok) {
      solver.options = &options;
      solver.color.assign(hn, -1);
      if (!solver.solve())
        throw std::logic_error("layer extension certified by the demands failed");
    }
    for (int i = 0; i < hn; ++i) {
      const int v = sub.to_host[i];
      outcome.coloring.color[v] = solver.color[i];
      colored[v] = 1;
    }
    if (trace) {
      FlexTrace::Layer tl;
      tl.candidates = candidates;
      tl.honored_vertex = pin_v;
      tl.honored_color = pin_c;
      tl.pin_succeeded = pin_v >= 0 && pinned_ok;
      trace->layers.push_back(std::move(tl));
    }
  }

  for (const auto& [pair, weight] : w.weights)
    if (outcome.coloring.color[pair.first] == pair.second) outcome.satisfied += weight;
  return outcome;
}

Request sample_request(const Graph& g, const ListAssignment& L, const RequestSampler& sampler,
                       std::uint64_t trial_seed) {
  SplitMix64 rng(trial_seed);
  // a positive rate always requests something; rate zero means truly empty
  int count = static_cast<int>(std::lround(sampler.rate * static_cast<double>(g.n)));
  if (sampler.rate > 0.0 && count == 0) count = 1;
  // partial Fisher-Yates over the vertex ids
  std::vector<int> ids(g.n);
  std::iota(ids.begin(), ids.end(), 0);
  Request request;
  for (int i = 0; i < count && i < g.n; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n - i)));
    std::swap(ids[i], ids[j]);
    const int v = ids[i];
    request.choice[v] = L.lists[v][rng.below(L.lists[v].size())];
  }
  return request;
}

EpsilonStats estimate_epsilon(const Graph& g, const ListAssignment& L,
                              const RequestSampler& sampler, int trials, std::uint64_t seed,
                              const std::function<void(int, const FlexOutcome&)>& observer) {
  if (trials < 1) throw std::invalid_argument("at least one trial required");
  const PeelResult peeled = peel(g);
  if (!peeled.complete())
    throw std::invalid_argument("graph does not peel: " + peeled.message);

  EpsilonStats stats;
  stats.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    const Request request = sample_request(g, L, sampler, trial_seed);
    const FlexOutcome outcome =
        color_with_requests(g, L, request.as_weighted(), trial_seed, &peeled.decomposition);
    const auto frac = outcome.fraction();
    const double value = outcome.fraction_value();
    sum += value;
    sum_sq += value * value;
    if (first || frac.first * stats.min_fraction.second < stats.min_fraction.first * frac.second) {
      stats.min_fraction = frac;
      stats.min_fraction_value = value;
      first = false;
    }
    if (observer) observer(t, outcome);
  }
  stats.mean_fraction = sum / trials;
  const double variance =
      trials > 1 ? std::max(0.0, (sum_sq - sum * sum / trials) / (trials - 1)) : 0.0;
  const double half = 1.96 * std::sqrt(variance / trials);
  stats.ci95_low = stats.mean_fraction - half;
  stats.ci95_high = stats.mean_fraction + half;
  return stats;
}

ValidationResult validate_outcome(const Graph& g, const ListAssignment& L,
                                  const WeightedRequest& w, const FlexOutcome& o) {
  if (static_cast<int>(o.coloring.color.size()) != g.n)
    return {false, "coloring does not cover the vertex set"};
  for (int v = 0; v < g.n; ++v) {
    const int c = o.coloring.color[v];
    if (std::find(L.lists[v].begin(), L.lists[v].end(), c) == L.lists[v].end())
      return {false, "vertex " + std::to_string(v) + " uses a color off its list"};
  }
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[v])
      if (u > v && o.coloring.color[u] == o.coloring.color[v])
        return {false, "adjacent vertices " + std::to_string(v) + "," + std::to_string(u) +
                           " share a color"};
  long long satisfied = 0, total = 0;
  for (const auto& [pair, weight] : w.weights) {
    total += weight;
    if (o.coloring.color[pair.first] == pair.second) satisfied += weight;
  }
  if (total != o.weight_total) return {false, "recorded total weight disagrees"};
  if (satisfied != o.satisfied) return {false, "recorded satisfied weight disagrees"};
  if (o.vacuous != (total == 0)) return {false, "vacuous flag disagrees with the total"};
  if (!o.vacuous && (o.satisfied < 0 || o.satisfied > o.weight_total))
    return {false, "satisfied weight outside [0, total]"};
  return {true, ""};
}

std::string serialize_outcome(const FlexOutcome& o) {
  std::string out;
  for (std::size_t v = 0; v < o.coloring.color.size(); ++v)
    out += "color " + std::to_string(v) + " " + std::to_string(o.coloring.color[v]) + "\n";
  const auto [num, den] = o.fraction();
  out += "fraction " + std::to_string(num) + "/" + std::to_string(den);
  if (o.vacuous) out += " vacuous";
  out += "\n";
  return out;
}

} // namespace flexi
