// flexi: exact toolkit for list-coloring flexibility on planar graphs
// without 4-cycles. Subcommands: gen, peel, discharge, color, bench,
// verify-config. Exit codes: 0 success/verified, 1 usage or input error,
// 2 mathematical counterexample or stuck peel, 3 theorem-violation alarm.

#include "flexi/discharging.hpp"
#include "flexi/flex_engine.hpp"
#include "flexi/io.hpp"
#include "flexi/reducibility.hpp"
#include "flexi/rng.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace flexi;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string fifteenths(long long q) { return std::to_string(q) + "/15"; }

void print_witness(const std::vector<int>& vertices, const ListAssignment& witness) {
  for (std::size_t i = 0; i < witness.lists.size(); ++i)
    std::cout << "witness list " << vertices[i] << ": " << join(witness.lists[i]) << "\n";
}

int run_gen(int n, std::uint64_t seed) {
  std::cout << serialize_embedding(generate_c4_free_planar(n, seed));
  return 0;
}

int run_peel(const std::string& path) {
  const Embedding emb = parse_embedding(read_file(path));
  const PeelResult result = peel(emb.graph);
  switch (result.status) {
    case PeelResult::Status::Complete:
      for (std::size_t i = 0; i < result.decomposition.layers.size(); ++i) {
        const auto& layer = result.decomposition.layers[i];
        std::cout << "layer " << i << " kind " << to_string(layer.kind) << " vertices "
                  << join(layer.vertices) << "\n";
      }
      return 0;
    case PeelResult::Status::Stuck:
      std::cout << "stuck residual " << join(result.stuck_residual) << "\n";
      return 2;
    case PeelResult::Status::FourCycle:
      std::cerr << "error: input contains a 4-cycle: " << result.four_cycle[0] << " "
                << result.four_cycle[1] << " " << result.four_cycle[2] << " "
                << result.four_cycle[3] << "\n";
      return 1;
    case PeelResult::Status::CertificateFailed:
      std::cerr << "alarm: " << result.message << " (residual " << join(result.stuck_residual)
                << ")\n";
      return 3;
  }
  return 1;
}

int run_discharge(const std::string& path) {
  const Embedding emb = parse_embedding(read_file(path));
  const FaceIncidence inc = build_face_incidence(emb);
  ChargeLedger ledger = initial_charges(emb, inc);
  ledger = apply_rules(emb, inc, std::move(ledger));
  const AuditReport report = audit(emb, inc, ledger);
  std::cout << "total " << fifteenths(report.total) << "\n";
  for (int v : report.negative_vertices)
    std::cout << "negative vertex " << v << " charge " << fifteenths(ledger.vertex_charge[v])
              << "\n";
  for (int f : report.negative_faces)
    std::cout << "negative face " << f << " length " << inc.faces[f].length() << " charge "
              << fifteenths(ledger.face_charge[f]) << "\n";
  for (int f : report.poor_triangles) std::cout << "poor face " << f << "\n";
  for (const auto& bound : report.bound_checks)
    std::cout << "bound face " << bound.face << " length " << bound.length << " payout "
              << fifteenths(bound.payout) << " cap " << fifteenths(bound.cap) << " "
              << (bound.ok ? "ok" : "violated") << " closing " << fifteenths(bound.closing_lhs)
              << " <= " << fifteenths(bound.closing_rhs) << "\n";
  for (const auto& alarm : report.alarms) std::cout << "alarm " << alarm << "\n";
  return report.alarms.empty() ? 0 : 3;
}

int run_color(const std::string& emb_path, const std::string& req_path, std::uint64_t seed) {
  const Embedding emb = parse_embedding(read_file(emb_path));
  const RequestData data = parse_requests(read_file(req_path), emb.graph);
  const FlexOutcome outcome = color_with_requests(emb.graph, data.lists, data.weights, seed);
  std::cout << serialize_outcome(outcome);
  return 0;
}

struct CustomConfig {
  Graph host;
  std::vector<int> vertices;
};

CustomConfig parse_config_file(const std::string& text) {
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> vertices;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "V") {
      if (!(ls >> n)) throw std::runtime_error("config: V needs a count");
    } else if (tag == "E") {
      int u, v;
      if (!(ls >> u >> v)) throw std::runtime_error("config: E needs two endpoints");
      edges.emplace_back(u, v);
    } else if (tag == "H") {
      int v;
      while (ls >> v) vertices.push_back(v);
    } else {
      throw std::runtime_error("config: unknown line tag '" + tag + "'");
    }
  }
  if (n < 0) throw std::runtime_error("config: missing V line");
  if (vertices.empty()) throw std::runtime_error("config: missing H line");
  return {build_graph(n, edges), vertices};
}

int run_verify(const ReducibilityOutcome& outcome, const Graph& host,
               const std::vector<int>& vertices, int d, int k) {
  if (outcome.reducible()) {
    const auto& cert = *outcome.certificate;
    std::cout << "verified (" << d << "," << k << ")-reducible kind "
              << to_string(cert.configuration.kind) << " vertices "
              << join(cert.configuration.vertices) << " demands "
              << join(base_demand(host, vertices, k).demand) << "\n";
    return 0;
  }
  switch (outcome.failure) {
    case ReducibilityOutcome::Failure::StructuralDemand:
      std::cout << "counterexample: base demand negative (configuration cannot satisfy the "
                   "forbidden-color condition)\n";
      break;
    case ReducibilityOutcome::Failure::Fix:
      std::cout << "counterexample FIX at vertex " << outcome.violating_vertex << "\n";
      print_witness(vertices, outcome.witness);
      break;
    case ReducibilityOutcome::Failure::Forb:
      std::cout << "counterexample FORB at set {" << join(outcome.violating_set) << "}\n";
      print_witness(vertices, outcome.witness);
      break;
    default:
      break;
  }
  return 2;
}

int run_bench(int n, int graphs, int trials, std::uint64_t seed) {
  std::pair<long long, long long> global_min{1, 1};
  double mean_sum = 0.0;
  for (int gi = 0; gi < graphs; ++gi) {
    const Embedding emb = generate_c4_free_planar(n, derive_seed(seed, 2 * gi));
    SplitMix64 rng(derive_seed(seed, 2 * gi + 1));
    ListAssignment lists;
    lists.lists.assign(emb.graph.n, {});
    for (int v = 0; v < emb.graph.n; ++v) {
      int palette[10] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
      for (int i = 0; i < 5; ++i) {
        const int j = i + static_cast<int>(rng.below(10 - i));
        std::swap(palette[i], palette[j]);
        lists.lists[v].push_back(palette[i]);
      }
      std::sort(lists.lists[v].begin(), lists.lists[v].end());
    }
    const auto stats = estimate_epsilon(
        emb.graph, lists, RequestSampler{0.3}, trials, derive_seed(seed, 2 * gi + 1),
        [&](int t, const FlexOutcome& outcome) {
          const auto [num, den] = outcome.fraction();
          std::cout << "trial graph=" << gi << " index=" << t << " seed=" << outcome.seed
                    << " fraction=" << num << "/" << den << " satisfied=" << outcome.satisfied
                    << " total=" << outcome.weight_total << "\n";
        });
    std::printf("graph %d n=%d min_fraction=%lld/%lld mean_fraction=%.6f ci95=[%.6f,%.6f]\n", gi,
                emb.graph.n, stats.min_fraction.first, stats.min_fraction.second,
                stats.mean_fraction, stats.ci95_low, stats.ci95_high);
    mean_sum += stats.mean_fraction;
    if (stats.min_fraction.first * global_min.second < global_min.first * stats.min_fraction.second)
      global_min = stats.min_fraction;
  }
  std::printf("summary graphs=%d trials=%d min_fraction=%lld/%lld mean_of_means=%.6f\n", graphs,
              trials, global_min.first, global_min.second, mean_sum / graphs);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact flexibility toolkit for planar graphs without 4-cycles"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "emit a generated embedding document");
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--seed", gen_seed, "generator seed");

  auto* peel_cmd = app.add_subcommand("peel", "peel an embedding into reducible layers");
  std::string peel_path;
  peel_cmd->add_option("embedding", peel_path, "embedding document")->required();

  auto* discharge = app.add_subcommand("discharge", "run the exact discharging audit");
  std::string discharge_path;
  discharge->add_option("embedding", discharge_path, "embedding document")->required();

  auto* color = app.add_subcommand("color", "produce a request-respecting list coloring");
  std::string color_emb, color_req;
  std::uint64_t color_seed = 0;
  color->add_option("embedding", color_emb, "embedding document")->required();
  color->add_option("requests", color_req, "request document")->required();
  color->add_option("--seed", color_seed, "engine seed");

  auto* verify = app.add_subcommand("verify-config", "check a configuration for reducibility");
  int verify_deg = -1;
  std::string verify_triangles = "none";
  std::string verify_config_path;
  int verify_d = 0, verify_k = 5;
  verify->add_option("--deg", verify_deg, "center degree of the star configuration");
  verify->add_option("--triangles", verify_triangles,
                     "triangle count through the center, or 'none'");
  verify->add_option("--config", verify_config_path, "custom configuration file (V/E/H lines)");
  verify->add_option("--d", verify_d, "independence distance parameter");
  verify->add_option("--k", verify_k, "list size parameter");

  auto* bench = app.add_subcommand("bench", "corpus satisfaction sweep");
  int bench_n = 50, bench_graphs = 5, bench_trials = 100;
  std::uint64_t bench_seed = 0;
  bench->add_option("--n", bench_n, "vertices per generated graph")->required();
  bench->add_option("--graphs", bench_graphs, "number of graphs")->required();
  bench->add_option("--trials", bench_trials, "trials per graph")->required();
  bench->add_option("--seed", bench_seed, "sweep seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    if (gen->parsed()) return run_gen(gen_n, gen_seed);
    if (peel_cmd->parsed()) return run_peel(peel_path);
    if (discharge->parsed()) return run_discharge(discharge_path);
    if (color->parsed()) return run_color(color_emb, color_req, color_seed);
    if (bench->parsed()) return run_bench(bench_n, bench_graphs, bench_trials, bench_seed);
    if (verify->parsed()) {
      if (!verify_config_path.empty()) {
        const CustomConfig config = parse_config_file(read_file(verify_config_path));
        return run_verify(is_reducible(config.host, config.vertices, verify_d, verify_k),
                          config.host, config.vertices, verify_d, verify_k);
      }
      if (verify_deg < 0) throw std::runtime_error("verify-config needs --deg or --config");
      const int triangles = verify_triangles == "none" ? 0 : std::stoi(verify_triangles);
      const Lemma5Shape shape = make_lemma5_host(verify_deg, triangles);
      return run_verify(is_reducible(shape.host, shape.vertices, verify_d, verify_k), shape.host,
                        shape.vertices, verify_d, verify_k);
    }
  } catch (const TheoremViolation& e) {
    std::cerr << "alarm: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
