#include "flexi/discharging.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace flexi {

namespace {

constexpr long long kFifth = 3;      // 1/5
constexpr long long kTwoFifths = 6;  // 2/5
constexpr long long kFifteenth = 1;  // 1/15
constexpr long long kTwoFifteenths = 2;

bool is_poor(const Embedding& emb, const Face& f) {
  if (!f.is_triangle()) return false;
  for (int v : f.walk)
    if (emb.graph.degree(v) != 4) return false;
  return true;
}

void move_charge(ChargeLedger& ledger, Transfer t) {
  auto& from = t.from_vertex ? ledger.vertex_charge[t.from] : ledger.face_charge[t.from];
  auto& to = t.to_vertex ? ledger.vertex_charge[t.to] : ledger.face_charge[t.to];
  from -= t.amount;
  to += t.amount;
  ledger.transfers.push_back(t);
}

} // namespace

long long ChargeLedger::total() const {
  long long sum = 0;
  for (long long c : vertex_charge) sum += c;
  for (long long c : face_charge) sum += c;
  return sum;
}

ChargeLedger initial_charges(const Embedding& emb, const FaceIncidence& inc) {
  ChargeLedger ledger;
  ledger.vertex_charge.reserve(emb.graph.n);
  for (int v = 0; v < emb.graph.n; ++v)
    ledger.vertex_charge.push_back(15LL * (emb.graph.degree(v) - 4));
  ledger.face_charge.reserve(inc.faces.size());
  for (const Face& f : inc.faces) ledger.face_charge.push_back(15LL * (f.length() - 4));
  return ledger;
}

ChargeLedger initial_charges(const Embedding& emb) {
  return initial_charges(emb, build_face_incidence(emb));
}

std::vector<int> detect_poor_triangles(const Embedding& emb, const FaceIncidence& inc) {
  std::vector<int> poor;
  for (const Face& f : inc.faces)
    if (is_poor(emb, f)) poor.push_back(f.id);
  return poor;
}

std::vector<int> detect_poor_triangles(const Embedding& emb) {
  return detect_poor_triangles(emb, build_face_incidence(emb));
}

ChargeLedger apply_rule(const Embedding& emb, const FaceIncidence& inc, ChargeLedger ledger,
                        int rule) {
  const Graph& g = emb.graph;
  switch (rule) {
    case 1:
      for (const Face& f : inc.faces) {
        if (f.length() < 5) continue;
        for (int i = 0; i < f.length(); ++i) {
          const int a = f.walk[i];
          const int b = f.walk[(i + 1) % f.length()];
          const int other = inc.face_of(emb, b, a);
          if (inc.faces[other].is_triangle())
            move_charge(ledger, Transfer{1, false, f.id, false, other, kFifth});
        }
      }
      break;
    case 2:
      for (const Face& f : inc.faces) {
        if (!f.is_triangle()) continue;
        for (int v : f.walk)
          if (g.degree(v) >= 5)
            move_charge(ledger, Transfer{2, true, v, false, f.id, kTwoFifths});
      }
      break;
    case 3:
      for (const Face& f : inc.faces) {
        if (f.length() < 5) continue;
        for (int v : f.walk)
          if (g.degree(v) >= 5)
            move_charge(ledger, Transfer{3, true, v, false, f.id, kFifteenth});
      }
      break;
    case 4:
      for (const Face& f : inc.faces) {
        if (!is_poor(emb, f)) continue;
        for (int i = 0; i < f.length(); ++i) {
          const int a = f.walk[i];
          const int b = f.walk[(i + 1) % f.length()];
          const int other = inc.face_of(emb, b, a);
          if (inc.faces[other].length() >= 5)
            move_charge(ledger, Transfer{4, false, other, false, f.id, kTwoFifteenths});
        }
      }
      break;
    default:
      throw std::invalid_argument("rule must be 1..4");
  }
  return ledger;
}

ChargeLedger apply_rules(const Embedding& emb, const FaceIncidence& inc, ChargeLedger ledger) {
  for (int rule = 1; rule <= 4; ++rule) ledger = apply_rule(emb, inc, std::move(ledger), rule);
  return ledger;
}

ChargeLedger apply_rules(const Embedding& emb, const ChargeLedger& ledger) {
  return apply_rules(emb, build_face_incidence(emb), ledger);
}

AuditReport audit(const Embedding& emb, const FaceIncidence& inc, const ChargeLedger& ledger) {
  // conservation: final charges must equal initial plus the net of the log
  const ChargeLedger fresh = initial_charges(emb, inc);
  std::vector<long long> vertex_net = fresh.vertex_charge;
  std::vector<long long> face_net = fresh.face_charge;
  for (const Transfer& t : ledger.transfers) {
    (t.from_vertex ? vertex_net[t.from] : face_net[t.from]) -= t.amount;
    (t.to_vertex ? vertex_net[t.to] : face_net[t.to]) += t.amount;
  }
  if (vertex_net != ledger.vertex_charge || face_net != ledger.face_charge)
    throw std::logic_error("charge conservation violated: ledger disagrees with transfer log");

  AuditReport report;
  report.total = ledger.total();
  if (report.total != -120)
    throw std::logic_error("total charge is not -8: embedding invariants broken");
  for (int v = 0; v < emb.graph.n; ++v)
    if (ledger.vertex_charge[v] < 0) report.negative_vertices.push_back(v);
  for (const Face& f : inc.faces)
    if (ledger.face_charge[f.id] < 0) report.negative_faces.push_back(f.id);
  report.poor_triangles = detect_poor_triangles(emb, inc);

  std::vector<long long> payout(inc.faces.size(), 0);
  std::vector<long long> r3_income(inc.faces.size(), 0);
  std::vector<int> poor_edges(inc.faces.size(), 0);
  for (const Transfer& t : ledger.transfers) {
    if (!t.from_vertex && (t.rule == 1 || t.rule == 4)) payout[t.from] += t.amount;
    if (!t.to_vertex && t.rule == 3) r3_income[t.to] += t.amount;
    if (t.rule == 4 && !t.from_vertex) poor_edges[t.from] += 1;
  }
  for (const Face& f : inc.faces) {
    if (f.length() < 5) continue;
    FaceBound bound;
    bound.face = f.id;
    bound.length = f.length();
    bound.payout = payout[f.id];
    bound.cap = 15LL * (f.length() - 4) + r3_income[f.id];
    bound.ok = bound.payout <= bound.cap;
    bound.closing_lhs = 5LL * (f.length() - 2);
    bound.closing_rhs = 15LL * (f.length() - 4);
    bound.poor_neighbors = poor_edges[f.id];
    if (bound.poor_neighbors > f.length() - 4)
      report.alarms.push_back("face " + std::to_string(f.id) + " of length " +
                              std::to_string(f.length()) + " has " +
                              std::to_string(bound.poor_neighbors) +
                              " poor triangle edges, above the structural bound " +
                              std::to_string(f.length() - 4));
    report.bound_checks.push_back(bound);
  }
  return report;
}

AuditReport audit(const Embedding& emb, const ChargeLedger& ledger) {
  return audit(emb, build_face_incidence(emb), ledger);
}

Configuration locate_reducible_from_audit(const Embedding& emb, const AuditReport& report) {
  const Graph& g = emb.graph;
  const FaceIncidence inc = build_face_incidence(emb);

  // seeds: negative vertices plus the vertices of negative faces
  std::vector<int> dist(g.n, -1);
  std::vector<int> queue;
  auto seed = [&](int v) {
    if (dist[v] < 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  };
  for (int v : report.negative_vertices) seed(v);
  for (int f : report.negative_faces)
    for (int v : inc.faces[f].walk) seed(v);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    if (dist[v] == 2) continue;
    for (int u : g.adj[v]) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::sort(queue.begin(), queue.end(),
            [&](int a, int b) { return std::pair(dist[a], a) < std::pair(dist[b], b); });
  std::vector<int> order = queue;
  for (int v = 0; v < g.n; ++v)
    if (dist[v] < 0) order.push_back(v);

  for (int v : order) {
    Configuration candidate;
    if (g.degree(v) <= 3) {
      candidate.host = g;
      candidate.vertices = {v};
      candidate.kind = ConfigKind::Obs4;
      candidate.anchor = v;
    } else {
      std::vector<int> deg4;
      for (int u : g.adj[v])
        if (g.degree(u) == 4) deg4.push_back(u);
      if (static_cast<int>(deg4.size()) < g.degree(v) - 1) continue;
      candidate.host = g;
      candidate.vertices.assign(deg4.begin(), deg4.begin() + (g.degree(v) - 1));
      candidate.vertices.push_back(v);
      std::sort(candidate.vertices.begin(), candidate.vertices.end());
      candidate.kind = ConfigKind::Lemma5;
      candidate.anchor = v;
    }
    if (is_reducible(g, candidate.vertices, 0, 5).reducible()) return candidate;
  }
  throw TheoremViolation("no catalog configuration verifies in a graph that must contain one");
}

} // namespace flexi
