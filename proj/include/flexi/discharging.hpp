#pragma once

#include "flexi/embedding.hpp"
#include "flexi/reducibility.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace flexi {

// All charge amounts are integer multiples of 1/15 and are stored as plain
// integers in fifteenths; no floating point enters this module. The rule
// amounts are 1/5 = 3, 2/5 = 6, 1/15 = 1, 2/15 = 2 in these units.

struct Transfer {
  int rule = 0; // 1..4
  bool from_vertex = false;
  int from = -1;
  bool to_vertex = false;
  int to = -1;
  long long amount = 0; // fifteenths
};

struct ChargeLedger {
  std::vector<long long> vertex_charge; // fifteenths
  std::vector<long long> face_charge;
  std::vector<Transfer> transfers;

  long long total() const;
};

// ch(v) = deg(v) - 4, ch(f) = |f| - 4. The embedded graph is connected by
// construction, so the grand total is exactly -8 (-120 fifteenths).
ChargeLedger initial_charges(const Embedding& emb, const FaceIncidence& inc);
ChargeLedger initial_charges(const Embedding& emb);

// Triangle-faces all three of whose vertices have degree exactly four.
std::vector<int> detect_poor_triangles(const Embedding& emb, const FaceIncidence& inc);
std::vector<int> detect_poor_triangles(const Embedding& emb);

// Applies one redistribution rule. All four rules read only the static
// structure (degrees, face lengths, incidences, poverty), so they commute.
//  (1) a face of length >= 5 sends 1/5 across each edge it shares with a
//      triangle-face;
//  (2) a vertex of degree >= 5 sends 2/5 to each incident triangle-face;
//  (3) a vertex of degree >= 5 sends 1/15 to each incident face of
//      length >= 5;
//  (4) a face of length >= 5 sends 2/15 across each edge it shares with a
//      poor triangle-face.
// Sharing is counted per edge: a long face meeting the same triangle along
// two edges pays twice.
ChargeLedger apply_rule(const Embedding& emb, const FaceIncidence& inc, ChargeLedger ledger,
                        int rule);

// All four rules in sequence.
ChargeLedger apply_rules(const Embedding& emb, const ChargeLedger& ledger);
ChargeLedger apply_rules(const Embedding& emb, const FaceIncidence& inc, ChargeLedger ledger);

// Per-face payout record for faces of length >= 5: the face's total payout
// (rules 1 and 4) against its initial charge plus rule-3 income, and the
// plain arithmetic instance (|f|-2)/3 <= |f|-4 of the closing inequality.
struct FaceBound {
  int face = -1;
  int length = 0;
  long long payout = 0;      // fifteenths sent by rules 1 and 4
  long long cap = 0;         // 15*(|f|-4) + rule-3 income
  bool ok = false;           // payout <= cap
  long long closing_lhs = 0; // 5*(|f|-2)  ==  (|f|-2)/3 in fifteenths
  long long closing_rhs = 0; // 15*(|f|-4)
  int poor_neighbors = 0;    // rule-4 edges to poor triangles
};

struct AuditReport {
  long long total = 0; // fifteenths
  std::vector<int> negative_vertices;
  std::vector<int> negative_faces;
  std::vector<int> poor_triangles;
  std::vector<FaceBound> bound_checks;
  std::vector<std::string> alarms;
};

// Verifies exact conservation against the transfer log (a violation is an
// internal error and throws std::logic_error), then reports the total, every
// element with a negative final charge, the poor triangles, and per-face
// bound records. A face of length >= 5 with more than |f|-4 poor triangle
// edges contradicts the structure the closing argument relies on and raises
// an alarm entry.
AuditReport audit(const Embedding& emb, const ChargeLedger& ledger);
AuditReport audit(const Embedding& emb, const FaceIncidence& inc, const ChargeLedger& ledger);

// Raised when a catalog configuration that must exist cannot be found.
struct TheoremViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Finds a catalog configuration, searching the second neighborhood of the
// audit's negative elements first and then the whole graph. Throws
// TheoremViolation when nothing verifies (impossible for planar inputs
// without 4-cycles).
Configuration locate_reducible_from_audit(const Embedding& emb, const AuditReport& report);

} // namespace flexi
