#pragma once

#include <optional>
#include <vector>

#include "chanmatch/orders.hpp"
#include "chanmatch/types.hpp"

namespace chanmatch {

enum class MetrizeMode { Distance, Semimetric, Metric };

/// Unordered pair of symbols standing for the unknown d(a, b). The pair
/// (i, i) stands for the shared zero node d(i, i) = 0; all diagonal pairs
/// denote the same node.
struct PairVar {
  int a = 0, b = 0;  // a <= b

  static PairVar make(int i, int j) { return i <= j ? PairVar{i, j} : PairVar{j, i}; }
  bool is_zero() const { return a == b; }
  friend bool operator==(const PairVar&, const PairVar&) = default;
  friend auto operator<=>(const PairVar&, const PairVar&) = default;
};

/// One justified relation between two distance unknowns: the entries
/// (row_i, column) and (row_k, column) compared through the channel's
/// descending rank matrix.
struct Relation {
  PairVar from;  // the smaller side for strict relations
  PairVar to;
  bool strict = false;
  int column = 0;
  int row_i = 0, row_k = 0;
};

/// All relations a channel imposes on a matched distance, plus the two
/// diagonal feasibility flags. diagonal_ok: every diagonal entry is ranked 1
/// in its column. diagonal_strict: rank 1 appears only on the diagonal.
struct ConstraintGraph {
  int n = 0;
  std::vector<Relation> equalities;
  std::vector<Relation> stricts;
  bool diagonal_ok = true;
  bool diagonal_strict = true;
};

/// A machine-checkable reason why no matched distance exists: either a
/// closed chain of derivable relations with at least one strict step, or a
/// diagonal violation (a diagonal entry not ranked first, or -- under the
/// semimetric/metric modes -- an off-diagonal entry ranked first).
struct Certificate {
  enum class Kind { Cycle, Diagonal };
  Kind kind = Kind::Cycle;
  MetrizeMode mode = MetrizeMode::Distance;
  std::vector<Relation> steps;  // Kind::Cycle: steps[t].to == steps[t+1].from, cyclically
  int diag_index = -1;          // Kind::Diagonal
  int diag_column = -1;         // >= 0: off-diagonal rank-1 witness at (diag_index, diag_column)
};

/// One value class of the constructed distance: the pair variables forced
/// equal, with the canonical value they receive.
struct RankClass {
  std::vector<PairVar> pairs;
  long long value = 0;
};

struct MetrizationResult {
  std::optional<DistanceMatrix> distance;
  std::vector<RankClass> classes;  // ascending by value; only when matched
  std::optional<Certificate> certificate;

  bool is_matched() const { return distance.has_value(); }
};

/// Read the per-column rank comparisons of the channel off O-(P): equal
/// ranks force equality, strictly ordered ranks force a strict inequality
/// between the corresponding distance unknowns. Diagonal entries stand for
/// the zero node.
ConstraintGraph extract_constraints(const Channel& p, MetrizeMode mode);

/// Decide whether a distance matched to the channel exists and construct
/// one if so. Equality classes are contracted, the strict relations must
/// form a DAG on the classes, and each class receives the canonical value
/// "longest strict path from the zero class". Mode Semimetric forbids
/// off-diagonal zeros; mode Metric additionally squeezes the result through
/// to_metric. On failure the certificate re-derives the contradiction.
MetrizationResult metrize(const Channel& p, MetrizeMode mode);

/// True iff every step of the certificate is individually derivable from
/// the channel's rank matrix and the assembled statement is contradictory.
/// Structurally malformed certificates (empty cycle, broken chain, indices
/// out of range) throw.
bool check_certificate(const Channel& p, const Certificate& cert);

}  // namespace chanmatch
