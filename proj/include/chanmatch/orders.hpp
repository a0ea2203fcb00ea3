#pragma once

#include <vector>

#include "chanmatch/types.hpp"

namespace chanmatch {

enum class Direction { Descending, Ascending };

/// Column-wise dense ranking. Descending ranks the largest entry of each
/// column 1 (the usual view of a probability matrix), ascending ranks the
/// smallest entry 1 (the usual view of a distance matrix). Ties share a
/// rank and the next distinct value gets the next rank.
WeakOrderMatrix weak_order(const RatMat& m, Direction dir);

/// Two matrices induce the same decoder exactly when their column weak
/// orders agree; the direction does not change the verdict.
bool same_weak_order(const RatMat& a, const RatMat& b, Direction dir);

/// Maximum-likelihood decoding: the full argmax set of P(j | c) over c in C.
std::vector<int> mld_decode(const Channel& p, const Code& c, int j);

/// Minimum-distance decoding: the full argmin set of d(c, j) over c in C.
std::vector<int> mdd_decode(const DistanceMatrix& d, const Code& c, int j);

/// A channel and a distance are matched when MLD and MDD coincide for every
/// code and received symbol; equivalently when the descending order of the
/// channel equals the ascending order of the distance.
bool matched(const Channel& p, const DistanceMatrix& d);

struct AgreementReport {
  bool agree = true;
  Code witness_code;        // populated when agree is false
  int witness_symbol = -1;  // received symbol of the disagreement
  explicit operator bool() const { return agree; }
};

/// Brute-force check that mld_decode and mdd_decode return identical sets
/// for every nonempty code and every received symbol. Enumerates all
/// 2^n - 1 codes, so n is capped at 20.
AgreementReport decoder_agreement_oracle(const Channel& p, const DistanceMatrix& d);

/// The distinct balls B(x0, r), sorted by radius, as r sweeps the values of
/// column x0. Strictly increasing under inclusion; the last ball is [n].
std::vector<std::vector<int>> ball_family(const DistanceMatrix& d, int x0);

/// Squeeze a semimetric into (1, 2] off the diagonal: v -> 1 + v / max.
/// The result is a metric with the same column weak order as the input.
DistanceMatrix to_metric(const DistanceMatrix& d);

/// Distance induced by a translation-invariant weight over F_2^n:
/// d(x, y) = w(x XOR y) on the 2^n points identified with bitmasks.
DistanceMatrix weight_to_distance(const WeightVector& w);

struct DistanceClass {
  bool is_semimetric = false;  // zero only on the diagonal
  bool is_metric = false;      // semimetric satisfying the triangle inequality
};

DistanceClass classify_distance(const DistanceMatrix& d);

}  // namespace chanmatch
