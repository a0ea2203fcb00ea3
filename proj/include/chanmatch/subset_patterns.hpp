#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "chanmatch/types.hpp"

namespace chanmatch {

/// Minterm cardinalities of a set family: entry I counts the ground
/// elements that belong to exactly the sets indexed by I.
SubsetVector minterm_vector(const SetFamily& f);

/// J-wise intersection sizes from minterm counts: value at J is the sum of
/// x over all supersets I of J. Linear; computed with the superset-sum
/// dynamic program in O(n 2^n) ring operations.
SubsetVector cap_transform(const SubsetVector& x);

/// J-wise symmetric-difference sizes from minterm counts, computed through
/// the intersection values: sum over nonempty K inside J of
/// (-2)^(|K|-1) * cap_K.
SubsetVector sym_transform(const SubsetVector& x);

/// Inverse of cap_transform (Moebius inversion over the superset lattice).
/// Always solvable; the solution may be negative or fractional.
SubsetVector solve_cap(const SubsetVector& c);

/// Intersection values recovered from symmetric-difference values, class by
/// class of increasing |J|. The intermediate of solve_sym.
SubsetVector sym_to_cap(const SubsetVector& delta);

/// Inverse of sym_transform: recover the intersection values, then invert
/// the intersection transform.
SubsetVector solve_sym(const SubsetVector& delta);

/// A minterm vector is realized by an actual set family exactly when every
/// entry is a nonnegative integer.
bool check_realizable(const SubsetVector& x);

/// Deterministic realization: ground elements are allocated consecutively,
/// minterms in ascending bitmask order. Requires check_realizable(x).
SetFamily realize(const SubsetVector& x);

/// Affine repair of a fractional or negative minterm vector: m clears the
/// denominators (lcm), r lifts the minimum to zero, and the shift passes
/// through the symmetric-difference transform as k = r * 2^(n-1). The
/// result has sym_transform(x') = m * sym_transform(x) + k, which keeps the
/// weak ordering whenever m > 0.
struct ScalingWitness {
  Rat m;  // positive integer
  Rat r;
  Rat k;  // r * 2^(n-1)
  SubsetVector x_prime;
};

ScalingWitness scale_shift(const SubsetVector& x);

struct PatternConstraint {
  enum class Kind { Cap, Sym };
  uint32_t subset = 0;  // nonempty bitmask
  Kind kind = Kind::Cap;
  Rat value;
};

/// Bounded exhaustive search for a set family meeting a partial pattern:
/// cap/sym constraints plus an optional black-box predicate on the minterm
/// vector. Variables are enumerated in ascending bitmask order, values from
/// zero upward, so the first hit is the lexicographically smallest. When no
/// bound is given it is derived from singleton constraints (x_I is at most
/// min over i in I of |A_i|); if none cover every variable the search is
/// unbounded and rejected. Guarded at n <= 5.
std::optional<SetFamily> search_realization(
    int n, const std::vector<PatternConstraint>& constraints,
    const std::function<bool(const SubsetVector&)>& predicate = nullptr,
    std::optional<long long> bound = std::nullopt);

}  // namespace chanmatch
