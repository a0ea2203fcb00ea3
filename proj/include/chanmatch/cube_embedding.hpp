#pragma once

#include <optional>
#include <vector>

#include "chanmatch/subset_patterns.hpp"
#include "chanmatch/types.hpp"

namespace chanmatch {

/// Linear map F_2^n -> H^N given by the images of the standard basis
/// vectors. Built so that weight(f(v)) = m * w(v) + k for the source weight
/// w, which keeps the induced distance decoding equivalent to the source.
struct LinearEmbedding {
  int n = 0;
  int N = 0;
  std::vector<CubeWord> generators;
  Rat m{1};
  Rat k{0};

  /// XOR of the generators selected by the bits of v.
  CubeWord image(uint32_t v) const;
};

/// Images of n points in H^N with pairwise Hamming distances m * d(i,j) + k.
struct PointEmbedding {
  int n = 0;
  int N = 0;
  std::vector<CubeWord> images;
  Rat m{1};
  Rat k{0};
};

/// Embed a strictly positive weight over F_2^n linearly into a Hamming
/// cube: solve the symmetric-difference pattern, repair it to nonnegative
/// integers with scale_shift, realize the family and read the generators
/// off the sets. The overload with (m, r) uses the given witness instead of
/// the canonical scaling rule (it must make m*x + r nonneg integer).
LinearEmbedding embed_weight(const WeightVector& w);
LinearEmbedding embed_weight(const WeightVector& w, const Rat& m, const Rat& r);

/// Padding of a semimetric to a translation-invariant weight over F_2^n:
/// pair subsets carry the distances, every other subset gets 1.
WeightVector dummy_weight(const DistanceMatrix& d);

/// Embed an arbitrary semimetric by padding it with dummy_weight and
/// embedding that; point i maps to the image of e_i.
PointEmbedding embed_points(const DistanceMatrix& d);

struct VerifyReport {
  bool ok = false;
  Rat m{0};
  Rat k{0};
  std::vector<uint32_t> bad_masks;               // weight law violations
  std::vector<std::pair<int, int>> bad_pairs;    // pairwise law violations
  bool order_preserved = false;
};

/// Recompute every weight / pairwise distance from the bit words, fit the
/// affine parameters from the data (or verify the declared ones) and report
/// all violations. Never throws on a bad embedding.
VerifyReport verify_embedding(const LinearEmbedding& e, const WeightVector& w);
VerifyReport verify_embedding(const PointEmbedding& e, const DistanceMatrix& d);

/// Exact isometric embedding (m = 1, k = 0) of an integer-valued distance,
/// decided by the bounded search over intersection patterns on n - 1 sets.
/// Point n maps to the zero word. Guarded at n <= 5 points; fractional
/// intersection targets short-circuit to no embedding.
std::optional<PointEmbedding> exact_embed(const DistanceMatrix& d);

}  // namespace chanmatch
