#pragma once

#include <vector>

#include "chanmatch/cube_embedding.hpp"
#include "chanmatch/types.hpp"

namespace chanmatch {

/// The decoding-equivalence class of a strictly positive subset vector:
/// its coordinates partitioned into equality classes, listed from smallest
/// value to largest. Two vectors are decoding equivalent exactly when they
/// produce the same ordered partition.
struct OrderCone {
  int n = 0;
  std::vector<std::vector<uint32_t>> classes;  // ascending by value
};

OrderCone cone_of(const SubsetVector& delta);

/// Minimum-dimension linear embedding of a weight, up to decoding
/// equivalence: the least |x|_1 over nonnegative integer minterm vectors x
/// whose symmetric-difference image lies in the weight's order cone (same
/// ordered partition, strictly positive). Solved by exhaustive search in
/// increasing |x|_1, so the reported optimum is proven and the argmin is
/// the lexicographically smallest in bitmask order. Guarded at n <= 4.
struct OptimalEmbedding {
  SubsetVector x_star;
  long long n_star = 0;
  LinearEmbedding embedding;        // realization of x_star; exact for its own weight (m=1, k=0)
  long long incumbent = 0;          // dimension of the scale_shift fallback embedding
  unsigned long long nodes_explored = 0;
  bool search_exhausted = true;     // every total below n_star was fully enumerated
};

OptimalEmbedding minimize_dimension(const WeightVector& w);

/// Point variant: only the pair-indexed coordinates of the image are order
/// constrained (they are the pairwise distances); every other coordinate is
/// merely nonnegative. Guarded at n <= 4 points.
struct OptimalPointEmbedding {
  SubsetVector x_star;
  long long n_star = 0;
  PointEmbedding embedding;
  long long incumbent = 0;
  unsigned long long nodes_explored = 0;
  bool search_exhausted = true;
};

OptimalPointEmbedding minimize_dimension_points(const DistanceMatrix& d);

/// The exact matrix of sym_transform in ascending bitmask order:
/// entry (J, I) is 1 when |I & J| is odd. Exposed for cross-checking.
std::vector<std::vector<int>> sym_matrix(int n);

}  // namespace chanmatch
