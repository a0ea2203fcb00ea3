#pragma once

#include <random>
#include <string>
#include <vector>

#include "chanmatch/io.hpp"
#include "chanmatch/orders.hpp"
#include "chanmatch/types.hpp"

namespace testutil {

using namespace chanmatch;

inline Rat R(const char* s) { return Rat::parse(s); }

inline RatMat mat(std::vector<std::vector<const char*>> rows) {
  const int n = static_cast<int>(rows.size());
  RatMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Rat::parse(rows[i][j]);
  return m;
}

inline Channel ch(std::vector<std::vector<const char*>> rows) { return Channel(mat(std::move(rows))); }

inline DistanceMatrix dist(std::vector<std::vector<const char*>> rows) {
  return DistanceMatrix(mat(std::move(rows)));
}

// Subset vector from values listed in graded order (by subset size, then
// numerically), the order used for human-readable tables; storage order is
// ascending bitmask.
inline SubsetVector graded(int n, std::vector<const char*> values) {
  std::vector<uint32_t> masks;
  for (uint32_t m = 1; m < (uint32_t{1} << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    return popcount_mask(a) != popcount_mask(b) ? popcount_mask(a) < popcount_mask(b) : a < b;
  });
  SubsetVector v(n);
  for (size_t t = 0; t < masks.size(); ++t) v.at(masks[t]) = Rat::parse(values.at(t));
  return v;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  long long upto(long long k) { return static_cast<long long>(eng() % static_cast<uint64_t>(k)); }
};

// Independent dense-rank oracle: 1 + number of distinct column values on the
// winning side of the entry.
inline int oracle_rank(const std::vector<Rat>& column, const Rat& v, bool descending) {
  std::vector<Rat> distinct;
  for (const Rat& c : column)
    if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
  int better = 0;
  for (const Rat& c : distinct)
    if (descending ? c > v : c < v) ++better;
  return better + 1;
}

inline DistanceMatrix random_distance(Rng& rng, int n, bool semimetric) {
  static const char* grid[] = {"1/2", "1", "3/2", "2", "3", "4"};
  RatMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat v = semimetric ? Rat::parse(grid[rng.upto(6)])
                         : (rng.upto(5) == 0 ? Rat(0) : Rat::parse(grid[rng.upto(6)]));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  return DistanceMatrix(std::move(m));
}

// Random channel with denominators dividing `denom` (each row is a random
// composition of denom).
inline Channel random_channel(Rng& rng, int n, long long denom) {
  RatMat m(n);
  for (int i = 0; i < n; ++i) {
    std::vector<long long> cuts{0, denom};
    for (int t = 0; t < n - 1; ++t) cuts.push_back(rng.upto(denom + 1));
    std::sort(cuts.begin(), cuts.end());
    for (int j = 0; j < n; ++j) m.at(i, j) = Rat(cuts[j + 1] - cuts[j], denom);
  }
  return Channel(std::move(m));
}

inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col].sign() != 0) { pivot = r; break; }
    if (pivot < 0) throw std::runtime_error("singular system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].sign() == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Exact channel whose descending column order equals the ascending column
// order of d: entry (i, j) is u_j * q^rank(i,j) for a small q, with the u_j
// solved so that every row sums to one. Ties in d stay exact ties.
inline Channel channel_for_distance(const DistanceMatrix& d) {
  const int n = d.n();
  WeakOrderMatrix ranks = weak_order(d.mat(), Direction::Ascending);
  for (long long z = 2 * n + 2;; z *= 4) {
    if (z > (1 << 24)) throw std::runtime_error("no positive normalizer found");
    Rat q(1, z);
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat pw(1);
        for (int t = 0; t < ranks.at(i, j); ++t) pw *= q;
        a[i][j] = pw;
      }
    std::vector<Rat> u;
    try {
      u = solve_linear(a, std::vector<Rat>(n, Rat(1)));
    } catch (const std::runtime_error&) {
      continue;
    }
    if (!std::all_of(u.begin(), u.end(), [](const Rat& v) { return v.sign() > 0; })) continue;
    RatMat p(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p.at(i, j) = u[j] * a[i][j];
    Channel c(std::move(p));
    if (weak_order(c.mat(), Direction::Descending) != ranks)
      throw std::runtime_error("constructed channel does not realize the target order");
    return c;
  }
}

// Message-level binary symmetric channel on 2^bits messages.
inline Channel bsc_channel(int bits, const Rat& p) {
  const int n = 1 << bits;
  RatMat m(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int h = popcount_mask(static_cast<uint32_t>(x ^ y));
      Rat v(1);
      for (int t = 0; t < h; ++t) v *= p;
      for (int t = 0; t < bits - h; ++t) v *= (Rat(1) - p);
      m.at(x, y) = v;
    }
  return Channel(std::move(m));
}

inline DistanceMatrix hamming_distance(int bits) {
  const int n = 1 << bits;
  RatMat m(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      m.at(x, y) = Rat(popcount_mask(static_cast<uint32_t>(x ^ y)));
  return DistanceMatrix(std::move(m));
}

}  // namespace testutil
