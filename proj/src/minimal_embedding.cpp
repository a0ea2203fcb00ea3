#include "chanmatch/minimal_embedding.hpp"

#include <algorithm>
#include <map>

#include "chanmatch/subset_patterns.hpp"

namespace chanmatch {

namespace {

struct ConeSearch {
  int n = 0;
  int vars = 0;
  // One row per constrained mask, grouped into ascending classes.
  std::vector<uint32_t> row_mask;          // coefficient bits over variables 1..vars
  std::vector<int> row_class;
  int class_count = 0;

  std::vector<long long> x, partial;
  unsigned long long nodes = 0;

  void add_class(const std::vector<uint32_t>& masks) {
    for (uint32_t J : masks) {
      uint32_t coeff = 0;
      for (int I = 1; I <= vars; ++I)
        if (popcount_mask(static_cast<uint32_t>(I) & J) & 1) coeff |= uint32_t{1} << I;
      row_mask.push_back(coeff);
      row_class.push_back(class_count);
    }
    ++class_count;
  }

  // Minimum conceivable |x|_1: the image coordinates sum to 2^(n-1) |x|_1
  // and the constrained ones must reach at least 1, 2, ... per class.
  long long lower_bound() const {
    long long needed = 0;
    for (size_t r = 0; r < row_mask.size(); ++r) needed += row_class[r] + 1;
    long long per_unit = 1LL << (n - 1);
    return (needed + per_unit - 1) / per_unit;
  }

  bool feasible_leaf() const {
    std::vector<long long> cls_val(class_count, -1);
    for (size_t r = 0; r < row_mask.size(); ++r) {
      if (cls_val[row_class[r]] < 0) cls_val[row_class[r]] = partial[r];
      else if (cls_val[row_class[r]] != partial[r]) return false;
    }
    if (class_count > 0 && cls_val[0] < 1) return false;
    for (int c = 1; c < class_count; ++c)
      if (cls_val[c] <= cls_val[c - 1]) return false;
    return true;
  }

  // Interval pruning: with budget left, every row can still grow by at most
  // that budget and no row can shrink.
  bool viable(long long budget) const {
    std::vector<long long> lo(class_count, std::numeric_limits<long long>::max());
    std::vector<long long> hi(class_count, 0);
    for (size_t r = 0; r < row_mask.size(); ++r) {
      lo[row_class[r]] = std::min(lo[row_class[r]], partial[r]);
      hi[row_class[r]] = std::max(hi[row_class[r]], partial[r]);
    }
    for (int c = 0; c < class_count; ++c)
      if (hi[c] - lo[c] > budget) return false;
    if (class_count > 0 && lo[0] + budget < 1) return false;
    for (int c = 1; c < class_count; ++c)
      if (lo[c] + budget < hi[c - 1] + 1) return false;
    return true;
  }

  bool dfs(int I, long long remaining) {
    ++nodes;
    if (!viable(remaining)) return false;
    if (I == vars) {
      x[I] = remaining;
      for (size_t r = 0; r < row_mask.size(); ++r)
        if ((row_mask[r] >> I) & 1) partial[r] += remaining;
      bool ok = feasible_leaf();
      for (size_t r = 0; r < row_mask.size(); ++r)
        if ((row_mask[r] >> I) & 1) partial[r] -= remaining;
      if (!ok) x[I] = 0;
      return ok;
    }
    for (long long val = 0; val <= remaining; ++val) {
      x[I] = val;
      for (size_t r = 0; r < row_mask.size(); ++r)
        if ((row_mask[r] >> I) & 1) partial[r] += val;
      if (dfs(I + 1, remaining - val)) return true;
      for (size_t r = 0; r < row_mask.size(); ++r)
        if ((row_mask[r] >> I) & 1) partial[r] -= val;
    }
    x[I] = 0;
    return false;
  }

  // Smallest total with a feasible x; lexicographically first within it.
  // `upper` is the total of a known feasible solution.
  std::pair<std::vector<long long>, long long> run(long long upper, bool* exhausted) {
    x.assign(vars + 1, 0);
    partial.assign(row_mask.size(), 0);
    *exhausted = true;
    for (long long total = lower_bound(); total <= upper; ++total) {
      std::fill(x.begin(), x.end(), 0);
      std::fill(partial.begin(), partial.end(), 0);
      if (dfs(1, total)) return {x, total};
    }
    return {{}, -1};
  }
};

SubsetVector to_subset_vector(int n, const std::vector<long long>& x) {
  if (x.empty())
    throw std::logic_error("search window exhausted despite a feasible incumbent");
  SubsetVector v(n);
  for (uint32_t m = 1; m <= v.mask_count(); ++m) v.at(m) = Rat(x[m]);
  return v;
}

}  // namespace

OrderCone cone_of(const SubsetVector& delta) {
  if (!delta.all_positive())
    throw std::invalid_argument("order cone is defined for strictly positive vectors");
  std::map<Rat, std::vector<uint32_t>> by_value;
  for (uint32_t m = 1; m <= delta.mask_count(); ++m) by_value[delta.at(m)].push_back(m);
  OrderCone cone;
  cone.n = delta.n();
  for (auto& [v, masks] : by_value) cone.classes.push_back(std::move(masks));
  return cone;
}

std::vector<std::vector<int>> sym_matrix(int n) {
  const uint32_t vars = (uint32_t{1} << n) - 1;
  std::vector<std::vector<int>> t(vars, std::vector<int>(vars, 0));
  for (uint32_t J = 1; J <= vars; ++J)
    for (uint32_t I = 1; I <= vars; ++I)
      t[J - 1][I - 1] = popcount_mask(I & J) & 1;
  return t;
}

OptimalEmbedding minimize_dimension(const WeightVector& w) {
  if (w.n() > 4) throw std::invalid_argument("minimize_dimension is guarded at n <= 4");
  if (!w.all_positive())
    throw std::invalid_argument("minimize_dimension needs a strictly positive weight");

  ScalingWitness incumbent = scale_shift(solve_sym(w));
  Rat incumbent_total(0);
  for (uint32_t m = 1; m <= incumbent.x_prime.mask_count(); ++m)
    incumbent_total += incumbent.x_prime.at(m);

  OrderCone cone = cone_of(w);
  ConeSearch search;
  search.n = w.n();
  search.vars = static_cast<int>(w.mask_count());
  for (const auto& cls : cone.classes) search.add_class(cls);

  OptimalEmbedding out;
  // The incumbent only has to upper-bound the search; cap outlandish ones.
  out.incumbent = incumbent_total.numerator() > 1'000'000'000
                      ? 1'000'000'000
                      : incumbent_total.numerator().convert_to<long long>();
  auto [x, total] = search.run(out.incumbent, &out.search_exhausted);
  out.nodes_explored = search.nodes;
  out.n_star = total;
  out.x_star = to_subset_vector(w.n(), x);

  SetFamily f = realize(out.x_star);
  out.embedding.n = w.n();
  out.embedding.N = static_cast<int>(f.members.size());
  out.embedding.generators.assign(w.n(), CubeWord(out.embedding.N));
  for (int g = 0; g < out.embedding.N; ++g)
    for (int i = 0; i < w.n(); ++i)
      if ((f.members[g] >> i) & 1) out.embedding.generators[i].set(g, true);
  out.embedding.m = Rat(1);
  out.embedding.k = Rat(0);
  return out;
}

OptimalPointEmbedding minimize_dimension_points(const DistanceMatrix& d) {
  const int n = d.n();
  if (n > 4) throw std::invalid_argument("minimize_dimension_points is guarded at n <= 4 points");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (d.at(i, j).sign() <= 0)
        throw std::invalid_argument("minimize_dimension_points needs a semimetric");
  if (n == 1) {
    OptimalPointEmbedding out;
    out.x_star = SubsetVector(1);
    out.n_star = 0;
    out.embedding.n = 1;
    out.embedding.N = 0;
    out.embedding.images = {CubeWord(0)};
    out.incumbent = 0;
    return out;
  }

  // Ascending classes over the pair coordinates only.
  std::map<Rat, std::vector<uint32_t>> by_value;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      by_value[d.at(i, j)].push_back((uint32_t{1} << i) | (uint32_t{1} << j));

  ConeSearch search;
  search.n = n;
  search.vars = static_cast<int>((uint32_t{1} << n) - 1);
  for (auto& [v, masks] : by_value) search.add_class(masks);

  OptimalPointEmbedding out;
  ScalingWitness fallback = scale_shift(solve_sym(dummy_weight(d)));
  Rat fallback_total(0);
  for (uint32_t m = 1; m <= fallback.x_prime.mask_count(); ++m)
    fallback_total += fallback.x_prime.at(m);
  out.incumbent = fallback_total.numerator() > 1'000'000'000
                      ? 1'000'000'000
                      : fallback_total.numerator().convert_to<long long>();
  auto [x, total] = search.run(out.incumbent, &out.search_exhausted);
  out.nodes_explored = search.nodes;
  out.n_star = total;
  out.x_star = to_subset_vector(n, x);

  SetFamily f = realize(out.x_star);
  out.embedding.n = n;
  out.embedding.N = static_cast<int>(f.members.size());
  out.embedding.images.assign(n, CubeWord(out.embedding.N));
  for (int g = 0; g < out.embedding.N; ++g)
    for (int i = 0; i < n; ++i)
      if ((f.members[g] >> i) & 1) out.embedding.images[i].set(g, true);
  out.embedding.m = Rat(1);
  out.embedding.k = Rat(0);
  return out;
}

}  // namespace chanmatch
