#include "chanmatch/subset_patterns.hpp"

#include <algorithm>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

namespace chanmatch {

namespace {

// (-2)^(size-1) as an exact rational.
Rat neg2_pow(int size) {
  BigInt p = 1;
  for (int i = 1; i < size; ++i) p *= -2;
  return Rat(p, BigInt(1));
}

long long to_count(const Rat& r) {
  if (!r.is_integer() || r.sign() < 0)
    throw std::invalid_argument("realize needs nonnegative integer minterm counts");
  BigInt v = r.numerator();
  if (v > std::numeric_limits<long long>::max())
    throw std::invalid_argument("minterm count too large to realize");
  return v.convert_to<long long>();
}

}  // namespace

SubsetVector minterm_vector(const SetFamily& f) {
  f.validate();
  SubsetVector x(f.n);
  for (uint32_t m : f.members) x.at(m) += Rat(1);
  return x;
}

SubsetVector cap_transform(const SubsetVector& x) {
  SubsetVector out = x;
  const uint32_t size = uint32_t{1} << x.n();
  for (int b = 0; b < x.n(); ++b) {
    const uint32_t bit = uint32_t{1} << b;
    for (uint32_t m = 0; m < size; ++m)
      if (!(m & bit)) out.at(m) += out.at(m | bit);
  }
  out.at(0) = Rat(0);
  return out;
}

SubsetVector solve_cap(const SubsetVector& c) {
  SubsetVector out = c;
  out.at(0) = Rat(0);
  const uint32_t size = uint32_t{1} << c.n();
  for (int b = 0; b < c.n(); ++b) {
    const uint32_t bit = uint32_t{1} << b;
    for (uint32_t m = 0; m < size; ++m)
      if (!(m & bit)) out.at(m) -= out.at(m | bit);
  }
  out.at(0) = Rat(0);
  return out;
}

SubsetVector sym_transform(const SubsetVector& x) {
  SubsetVector cap = cap_transform(x);
  SubsetVector g(x.n());
  for (uint32_t m = 1; m <= x.mask_count(); ++m)
    g.at(m) = cap.at(m) * neg2_pow(popcount_mask(m));
  // Subset sum accumulates the signed intersection terms per J.
  const uint32_t size = uint32_t{1} << x.n();
  for (int b = 0; b < x.n(); ++b) {
    const uint32_t bit = uint32_t{1} << b;
    for (uint32_t m = 0; m < size; ++m)
      if (m & bit) g.at(m) += g.at(m ^ bit);
  }
  return g;
}

SubsetVector sym_to_cap(const SubsetVector& delta) {
  SubsetVector g = delta;
  g.at(0) = Rat(0);
  const uint32_t size = uint32_t{1} << delta.n();
  for (int b = 0; b < delta.n(); ++b) {
    const uint32_t bit = uint32_t{1} << b;
    for (uint32_t m = 0; m < size; ++m)
      if (m & bit) g.at(m) -= g.at(m ^ bit);
  }
  SubsetVector cap(delta.n());
  for (uint32_t m = 1; m <= delta.mask_count(); ++m)
    cap.at(m) = g.at(m) / neg2_pow(popcount_mask(m));
  return cap;
}

SubsetVector solve_sym(const SubsetVector& delta) { return solve_cap(sym_to_cap(delta)); }

bool check_realizable(const SubsetVector& x) {
  for (uint32_t m = 1; m <= x.mask_count(); ++m)
    if (!x.at(m).is_integer() || x.at(m).sign() < 0) return false;
  return true;
}

SetFamily realize(const SubsetVector& x) {
  SetFamily f;
  f.n = x.n();
  long long total = 0;
  for (uint32_t m = 1; m <= x.mask_count(); ++m) {
    long long count = to_count(x.at(m));
    total += count;
    if (total > 100'000'000) throw std::invalid_argument("realization too large");
    for (long long t = 0; t < count; ++t) f.members.push_back(m);
  }
  return f;
}

ScalingWitness scale_shift(const SubsetVector& x) {
  BigInt m = 1;
  for (uint32_t mask = 1; mask <= x.mask_count(); ++mask)
    m = boost::multiprecision::lcm(m, x.at(mask).denominator());
  Rat mr(m, BigInt(1));
  Rat minv = mr * x.at(1);
  for (uint32_t mask = 2; mask <= x.mask_count(); ++mask)
    minv = std::min(minv, mr * x.at(mask));
  Rat r = minv.sign() < 0 ? -minv : Rat(0);
  ScalingWitness w;
  w.m = mr;
  w.r = r;
  w.k = r * Rat(BigInt(1) << (x.n() - 1), BigInt(1));
  w.x_prime = SubsetVector(x.n());
  for (uint32_t mask = 1; mask <= x.mask_count(); ++mask)
    w.x_prime.at(mask) = mr * x.at(mask) + r;
  return w;
}

std::optional<SetFamily> search_realization(
    int n, const std::vector<PatternConstraint>& constraints,
    const std::function<bool(const SubsetVector&)>& predicate,
    std::optional<long long> bound) {
  if (n < 1 || n > 5) throw std::invalid_argument("search_realization is guarded at n <= 5");
  if (bound && (*bound < 0 || *bound > 1'000'000))
    throw std::invalid_argument("search bound out of range");
  const uint32_t vars = (uint32_t{1} << n) - 1;

  if (constraints.empty() && !predicate) return realize(SubsetVector(n));

  // Integer targets only; anything else is unsatisfiable by counts.
  struct Row { uint32_t coeff = 0; long long target = 0; };  // coeff bit I: x_I participates
  std::vector<Row> rows;
  std::vector<long long> singleton(n, -1);
  for (const auto& c : constraints) {
    if (c.subset < 1 || c.subset > vars)
      throw std::invalid_argument("constraint subset out of range");
    if (!c.value.is_integer() || c.value.sign() < 0) return std::nullopt;
    Row row;
    row.target = c.value.numerator().convert_to<long long>();
    for (uint32_t I = 1; I <= vars; ++I) {
      bool in = c.kind == PatternConstraint::Kind::Cap
                    ? (I & c.subset) == c.subset
                    : (popcount_mask(I & c.subset) & 1) != 0;
      if (in) row.coeff |= uint32_t{1} << I;
    }
    rows.push_back(row);
    if (popcount_mask(c.subset) == 1) {
      int i = __builtin_ctz(c.subset);
      singleton[i] = singleton[i] < 0 ? row.target : std::min(singleton[i], row.target);
    }
  }

  std::vector<long long> var_bound(vars + 1, bound.value_or(-1));
  for (uint32_t I = 1; I <= vars; ++I) {
    for (int i = 0; i < n; ++i)
      if ((I >> i) & 1 && singleton[i] >= 0)
        var_bound[I] = var_bound[I] < 0 ? singleton[i] : std::min(var_bound[I], singleton[i]);
    if (var_bound[I] < 0)
      throw std::invalid_argument("unbounded search: give a bound or fix all singleton values");
  }

  // Most additional mass each row can still receive from variables >= I.
  std::vector<std::vector<long long>> slack(rows.size(), std::vector<long long>(vars + 2, 0));
  for (size_t r = 0; r < rows.size(); ++r)
    for (uint32_t I = vars; I >= 1; --I)
      slack[r][I] = slack[r][I + 1] + (((rows[r].coeff >> I) & 1) ? var_bound[I] : 0);

  std::vector<long long> x(vars + 1, 0);
  std::vector<long long> partial(rows.size(), 0);

  std::function<std::optional<SetFamily>(uint32_t)> dfs = [&](uint32_t I) -> std::optional<SetFamily> {
    if (I > vars) {
      for (size_t r = 0; r < rows.size(); ++r)
        if (partial[r] != rows[r].target) return std::nullopt;
      SubsetVector v(n);
      for (uint32_t m = 1; m <= vars; ++m) v.at(m) = Rat(x[m]);
      if (predicate && !predicate(v)) return std::nullopt;
      return realize(v);
    }
    for (long long val = 0; val <= var_bound[I]; ++val) {
      x[I] = val;
      bool ok = true;
      for (size_t r = 0; r < rows.size() && ok; ++r) {
        long long add = ((rows[r].coeff >> I) & 1) ? val : 0;
        long long now = partial[r] + add;
        if (now > rows[r].target || now + slack[r][I + 1] < rows[r].target) ok = false;
      }
      if (!ok) continue;
      for (size_t r = 0; r < rows.size(); ++r)
        if ((rows[r].coeff >> I) & 1) partial[r] += val;
      if (auto found = dfs(I + 1)) return found;
      for (size_t r = 0; r < rows.size(); ++r)
        if ((rows[r].coeff >> I) & 1) partial[r] -= val;
    }
    x[I] = 0;
    return std::nullopt;
  };
  return dfs(1);
}

}  // namespace chanmatch
