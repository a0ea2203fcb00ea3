#include "chanmatch/cube_embedding.hpp"

#include <algorithm>

#include "chanmatch/orders.hpp"

namespace chanmatch {

namespace {

std::vector<CubeWord> generators_of(const SetFamily& f) {
  const int N = static_cast<int>(f.members.size());
  std::vector<CubeWord> gen(f.n, CubeWord(N));
  for (int g = 0; g < N; ++g)
    for (int i = 0; i < f.n; ++i)
      if ((f.members[g] >> i) & 1) gen[i].set(g, true);
  return gen;
}

LinearEmbedding assemble(const WeightVector& w, const ScalingWitness& sw) {
  SetFamily f = realize(sw.x_prime);
  LinearEmbedding e;
  e.n = w.n();
  e.N = static_cast<int>(f.members.size());
  e.generators = generators_of(f);
  e.m = sw.m;
  e.k = sw.k;
  return e;
}

// Fit w -> W to an affine law. Prefers the declared parameters when they
// explain all the data.
template <typename Pairs>
void fit_affine(const Pairs& data, const Rat& declared_m, const Rat& declared_k, Rat& m, Rat& k) {
  auto exact = [&](const Rat& mm, const Rat& kk) {
    return std::all_of(data.begin(), data.end(), [&](const auto& p) {
      return p.second == mm * p.first + kk;
    });
  };
  if (declared_m.sign() > 0 && exact(declared_m, declared_k)) {
    m = declared_m;
    k = declared_k;
    return;
  }
  for (size_t i = 0; i < data.size(); ++i)
    for (size_t j = i + 1; j < data.size(); ++j)
      if (data[i].first != data[j].first) {
        m = (data[i].second - data[j].second) / (data[i].first - data[j].first);
        k = data[i].second - m * data[i].first;
        return;
      }
  // Constant target: degenerate fit.
  if (!data.empty() && data.front().first.sign() != 0) {
    m = data.front().second / data.front().first;
    k = Rat(0);
  } else {
    m = Rat(1);
    k = data.empty() ? Rat(0) : data.front().second;
  }
}

std::vector<int> rank_column(const std::vector<Rat>& vals) {
  std::vector<Rat> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks;
  ranks.reserve(vals.size());
  for (const Rat& v : vals)
    ranks.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin()));
  return ranks;
}

}  // namespace

CubeWord LinearEmbedding::image(uint32_t v) const {
  CubeWord w(N);
  for (int i = 0; i < n; ++i)
    if ((v >> i) & 1) w = w ^ generators[i];
  return w;
}

LinearEmbedding embed_weight(const WeightVector& w) {
  if (!w.all_positive())
    throw std::invalid_argument("embed_weight needs a strictly positive weight");
  return assemble(w, scale_shift(solve_sym(w)));
}

LinearEmbedding embed_weight(const WeightVector& w, const Rat& m, const Rat& r) {
  if (!w.all_positive())
    throw std::invalid_argument("embed_weight needs a strictly positive weight");
  if (m.sign() <= 0 || r.sign() < 0)
    throw std::invalid_argument("scaling witness needs m > 0 and r >= 0");
  SubsetVector x = solve_sym(w);
  ScalingWitness sw;
  sw.m = m;
  sw.r = r;
  sw.k = r * Rat(BigInt(1) << (w.n() - 1), BigInt(1));
  sw.x_prime = SubsetVector(w.n());
  for (uint32_t mask = 1; mask <= x.mask_count(); ++mask)
    sw.x_prime.at(mask) = m * x.at(mask) + r;
  if (!check_realizable(sw.x_prime))
    throw std::invalid_argument("witness (m, r) does not make the minterm vector nonnegative integer");
  return assemble(w, sw);
}

WeightVector dummy_weight(const DistanceMatrix& d) {
  const int n = d.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (d.at(i, j).sign() <= 0)
        throw std::invalid_argument("dummy_weight needs a semimetric");
  if (n > 30) throw std::invalid_argument("too many points");
  WeightVector w(n);
  for (uint32_t mask = 1; mask <= w.mask_count(); ++mask) {
    if (popcount_mask(mask) == 2) {
      int i = __builtin_ctz(mask);
      int j = 31 - __builtin_clz(mask);
      w.at(mask) = d.at(i, j);
    } else {
      w.at(mask) = Rat(1);
    }
  }
  return w;
}

PointEmbedding embed_points(const DistanceMatrix& d) {
  const int n = d.n();
  WeightVector w = dummy_weight(d);
  LinearEmbedding e = embed_weight(w);
  PointEmbedding pe;
  pe.n = n;
  pe.N = e.N;
  pe.images = e.generators;
  pe.m = e.m;
  pe.k = e.k;
  return pe;
}

VerifyReport verify_embedding(const LinearEmbedding& e, const WeightVector& w) {
  if (e.n != w.n()) throw std::invalid_argument("embedding and weight dimensions differ");
  if (static_cast<int>(e.generators.size()) != e.n)
    throw std::invalid_argument("linear embedding needs one generator per coordinate");
  for (const CubeWord& g : e.generators)
    if (g.size() != e.N) throw std::invalid_argument("generator length differs from N");

  std::vector<std::pair<Rat, Rat>> data;  // (target, observed)
  std::vector<Rat> target_col, observed_col;
  for (uint32_t v = 1; v <= w.mask_count(); ++v) {
    Rat observed(e.image(v).weight());
    data.emplace_back(w.at(v), observed);
    target_col.push_back(w.at(v));
    observed_col.push_back(observed);
  }

  VerifyReport rep;
  fit_affine(data, e.m, e.k, rep.m, rep.k);
  for (uint32_t v = 1; v <= w.mask_count(); ++v)
    if (data[v - 1].second != rep.m * data[v - 1].first + rep.k) rep.bad_masks.push_back(v);
  rep.order_preserved = rank_column(target_col) == rank_column(observed_col);
  rep.ok = rep.bad_masks.empty() && rep.m.sign() > 0;
  return rep;
}

VerifyReport verify_embedding(const PointEmbedding& e, const DistanceMatrix& d) {
  if (e.n != d.n()) throw std::invalid_argument("embedding and distance dimensions differ");
  if (static_cast<int>(e.images.size()) != e.n)
    throw std::invalid_argument("point embedding needs one image per point");
  for (const CubeWord& w : e.images)
    if (w.size() != e.N) throw std::invalid_argument("image length differs from N");

  std::vector<std::pair<Rat, Rat>> data;
  for (int i = 0; i < e.n; ++i)
    for (int j = i + 1; j < e.n; ++j)
      data.emplace_back(d.at(i, j), Rat(e.images[i].hamming(e.images[j])));

  VerifyReport rep;
  fit_affine(data, e.m, e.k, rep.m, rep.k);
  size_t t = 0;
  RatMat induced(e.n);
  for (int i = 0; i < e.n; ++i)
    for (int j = i + 1; j < e.n; ++j, ++t) {
      if (data[t].second != rep.m * data[t].first + rep.k) rep.bad_pairs.emplace_back(i, j);
      induced.at(i, j) = data[t].second;
      induced.at(j, i) = data[t].second;
    }
  rep.order_preserved =
      e.n == 1 || same_weak_order(induced, d.mat(), Direction::Ascending);
  rep.ok = rep.bad_pairs.empty() && rep.m.sign() > 0;
  return rep;
}

std::optional<PointEmbedding> exact_embed(const DistanceMatrix& d) {
  const int n = d.n();
  if (n > 5) throw std::invalid_argument("exact_embed is guarded at n <= 5 points");
  PointEmbedding pe;
  pe.n = n;
  pe.m = Rat(1);
  pe.k = Rat(0);
  if (n == 1) {
    pe.N = 0;
    pe.images = {CubeWord(0)};
    return pe;
  }

  const int sets = n - 1;
  const Rat two(2);
  std::vector<PatternConstraint> constraints;
  for (int i = 0; i < sets; ++i) {
    PatternConstraint c;
    c.subset = uint32_t{1} << i;
    c.kind = PatternConstraint::Kind::Cap;
    c.value = d.at(i, n - 1);
    constraints.push_back(c);
  }
  for (int i = 0; i < sets; ++i)
    for (int j = i + 1; j < sets; ++j) {
      PatternConstraint c;
      c.subset = (uint32_t{1} << i) | (uint32_t{1} << j);
      c.kind = PatternConstraint::Kind::Cap;
      c.value = (d.at(i, n - 1) + d.at(j, n - 1) - d.at(i, j)) / two;
      constraints.push_back(c);
    }

  auto family = search_realization(sets, constraints);
  if (!family) return std::nullopt;
  std::vector<CubeWord> gens = generators_of(*family);
  pe.N = static_cast<int>(family->members.size());
  pe.images = std::move(gens);
  pe.images.push_back(CubeWord(pe.N));  // the reference point sits at the origin
  return pe;
}

}  // namespace chanmatch
