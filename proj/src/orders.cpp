#include "chanmatch/orders.hpp"

#include <algorithm>

namespace chanmatch {

WeakOrderMatrix weak_order(const RatMat& m, Direction dir) {
  const int n = m.n();
  WeakOrderMatrix out{n, std::vector<int>(static_cast<size_t>(n) * n)};
  std::vector<Rat> col;
  for (int j = 0; j < n; ++j) {
    col.clear();
    for (int i = 0; i < n; ++i) col.push_back(m.at(i, j));
    std::sort(col.begin(), col.end());
    col.erase(std::unique(col.begin(), col.end()), col.end());
    for (int i = 0; i < n; ++i) {
      auto it = std::lower_bound(col.begin(), col.end(), m.at(i, j));
      int asc = static_cast<int>(it - col.begin()) + 1;
      out.ranks[static_cast<size_t>(i) * n + j] =
          dir == Direction::Ascending ? asc : static_cast<int>(col.size()) - asc + 1;
    }
  }
  return out;
}

bool same_weak_order(const RatMat& a, const RatMat& b, Direction dir) {
  if (a.n() != b.n()) throw std::invalid_argument("weak order comparison needs equal sizes");
  return weak_order(a, dir) == weak_order(b, dir);
}

namespace {

template <typename Better>
std::vector<int> arg_best(const RatMat& m, const Code& c, int j, Better better) {
  c.validate(m.n());
  if (j < 0 || j >= m.n()) throw std::invalid_argument("received symbol out of range");
  std::vector<int> best;
  for (int cw : c.members) {
    if (best.empty()) {
      best.push_back(cw);
    } else if (better(m.at(cw, j), m.at(best.front(), j))) {
      best.assign(1, cw);
    } else if (m.at(cw, j) == m.at(best.front(), j)) {
      best.push_back(cw);
    }
  }
  return best;
}

}  // namespace

std::vector<int> mld_decode(const Channel& p, const Code& c, int j) {
  return arg_best(p.mat(), c, j, [](const Rat& a, const Rat& b) { return a > b; });
}

std::vector<int> mdd_decode(const DistanceMatrix& d, const Code& c, int j) {
  return arg_best(d.mat(), c, j, [](const Rat& a, const Rat& b) { return a < b; });
}

bool matched(const Channel& p, const DistanceMatrix& d) {
  if (p.n() != d.n()) throw std::invalid_argument("matched needs equal sizes");
  return weak_order(p.mat(), Direction::Descending) == weak_order(d.mat(), Direction::Ascending);
}

AgreementReport decoder_agreement_oracle(const Channel& p, const DistanceMatrix& d) {
  const int n = p.n();
  if (n != d.n()) throw std::invalid_argument("oracle needs equal sizes");
  if (n > 20) throw std::invalid_argument("oracle enumerates 2^n codes; n capped at 20");
  for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
    Code c;
    for (int i = 0; i < n; ++i)
      if (mask & (uint32_t{1} << i)) c.members.push_back(i);
    for (int j = 0; j < n; ++j) {
      if (mld_decode(p, c, j) != mdd_decode(d, c, j))
        return AgreementReport{false, c, j};
    }
  }
  return AgreementReport{};
}

std::vector<std::vector<int>> ball_family(const DistanceMatrix& d, int x0) {
  const int n = d.n();
  if (x0 < 0 || x0 >= n) throw std::invalid_argument("center out of range");
  std::vector<Rat> radii;
  for (int i = 0; i < n; ++i) radii.push_back(d.at(i, x0));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<std::vector<int>> balls;
  for (const Rat& r : radii) {
    std::vector<int> ball;
    for (int i = 0; i < n; ++i)
      if (d.at(i, x0) <= r) ball.push_back(i);
    balls.push_back(std::move(ball));
  }
  return balls;
}

DistanceMatrix to_metric(const DistanceMatrix& d) {
  const int n = d.n();
  if (n == 1) return d;
  Rat maxv(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      if (d.at(i, j).sign() <= 0)
        throw std::invalid_argument("to_metric needs a semimetric (positive off-diagonal entries)");
      maxv = std::max(maxv, d.at(i, j));
    }
  RatMat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.at(i, j) = Rat(1) + d.at(i, j) / maxv;
  return DistanceMatrix(std::move(out));
}

DistanceMatrix weight_to_distance(const WeightVector& w) {
  if (w.n() > 10)
    throw std::invalid_argument("weight_to_distance builds a 2^n x 2^n matrix; n capped at 10");
  const uint32_t points = uint32_t{1} << w.n();
  RatMat out(static_cast<int>(points));
  for (uint32_t x = 0; x < points; ++x)
    for (uint32_t y = 0; y < points; ++y)
      if (x != y) out.at(static_cast<int>(x), static_cast<int>(y)) = w.at(x ^ y);
  return DistanceMatrix(std::move(out));
}

DistanceClass classify_distance(const DistanceMatrix& d) {
  const int n = d.n();
  DistanceClass rc;
  rc.is_semimetric = true;
  for (int i = 0; i < n && rc.is_semimetric; ++i)
    for (int j = 0; j < i; ++j)
      if (d.at(i, j).sign() == 0) { rc.is_semimetric = false; break; }
  rc.is_metric = rc.is_semimetric;
  for (int i = 0; i < n && rc.is_metric; ++i)
    for (int j = 0; j < n && rc.is_metric; ++j)
      for (int k = 0; k < n; ++k)
        if (d.at(i, k) > d.at(i, j) + d.at(j, k)) { rc.is_metric = false; break; }
  return rc;
}

}  // namespace chanmatch
