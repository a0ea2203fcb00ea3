#include "chanmatch/metrization.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace chanmatch {

namespace {

// Node ids: 0 is the shared zero node, pairs (a < b) follow in
// lexicographic order.
int pair_slot(int a, int b, int n) {
  return a * n - a * (a + 1) / 2 + (b - a - 1);
}

int node_id(const PairVar& v, int n) {
  return v.is_zero() ? 0 : 1 + pair_slot(v.a, v.b, n);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a); b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Relation reversed_eq(const Relation& r) {
  Relation out = r;
  std::swap(out.from, out.to);
  std::swap(out.row_i, out.row_k);
  return out;
}

using EqAdj = std::vector<std::vector<std::pair<int, Relation>>>;

// Shortest chain of equality steps between two nodes of one class.
std::vector<Relation> equality_path(int from, int to, const EqAdj& adj) {
  if (from == to) return {};
  const int nodes = static_cast<int>(adj.size());
  std::vector<int> prev(nodes, -1);
  std::vector<Relation> via(nodes);
  std::vector<char> seen(nodes, 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (const auto& [v, rel] : adj[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      prev[v] = u;
      via[v] = rel;
      queue.push_back(v);
    }
  }
  std::vector<Relation> path;
  for (int v = to; prev[v] != -1; v = prev[v]) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Directed cycle among class representatives, if any. Returns the strict
// witness relations along the cycle, in order.
std::vector<const Relation*> find_class_cycle(
    int nodes, const std::vector<std::vector<std::pair<int, const Relation*>>>& adj) {
  std::vector<int> color(nodes, 0);  // 0 white, 1 on stack, 2 done
  struct Frame { int node; size_t next; };
  for (int start = 0; start < nodes; ++start) {
    if (color[start] != 0 || adj[start].empty()) {
      if (color[start] == 0) color[start] = 2;
      continue;
    }
    std::vector<Frame> frames{{start, 0}};
    color[start] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next == adj[f.node].size()) {
        color[f.node] = 2;
        frames.pop_back();
        continue;
      }
      auto [next, rel] = adj[f.node][f.next++];
      if (color[next] == 1) {
        // While frames[t+1] is being explored, frames[t].next - 1 is the
        // edge that entered it; collect the path from `next` up to the top
        // and close it with the back edge.
        size_t begin = 0;
        while (frames[begin].node != next) ++begin;
        std::vector<const Relation*> cycle;
        for (size_t t = begin; t + 1 < frames.size(); ++t)
          cycle.push_back(adj[frames[t].node][frames[t].next - 1].second);
        cycle.push_back(rel);
        return cycle;
      }
      if (color[next] == 0) {
        color[next] = 1;
        frames.push_back({next, 0});
      }
    }
  }
  return {};
}

}  // namespace

ConstraintGraph extract_constraints(const Channel& p, MetrizeMode /*mode*/) {
  const int n = p.n();
  WeakOrderMatrix ranks = weak_order(p.mat(), Direction::Descending);
  ConstraintGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    if (ranks.at(i, i) != 1) g.diagonal_ok = false;
    for (int j = 0; j < n; ++j)
      if (i != j && ranks.at(i, j) == 1) g.diagonal_strict = false;
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        int ri = ranks.at(i, j), rk = ranks.at(k, j);
        // Rank 1 is the most probable symbol, hence the nearest one.
        Relation rel;
        rel.column = j;
        if (ri == rk) {
          rel.from = PairVar::make(i, j);
          rel.to = PairVar::make(k, j);
          rel.row_i = i;
          rel.row_k = k;
          rel.strict = false;
          g.equalities.push_back(rel);
        } else {
          int lo = ri < rk ? i : k, hi = ri < rk ? k : i;
          rel.from = PairVar::make(lo, j);
          rel.to = PairVar::make(hi, j);
          rel.row_i = lo;
          rel.row_k = hi;
          rel.strict = true;
          g.stricts.push_back(rel);
        }
      }
    }
  }
  return g;
}

MetrizationResult metrize(const Channel& p, MetrizeMode mode) {
  const int n = p.n();
  ConstraintGraph g = extract_constraints(p, mode);
  WeakOrderMatrix ranks = weak_order(p.mat(), Direction::Descending);

  MetrizationResult result;
  if (!g.diagonal_ok) {
    Certificate cert;
    cert.kind = Certificate::Kind::Diagonal;
    cert.mode = mode;
    for (int i = 0; i < n; ++i)
      if (ranks.at(i, i) != 1) { cert.diag_index = i; break; }
    result.certificate = cert;
    return result;
  }
  if (mode != MetrizeMode::Distance && !g.diagonal_strict) {
    Certificate cert;
    cert.kind = Certificate::Kind::Diagonal;
    cert.mode = mode;
    for (int j = 0; j < n && cert.diag_index < 0; ++j)
      for (int i = 0; i < n; ++i)
        if (i != j && ranks.at(i, j) == 1) {
          cert.diag_index = i;
          cert.diag_column = j;
          break;
        }
    result.certificate = cert;
    return result;
  }

  const int nodes = 1 + n * (n - 1) / 2;
  UnionFind uf(nodes);
  EqAdj eq_adj(nodes);
  for (const Relation& rel : g.equalities) {
    int u = node_id(rel.from, n), v = node_id(rel.to, n);
    uf.unite(u, v);
    eq_adj[u].emplace_back(v, rel);
    eq_adj[v].emplace_back(u, reversed_eq(rel));
  }

  // A strict relation inside one equality class is already a contradiction.
  for (const Relation& rel : g.stricts) {
    int u = node_id(rel.from, n), v = node_id(rel.to, n);
    if (uf.find(u) != uf.find(v)) continue;
    Certificate cert;
    cert.kind = Certificate::Kind::Cycle;
    cert.mode = mode;
    cert.steps.push_back(rel);
    auto path = equality_path(v, u, eq_adj);
    cert.steps.insert(cert.steps.end(), path.begin(), path.end());
    result.certificate = cert;
    return result;
  }

  // Strict relations between classes, deduplicated, deterministic order.
  std::map<std::pair<int, int>, Relation> class_edges;
  for (const Relation& rel : g.stricts) {
    int cu = uf.find(node_id(rel.from, n)), cv = uf.find(node_id(rel.to, n));
    class_edges.try_emplace({cu, cv}, rel);
  }
  std::vector<std::vector<std::pair<int, const Relation*>>> adj(nodes);
  std::vector<int> indeg(nodes, 0);
  for (const auto& [key, rel] : class_edges) {
    adj[key.first].emplace_back(key.second, &rel);
    ++indeg[key.second];
  }

  if (auto cycle_edges = find_class_cycle(nodes, adj); !cycle_edges.empty()) {
    // Expand the class cycle into node-level steps: each strict edge is
    // followed by the equality chain that walks to the tail of the next one.
    const size_t m = cycle_edges.size();
    Certificate cert;
    cert.kind = Certificate::Kind::Cycle;
    cert.mode = mode;
    for (size_t t = 0; t < m; ++t) {
      const Relation* e = cycle_edges[t];
      const Relation* enext = cycle_edges[(t + 1) % m];
      cert.steps.push_back(*e);
      auto path = equality_path(node_id(e->to, n), node_id(enext->from, n), eq_adj);
      cert.steps.insert(cert.steps.end(), path.begin(), path.end());
    }
    size_t best = 0;
    for (size_t t = 1; t < cert.steps.size(); ++t)
      if (cert.steps[t].from < cert.steps[best].from) best = t;
    std::rotate(cert.steps.begin(), cert.steps.begin() + best, cert.steps.end());
    result.certificate = cert;
    return result;
  }

  // Longest strict path from the zero class gives the canonical values.
  std::vector<long long> value(nodes, 0);
  std::vector<int> indeg_work = indeg;
  std::deque<int> ready;
  for (int c = 0; c < nodes; ++c)
    if (uf.find(c) == c && indeg_work[c] == 0) ready.push_back(c);
  while (!ready.empty()) {
    int u = ready.front();
    ready.pop_front();
    for (auto [v, rel] : adj[u]) {
      value[v] = std::max(value[v], value[u] + 1);
      if (--indeg_work[v] == 0) ready.push_back(v);
    }
  }

  RatMat dmat(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat v(value[uf.find(node_id(PairVar{i, j}, n))]);
      dmat.at(i, j) = v;
      dmat.at(j, i) = v;
    }
  DistanceMatrix d(std::move(dmat));

  std::map<int, RankClass> classes;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int root = uf.find(node_id(PairVar{i, j}, n));
      auto& rc = classes[root];
      rc.pairs.push_back(PairVar{i, j});
      rc.value = value[root];
    }
  for (auto& [root, rc] : classes) result.classes.push_back(rc);
  std::sort(result.classes.begin(), result.classes.end(),
            [](const RankClass& a, const RankClass& b) {
              return a.value != b.value ? a.value < b.value : a.pairs < b.pairs;
            });

  result.distance = mode == MetrizeMode::Metric ? to_metric(d) : d;
  return result;
}

bool check_certificate(const Channel& p, const Certificate& cert) {
  const int n = p.n();
  WeakOrderMatrix ranks = weak_order(p.mat(), Direction::Descending);

  if (cert.kind == Certificate::Kind::Diagonal) {
    if (cert.diag_index < 0 || cert.diag_index >= n)
      throw std::invalid_argument("certificate index out of range");
    if (cert.diag_column < 0)
      return ranks.at(cert.diag_index, cert.diag_index) != 1;
    if (cert.diag_column >= n) throw std::invalid_argument("certificate column out of range");
    if (cert.diag_index == cert.diag_column) return false;
    // An off-diagonal first rank only contradicts the semimetric/metric modes.
    if (cert.mode == MetrizeMode::Distance) return false;
    return ranks.at(cert.diag_index, cert.diag_column) == 1;
  }

  if (cert.steps.empty()) throw std::invalid_argument("certificate cycle is empty");
  // Every diagonal pair names the same zero node, so chaining is by node.
  auto same_node = [](const PairVar& a, const PairVar& b) {
    return a == b || (a.is_zero() && b.is_zero());
  };
  bool any_strict = false;
  for (size_t t = 0; t < cert.steps.size(); ++t) {
    const Relation& s = cert.steps[t];
    const Relation& next = cert.steps[(t + 1) % cert.steps.size()];
    if (s.column < 0 || s.column >= n || s.row_i < 0 || s.row_i >= n || s.row_k < 0 || s.row_k >= n)
      throw std::invalid_argument("certificate step index out of range");
    if (!same_node(s.to, next.from)) throw std::invalid_argument("certificate steps do not chain");
    if (!(s.from == PairVar::make(s.row_i, s.column)) ||
        !(s.to == PairVar::make(s.row_k, s.column)))
      throw std::invalid_argument("certificate step pairs do not match its rows/column");
    int ri = ranks.at(s.row_i, s.column), rk = ranks.at(s.row_k, s.column);
    if (s.strict) {
      if (ri >= rk) return false;
      any_strict = true;
    } else {
      if (ri != rk) return false;
    }
  }
  return any_strict;
}

}  // namespace chanmatch
