#include "semistream/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace semistream {
namespace {

using boost::multiprecision::cpp_int;

std::vector<Edge> dedup_edges(const std::vector<Edge>& edges) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) {
    std::uint64_t key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (seen.insert(key).second) out.push_back(e);
  }
  return out;
}

std::vector<std::vector<VertexId>> adjacency(VertexId n, const std::vector<Edge>& edges) {
  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge& e : dedup_edges(edges)) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

}  // namespace

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite value");
  bool negative = x < 0;
  double v = std::abs(x);
  // Continued-fraction convergents h/k of v.
  std::int64_t h0 = 1, h1 = static_cast<std::int64_t>(std::floor(v));
  std::int64_t k0 = 0, k1 = 1;
  double frac = v - std::floor(v);
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    std::int64_t a = static_cast<std::int64_t>(std::floor(inv));
    if (k0 + a * k1 > max_den) break;
    std::int64_t h2 = h0 + a * h1;
    std::int64_t k2 = k0 + a * k1;
    h0 = h1; h1 = h2;
    k0 = k1; k1 = k2;
    frac = inv - std::floor(inv);
  }
  Rational r(h1, k1);
  return negative ? -r : r;
}

// ---------------------------------------------------------------------------
// Hopcroft-Karp for declared bipartitions.

Matching hopcroft_karp(VertexId n, const std::vector<Edge>& edges,
                       const std::vector<Side>& sides) {
  if (sides.size() != n) throw std::invalid_argument("hopcroft_karp: sides required");
  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge& e : dedup_edges(edges)) {
    VertexId a = sides[e.u] == Side::kA ? e.u : e.v;  // orient A -> B
    VertexId b = other_endpoint(e, a);
    if (sides[a] != Side::kA || sides[b] != Side::kB) {
      throw std::invalid_argument("hopcroft_karp: edge does not cross the sides");
    }
    adj[a].push_back(b);
  }

  constexpr std::uint32_t kInf = static_cast<std::uint32_t>(-1);
  std::vector<VertexId> match(n, kNoVertex);
  std::vector<std::uint32_t> dist(n);

  auto bfs = [&]() {
    std::queue<VertexId> q;
    bool reachable_free = false;
    for (VertexId a = 0; a < n; ++a) {
      if (sides[a] != Side::kA) continue;
      dist[a] = match[a] == kNoVertex ? 0 : kInf;
      if (dist[a] == 0) q.push(a);
    }
    while (!q.empty()) {
      VertexId a = q.front();
      q.pop();
      for (VertexId b : adj[a]) {
        VertexId next = match[b];
        if (next == kNoVertex) {
          reachable_free = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[a] + 1;
          q.push(next);
        }
      }
    }
    return reachable_free;
  };

  std::function<bool(VertexId)> dfs = [&](VertexId a) {
    for (VertexId b : adj[a]) {
      VertexId next = match[b];
      if (next == kNoVertex || (dist[next] == dist[a] + 1 && dfs(next))) {
        match[a] = b;
        match[b] = a;
        return true;
      }
    }
    dist[a] = kInf;
    return false;
  };

  while (bfs()) {
    for (VertexId a = 0; a < n; ++a) {
      if (sides[a] == Side::kA && match[a] == kNoVertex) dfs(a);
    }
  }

  Matching m(n);
  for (VertexId a = 0; a < n; ++a) {
    if (sides[a] == Side::kA && match[a] != kNoVertex) m.insert(make_edge(a, match[a]));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Blossom search for general graphs.  Classic array-based contraction with
// base[] tracking; O(V) augmentations of O(VE) each, plenty for oracle-sized
// inputs.

namespace {

class BlossomSolver {
 public:
  BlossomSolver(VertexId n, const std::vector<Edge>& edges)
      : n_(static_cast<int>(n)), adj_(adjacency(n, edges)), match_(n_, -1) {}

  Matching solve() {
    for (int v = 0; v < n_; ++v) {
      if (match_[v] == -1) try_augment(v);
    }
    Matching m(static_cast<VertexId>(n_));
    for (int v = 0; v < n_; ++v) {
      if (match_[v] > v) m.insert(make_edge(v, match_[v]));
    }
    return m;
  }

 private:
  int lca(int a, int b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child, std::vector<bool>& in_blossom) {
    while (base_[v] != b) {
      in_blossom[base_[v]] = true;
      in_blossom[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  int find_path(int root) {
    used_.assign(n_, false);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;

    used_[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (VertexId to_u : adj_[v]) {
        int to = static_cast<int>(to_u);
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != -1 && parent_[match_[to]] != -1)) {
          // Odd cycle: contract the blossom rooted at the lowest common base.
          int cur_base = lca(v, to);
          std::vector<bool> in_blossom(n_, false);
          mark_path(v, cur_base, to, in_blossom);
          mark_path(to, cur_base, v, in_blossom);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom[base_[i]]) {
              base_[i] = cur_base;
              if (!used_[i]) {
                used_[i] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[to] == -1) {
          parent_[to] = v;
          if (match_[to] == -1) return to;
          used_[match_[to]] = true;
          q.push(match_[to]);
        }
      }
    }
    return -1;
  }

  void try_augment(int root) {
    int leaf = find_path(root);
    if (leaf == -1) return;
    while (leaf != -1) {
      int pv = parent_[leaf];
      int ppv = match_[pv];
      match_[leaf] = pv;
      match_[pv] = leaf;
      leaf = ppv;
    }
  }

  int n_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<int> match_, parent_, base_;
  std::vector<bool> used_;
};

}  // namespace

Matching blossom_max_matching(VertexId n, const std::vector<Edge>& edges) {
  return BlossomSolver(n, edges).solve();
}

Matching max_matching(const Graph& g) {
  if (g.cls == GraphClass::kBipartite) return hopcroft_karp(g.n, g.edges, g.sides);
  return blossom_max_matching(g.n, g.edges);
}

// ---------------------------------------------------------------------------
// Exhaustive oracle: branch-and-bound over the edge list.

Matching exhaustive_max_matching(const Graph& g) {
  std::vector<Edge> edges = dedup_edges(g.edges);
  if (edges.size() > kExhaustiveEdgeLimit) {
    throw std::invalid_argument("exhaustive_max_matching: more than " +
                                std::to_string(kExhaustiveEdgeLimit) + " edges");
  }
  std::size_t m = edges.size();
  std::vector<bool> covered(g.n, false);
  std::vector<Edge> current, best;

  auto recurse = [&](auto&& self, std::size_t idx) -> void {
    if (current.size() + (m - idx) <= best.size()) return;  // cannot beat best
    if (idx == m) {
      if (current.size() > best.size()) best = current;
      return;
    }
    const Edge& e = edges[idx];
    if (!covered[e.u] && !covered[e.v]) {
      covered[e.u] = covered[e.v] = true;
      current.push_back(e);
      self(self, idx + 1);
      current.pop_back();
      covered[e.u] = covered[e.v] = false;
    }
    self(self, idx + 1);
  };
  recurse(recurse, 0);

  Matching out(g.n);
  for (const Edge& e : best) out.insert(e);
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition of M0 u M* with canonicalization of the optimum.

Rational AugDecomposition::alpha() const {
  if (mstar_size == 0) return {1, 2};
  return {2 * static_cast<std::int64_t>(m0_size) - static_cast<std::int64_t>(mstar_size),
          2 * static_cast<std::int64_t>(mstar_size)};
}

AugDecomposition decompose_union(const Matching& m0, const Matching& mstar) {
  VertexId n = m0.vertex_count();
  if (mstar.vertex_count() != n) {
    throw std::invalid_argument("decompose_union: vertex counts differ");
  }
  AugDecomposition d;
  d.m0_size = m0.size();
  d.mstar_size = mstar.size();

  std::vector<bool> visited(n, false);
  auto degree = [&](VertexId v) {
    VertexId a = m0.partner(v), b = mstar.partner(v);
    if (a == kNoVertex && b == kNoVertex) return 0;
    if (a == kNoVertex || b == kNoVertex || a == b) return 1;
    return 2;
  };

  // Walks from `start` away from `prev`, returns the vertex path.
  auto walk = [&](VertexId start, VertexId prev) {
    std::vector<VertexId> path{start};
    VertexId cur = start;
    for (;;) {
      visited[cur] = true;
      VertexId next = kNoVertex;
      for (VertexId cand : {m0.partner(cur), mstar.partner(cur)}) {
        if (cand != kNoVertex && cand != prev) next = cand;
      }
      if (next == kNoVertex || visited[next]) return path;
      path.push_back(next);
      prev = cur;
      cur = next;
    }
  };

  for (VertexId s = 0; s < n; ++s) {
    if (visited[s] || degree(s) == 0) continue;
    if (degree(s) == 2) continue;  // interior vertex; start from an endpoint or cycle pass below
    // Path component starting at endpoint s.
    std::vector<VertexId> path = walk(s, kNoVertex);
    std::size_t c0 = 0, c1 = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      bool in_m0 = m0.partner(path[i]) == path[i + 1];
      bool in_ms = mstar.partner(path[i]) == path[i + 1];
      if (in_m0) ++c0;
      if (in_ms && !in_m0) ++c1;
      if (in_m0 && in_ms) ++c1;  // shared edge counts for both
    }
    if (path.size() == 2 && m0.partner(path[0]) == path[1] &&
        mstar.partner(path[0]) == path[1]) {
      d.k += 1;  // common edge
    } else if (c1 == c0 + 1) {
      d.k_i[static_cast<int>(c0 + c1)] += 1;
      d.aug_paths.push_back(AugPath{std::move(path)});
    } else if (c0 == c1) {
      d.even_paths += 1;
      d.k += c0;  // canonical M* re-chooses the M0 edges here
    } else {
      throw std::logic_error("decompose_union: path with more M0 than M* edges; M* not maximum?");
    }
  }
  // Remaining unvisited covered vertices lie on alternating cycles.
  for (VertexId s = 0; s < n; ++s) {
    if (visited[s] || degree(s) == 0) continue;
    std::vector<VertexId> cyc = walk(s, m0.partner(s));
    d.cycles += 1;
    d.k += cyc.size() / 2;  // canonical M* takes the cycle's M0 edges
  }
  return d;
}

bool lemma1_check(const AugDecomposition& d) {
  auto m0 = static_cast<std::int64_t>(d.m0_size);
  auto ms = static_cast<std::int64_t>(d.mstar_size);
  auto k3 = static_cast<std::int64_t>(d.k3());
  // k3 >= (1/2 - 3a)|M*| = 2|M*| - 3|M0|;  |M0| - k3 <= 4a|M*| = 4|M0| - 2|M*|.
  return k3 >= 2 * ms - 3 * m0 && m0 - k3 <= 4 * m0 - 2 * ms;
}

// ---------------------------------------------------------------------------
// Class verification.

bool is_triangle_free(const Graph& g) {
  auto adj = adjacency(g.n, g.edges);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  for (const Edge& e : dedup_edges(g.edges)) {
    const auto& a = adj[e.u];
    const auto& b = adj[e.v];
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] == b[j]) return false;
      if (a[i] < b[j]) ++i; else ++j;
    }
  }
  return true;
}

std::optional<std::vector<Side>> bipartition(const Graph& g) {
  auto adj = adjacency(g.n, g.edges);
  std::vector<int> color(g.n, -1);
  for (VertexId s = 0; s < g.n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    std::queue<VertexId> q;
    q.push(s);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (VertexId w : adj[v]) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Side> sides(g.n);
  for (VertexId v = 0; v < g.n; ++v) sides[v] = color[v] == 0 ? Side::kA : Side::kB;
  return sides;
}

// ---------------------------------------------------------------------------
// Multi-pass guarantee schedule.

Rational improve_alpha_step(const Rational& prev, int lambda_u, int lambda_m) {
  Rational gain(lambda_u - lambda_m, 4 * lambda_u * lambda_u);
  Rational keep = Rational(1) - Rational(3 * lambda_u + lambda_m, 2 * lambda_u * lambda_u);
  return gain + keep * prev;
}

namespace {

int ceil_rational(const Rational& r) {
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  cpp_int q = num / den;
  if (q * den < num) q += 1;
  return static_cast<int>(q);
}

}  // namespace

int multi_pass_count(const Rational& epsilon, GraphClass cls) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (epsilon < Rational(1, 1000)) {
    throw std::invalid_argument("epsilon below 1/1000: the pass count would be impractical");
  }
  int numer = cls == GraphClass::kGeneral ? 4 : 2;
  int p = ceil_rational(Rational(numer) / (3 * epsilon));
  return std::max(p, 2);
}

GuaranteeSchedule alpha_schedule(const Rational& epsilon, GraphClass cls) {
  GuaranteeSchedule s;
  s.epsilon = epsilon;
  s.passes = multi_pass_count(epsilon, cls);
  bool general = cls == GraphClass::kGeneral;
  s.alphas.assign(1, Rational(0));  // alpha_1 = 0
  for (int i = 2; i <= s.passes; ++i) {
    const Rational& prev = s.alphas.back();
    s.alphas.push_back(general ? improve_alpha_step(prev, i + 1, 2)
                               : improve_alpha_step(prev, i, 1));
  }
  s.bounds_hold = true;
  for (int i = 1; i <= s.passes; ++i) {
    Rational bound = Rational(1, 6) - Rational(general ? 4 : 2, 3 * i);
    if (s.alphas[i - 1] < bound) s.bounds_hold = false;
  }
  return s;
}

GuaranteeSchedule alpha_schedule(double epsilon, GraphClass cls) {
  return alpha_schedule(rationalize(epsilon), cls);
}

double GuaranteeSchedule::final_ratio() const {
  return 0.5 + final_alpha().convert_to<double>();
}

}  // namespace semistream
