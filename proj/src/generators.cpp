#include "semistream/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "semistream/algorithms.hpp"
#include "semistream/oracle.hpp"

namespace semistream {
namespace {

using Rng = std::mt19937_64;

std::size_t rand_below(Rng& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

template <typename T>
void shuffle_inplace(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rand_below(rng, i)]);
  }
}

bool coin(Rng& rng, double p) {
  return (rng() >> 11) * (1.0 / 9007199254740992.0) < p;  // 53-bit uniform
}

}  // namespace

OrderingSpec OrderingSpec::parse(const std::string& text) {
  if (text == "as-given") return as_given();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string head = text.substr(0, colon);
    std::uint64_t seed = std::stoull(text.substr(colon + 1));
    if (head == "random") return random(seed);
    if (head == "m0-first") return m0_first(seed);
  }
  throw std::invalid_argument("bad ordering spec: " + text +
                              " (want as-given | random:<seed> | m0-first:<seed>)");
}

std::string OrderingSpec::label() const {
  switch (kind) {
    case Kind::kAsGiven: return "as-given";
    case Kind::kRandom: return "random:" + std::to_string(seed);
    case Kind::kM0First: return "m0-first:" + std::to_string(seed);
  }
  throw std::logic_error("unreachable ordering kind");
}

Graph random_instance(VertexId n, double density, GraphClass cls, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_instance: n >= 1 required");
  if (density <= 0.0 || density > 1.0) {
    throw std::invalid_argument("random_instance: density in (0,1] required");
  }
  Rng rng(seed);
  Graph g;
  g.n = n;
  g.cls = cls;

  if (cls == GraphClass::kBipartite) {
    g.sides.resize(n);
    for (VertexId v = 0; v < n; ++v) g.sides[v] = (rng() & 1) ? Side::kB : Side::kA;
    if (n >= 2) {
      // Both sides nonempty so cross edges exist.
      bool any_a = false, any_b = false;
      for (Side s : g.sides) (s == Side::kA ? any_a : any_b) = true;
      if (!any_a) g.sides[0] = Side::kA;
      if (!any_b) g.sides[n - 1] = Side::kB;
    }
  }

  std::vector<Edge> pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (cls == GraphClass::kBipartite && g.sides[u] == g.sides[v]) continue;
      pairs.push_back(Edge{u, v});
    }
  }
  shuffle_inplace(pairs, rng);

  if (cls == GraphClass::kTriangleFree) {
    std::vector<std::unordered_set<VertexId>> adj(n);
    for (const Edge& e : pairs) {
      if (!coin(rng, density)) continue;
      const auto& small = adj[e.u].size() <= adj[e.v].size() ? adj[e.u] : adj[e.v];
      const auto& large = adj[e.u].size() <= adj[e.v].size() ? adj[e.v] : adj[e.u];
      bool closes_triangle = false;
      for (VertexId w : small) {
        if (large.count(w)) {
          closes_triangle = true;
          break;
        }
      }
      if (closes_triangle) continue;
      adj[e.u].insert(e.v);
      adj[e.v].insert(e.u);
      g.edges.push_back(e);
    }
  } else {
    for (const Edge& e : pairs) {
      if (coin(rng, density)) g.edges.push_back(e);
    }
  }
  g.validate();
  return g;
}

PathUnionInstance path_union_instance(std::size_t k, const std::map<int, std::size_t>& k_i,
                                      std::uint64_t seed) {
  for (const auto& [i, count] : k_i) {
    if (i < 3 || i % 2 == 0) {
      throw std::invalid_argument("path_union_instance: path lengths must be odd and >= 3");
    }
    (void)count;
  }
  Rng rng(seed);
  PathUnionInstance out;
  out.k = k;
  out.k_i = k_i;

  VertexId next = 0;
  std::vector<Edge> mstar_only;
  for (std::size_t c = 0; c < k; ++c) {
    Edge e = make_edge(next, next + 1);
    next += 2;
    out.m0.push_back(e);
  }
  for (const auto& [i, count] : k_i) {
    for (std::size_t c = 0; c < count; ++c) {
      VertexId first = next;
      next += static_cast<VertexId>(i + 1);
      // Path first..first+i: odd-offset edges belong to the designated M0.
      for (VertexId off = 0; off < static_cast<VertexId>(i); ++off) {
        Edge e = make_edge(first + off, first + off + 1);
        if (off % 2 == 1) out.m0.push_back(e); else mstar_only.push_back(e);
      }
    }
  }

  shuffle_inplace(out.m0, rng);
  shuffle_inplace(mstar_only, rng);

  Graph& g = out.graph;
  g.n = next == 0 ? 1 : next;
  g.edges = out.m0;
  g.edges.insert(g.edges.end(), mstar_only.begin(), mstar_only.end());
  auto sides = bipartition(g);
  if (!sides) throw std::logic_error("path union must be bipartite");
  g.cls = GraphClass::kBipartite;
  g.sides = std::move(*sides);
  g.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Tight instances.  The graphs and outcomes are fixed; the arrival orders
// do the forcing: blocking edges stream before the edges they must block.

namespace {

// Shared vertex naming of the two 10-vertex tight examples.
// a1..a3, b1..b3 matched; beta1, beta2 unmatched on the B side; alpha1,
// alpha2 unmatched on the A side.
constexpr VertexId kA1 = 0, kA2 = 1, kA3 = 2;
constexpr VertexId kB1 = 3, kB2 = 4, kB3 = 5;
constexpr VertexId kBeta1 = 6, kBeta2 = 7;
constexpr VertexId kAlpha1 = 8, kAlpha2 = 9;

std::vector<Edge> tight_m0() {
  return {make_edge(kA1, kB1), make_edge(kA2, kB2), make_edge(kA3, kB3)};
}

// The five optimum edges shared by both figures: beta1-a1, b1-alpha1 (the
// 3-augmenting path) and beta2-a3, a2-b3, b2-alpha2 (the 5-augmenting path).
std::vector<Edge> tight_mstar() {
  return {make_edge(kBeta1, kA1), make_edge(kB1, kAlpha1), make_edge(kBeta2, kA3),
          make_edge(kA2, kB3), make_edge(kB2, kAlpha2)};
}

void verify_tight(const TightInstance& t) {
  t.graph.validate();
  if (!is_valid_matching(t.matched)) throw std::logic_error("tight instance: matched set invalid");
  Matching opt = max_matching(t.graph);
  if (opt.size() != t.expected_mstar) {
    throw std::logic_error("tight instance: optimum does not match the expected value");
  }
}

}  // namespace

TightInstance tight_instance_bipartite() {
  TightInstance t;
  t.target_algorithm = "three-pass-bipartite";
  t.expected_m = 3;
  t.expected_mstar = 5;
  t.matched = tight_m0();

  Graph& g = t.graph;
  g.n = 10;
  g.cls = GraphClass::kBipartite;
  g.sides.assign(10, Side::kA);
  for (VertexId b : {kB1, kB2, kB3, kBeta1, kBeta2}) g.sides[b] = Side::kB;

  // M0 first; then a3-beta1, the one second-pass edge landing on a bad
  // vertex, ahead of the two good-vertex edges it must block; the rest
  // anywhere after.
  g.edges = t.matched;
  g.edges.push_back(make_edge(kA3, kBeta1));
  for (const Edge& e : tight_mstar()) g.edges.push_back(e);
  verify_tight(t);
  return t;
}

TightInstance tight_instance_triangle_free() {
  TightInstance t;
  t.target_algorithm = "three-pass-triangle-free";
  t.expected_m = 3;
  t.expected_mstar = 5;
  t.matched = tight_m0();

  Graph& g = t.graph;
  g.n = 10;
  g.cls = GraphClass::kTriangleFree;

  // M0 first; then the two second-pass edges landing on bad vertices
  // (a3-beta1 and b2-alpha1) ahead of every good-vertex edge.
  g.edges = t.matched;
  g.edges.push_back(make_edge(kA3, kBeta1));
  g.edges.push_back(make_edge(kB2, kAlpha1));
  for (const Edge& e : tight_mstar()) g.edges.push_back(e);
  if (!is_triangle_free(g)) throw std::logic_error("tight triangle-free instance must be triangle-free");
  verify_tight(t);
  return t;
}

TightInstance tight_instance_support_hub(int k) {
  if (k < 1) throw std::invalid_argument("support-hub instance needs k >= 1");
  int rows = 2 * k + 1;
  auto u = [&](int i) { return static_cast<VertexId>(i - 1); };
  auto v = [&](int i) { return static_cast<VertexId>(rows + i - 1); };
  auto a = [&](int i) { return static_cast<VertexId>(2 * rows + i - 1); };
  auto b = [&](int i) { return static_cast<VertexId>(3 * rows + i - 1); };

  TightInstance t;
  t.target_algorithm = "support-structure";
  t.expected_m = static_cast<std::size_t>(rows);
  t.expected_mstar = static_cast<std::size_t>(2 * rows);

  for (int i = 1; i <= rows; ++i) t.matched.push_back(make_edge(u(i), v(i)));

  // Three support hubs whose golden edges pairwise conflict, so at most one
  // 3-augmentation is realizable; singles keep the remaining rows one-sided.
  std::set<Edge> golden;
  std::set<VertexId> covered_u;
  for (int j = k; j <= 2 * k - 1; ++j) {
    golden.insert(make_edge(a(1), u(j)));
    covered_u.insert(u(j));
  }
  if (k >= 2) {
    // At k = 1 this hub would sit on a triangle with its own optimum edge.
    for (int j = k; j <= 2 * k - 2; ++j) golden.insert(make_edge(b(2), v(j)));
    golden.insert(make_edge(b(2), u(2 * k)));
    covered_u.insert(u(2 * k));
  }
  for (int j : {1, 2 * k - 1, 2 * k}) golden.insert(make_edge(b(rows), v(j)));
  for (int j : {2, rows}) {
    if (!covered_u.count(u(j))) golden.insert(make_edge(a(j), u(j)));
  }
  t.support.assign(golden.begin(), golden.end());

  Graph& g = t.graph;
  g.n = static_cast<VertexId>(4 * rows);
  g.cls = GraphClass::kTriangleFree;
  g.edges = t.matched;
  g.edges.insert(g.edges.end(), t.support.begin(), t.support.end());
  for (int i = 1; i <= rows; ++i) {
    for (Edge e : {make_edge(a(i), u(i)), make_edge(v(i), b(i))}) {
      if (!golden.count(e)) g.edges.push_back(e);
    }
  }

  // The construction generalizes a drawing; verify its promises mechanically
  // instead of trusting the generalization.
  if (!is_triangle_free(g)) throw std::logic_error("support-hub instance must be triangle-free");
  Matching base(g.n);
  for (const Edge& e : t.matched) base.insert(e);
  for (const Edge& e : t.support) {
    if (base.covers(e.u) && base.covers(e.v)) {
      throw std::logic_error("support-hub edge inside the matched set");
    }
  }
  if (max_support_augmentations(g.n, t.matched, t.support) != 1) {
    throw std::logic_error("support-hub structure must admit exactly one augmentation");
  }
  verify_tight(t);
  return t;
}

TightInstance tight_instance(const std::string& which) {
  if (which == "tight-bipartite") return tight_instance_bipartite();
  if (which == "tight-triangle-free") return tight_instance_triangle_free();
  const std::string prefix = "support-hub:";
  if (which.rfind(prefix, 0) == 0) {
    return tight_instance_support_hub(std::stoi(which.substr(prefix.size())));
  }
  throw std::invalid_argument(
      "unknown tight instance: " + which +
      " (want tight-bipartite | tight-triangle-free | support-hub:<k>)");
}

StreamSource apply_ordering(const Graph& g, const OrderingSpec& spec) {
  switch (spec.kind) {
    case OrderingSpec::Kind::kAsGiven:
      return StreamSource::from_graph(g);
    case OrderingSpec::Kind::kRandom: {
      Graph shuffled = g;
      Rng rng(spec.seed);
      shuffle_inplace(shuffled.edges, rng);
      return StreamSource::from_graph(shuffled);
    }
    case OrderingSpec::Kind::kM0First: {
      // Build a deliberately weak maximal matching by preferring edges the
      // optimum does not use, and stream it first to force the worst M0.
      Rng rng(spec.seed);
      Matching opt = max_matching(g);
      std::vector<Edge> avoid_first, rest;
      for (const Edge& e : g.edges) {
        (opt.contains(e) ? rest : avoid_first).push_back(e);
      }
      shuffle_inplace(avoid_first, rng);
      shuffle_inplace(rest, rng);
      avoid_first.insert(avoid_first.end(), rest.begin(), rest.end());
      Matching m0 = greedy_maximal_matching(avoid_first, g.n);

      Graph ordered = g;
      ordered.edges = m0.edges();
      std::vector<Edge> tail;
      for (const Edge& e : avoid_first) {
        if (!m0.contains(e)) tail.push_back(e);
      }
      shuffle_inplace(tail, rng);
      ordered.edges.insert(ordered.edges.end(), tail.begin(), tail.end());
      return StreamSource::from_graph(ordered);
    }
  }
  throw std::logic_error("unreachable ordering kind");
}

std::size_t max_support_augmentations(VertexId n, const std::vector<Edge>& matched,
                                      const std::vector<Edge>& support) {
  Matching base(n);
  for (const Edge& e : matched) base.insert(e);
  std::vector<std::vector<VertexId>> sup(n);
  for (const Edge& e : support) {
    VertexId outer = base.covers(e.u) ? e.v : e.u;
    VertexId inner = other_endpoint(e, outer);
    if (base.covers(outer) || !base.covers(inner)) {
      throw std::invalid_argument("support edge must join a matched and an unmatched vertex");
    }
    sup[inner].push_back(outer);
  }
  std::vector<bool> used(n, false);
  auto best = [&](auto&& self, std::size_t idx) -> std::size_t {
    if (idx == matched.size()) return 0;
    std::size_t result = self(self, idx + 1);  // skip this matched edge
    const Edge& pq = matched[idx];
    for (VertexId x : sup[pq.u]) {
      if (used[x]) continue;
      for (VertexId y : sup[pq.v]) {
        if (used[y] || x == y) continue;
        used[x] = used[y] = true;
        result = std::max(result, 1 + self(self, idx + 1));
        used[x] = used[y] = false;
      }
    }
    return result;
  };
  return best(best, 0);
}

}  // namespace semistream
