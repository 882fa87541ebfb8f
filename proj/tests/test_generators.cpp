#include <doctest.h>

#include <random>

#include "semistream/algorithms.hpp"
#include "semistream/generators.hpp"
#include "semistream/oracle.hpp"

using namespace semistream;

TEST_CASE("random instances honor their class by construction") {
  SUBCASE("two vertices at full density is a single edge") {
    Graph g = random_instance(2, 1.0, GraphClass::kGeneral, 5);
    CHECK(g.edges == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("same seed, same graph") {
    for (GraphClass cls :
         {GraphClass::kBipartite, GraphClass::kTriangleFree, GraphClass::kGeneral}) {
      Graph a = random_instance(25, 0.3, cls, 42);
      Graph b = random_instance(25, 0.3, cls, 42);
      CHECK(a.edges == b.edges);
      CHECK(a.sides == b.sides);
    }
  }
  SUBCASE("triangle-free instances verify offline") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
      Graph g = random_instance(40, 0.2, GraphClass::kTriangleFree, rng());
      CHECK(is_triangle_free(g));
    }
  }
  SUBCASE("bipartite instances cross their sides") {
    Graph g = random_instance(30, 0.4, GraphClass::kBipartite, 9);
    CHECK_NOTHROW(g.validate());
    CHECK(g.m() > 0);
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(random_instance(0, 0.5, GraphClass::kGeneral, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(5, 0.0, GraphClass::kGeneral, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_instance(5, 1.5, GraphClass::kGeneral, 1), std::invalid_argument);
  }
}

TEST_CASE("path unions force the designated first-pass matching") {
  SUBCASE("one 3-path") {
    PathUnionInstance inst = path_union_instance(0, {{3, 1}}, 3);
    CHECK(inst.graph.n == 4);
    CHECK(inst.m0.size() == 1);
    CHECK(max_matching(inst.graph).size() == 2);
    Matching greedy = greedy_maximal_matching(inst.graph.edges, inst.graph.n);
    CHECK(greedy.size() == 1);
    CHECK(greedy.contains(inst.m0.front()));
  }
  SUBCASE("two common edges only") {
    PathUnionInstance inst = path_union_instance(2, {}, 3);
    CHECK(inst.graph.m() == 2);
    CHECK(max_matching(inst.graph).size() == 2);
  }
  SUBCASE("one 3-path plus one 5-path gives advantage 1/10") {
    PathUnionInstance inst = path_union_instance(0, {{3, 1}, {5, 1}}, 3);
    Matching m0(inst.graph.n);
    for (const Edge& e : inst.m0) m0.insert(e);
    CHECK(m0.size() == 3);
    Matching opt = max_matching(inst.graph);
    CHECK(opt.size() == 5);
    AugDecomposition d = decompose_union(m0, opt);
    CHECK(d.alpha() == Rational(1, 10));
  }
  SUBCASE("decomposition round-trips the request") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 60; ++t) {
      std::size_t k = rng() % 4;
      std::map<int, std::size_t> k_i;
      for (int i : {3, 5, 7, 9}) {
        std::size_t c = rng() % 3;
        if (c > 0) k_i[i] = c;
      }
      PathUnionInstance inst = path_union_instance(k, k_i, rng());
      if (inst.graph.m() == 0) continue;
      Matching m0(inst.graph.n);
      for (const Edge& e : inst.m0) m0.insert(e);
      // The stream order must reproduce exactly the designated matching.
      Matching greedy = greedy_maximal_matching(inst.graph.edges, inst.graph.n);
      CHECK(greedy.size() == m0.size());
      AugDecomposition d = decompose_union(m0, max_matching(inst.graph));
      CHECK(d.k == k);
      CHECK(d.k_i == k_i);
    }
  }
  SUBCASE("even lengths rejected") {
    CHECK_THROWS_AS(path_union_instance(0, {{4, 1}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(path_union_instance(0, {{1, 1}}, 1), std::invalid_argument);
  }
}

TEST_CASE("tight instances reproduce their figures end to end") {
  SUBCASE("three-pass bipartite stalls at 3 against 5") {
    TightInstance t = tight_instance_bipartite();
    CHECK(t.expected_m == 3);
    CHECK(t.expected_mstar == 5);
    StreamSource src = StreamSource::from_graph(t.graph);
    CHECK(three_pass_bipartite(src).matching.size() == t.expected_m);
    CHECK(max_matching(t.graph).size() == t.expected_mstar);
    // The forced first pass is exactly the drawn matching.
    Matching greedy = greedy_maximal_matching(t.graph.edges, t.graph.n);
    for (const Edge& e : t.matched) CHECK(greedy.contains(e));
  }
  SUBCASE("three-pass triangle-free stalls at 3 against 5") {
    TightInstance t = tight_instance_triangle_free();
    StreamSource src = StreamSource::from_graph(t.graph);
    CHECK(three_pass_triangle_free(src).matching.size() == 3);
    CHECK(max_matching(t.graph).size() == 5);
    CHECK(is_triangle_free(t.graph));
  }
  SUBCASE("counterexample family verifies for a range of k") {
    for (int k : {1, 2, 3, 5, 8}) {
      TightInstance t = tight_instance_support_hub(k);
      CHECK(t.matched.size() == static_cast<std::size_t>(2 * k + 1));
      CHECK(t.expected_mstar == static_cast<std::size_t>(4 * k + 2));
      CHECK(is_triangle_free(t.graph));
      CHECK(max_support_augmentations(t.graph.n, t.matched, t.support) == 1);
      CHECK(max_matching(t.graph).size() == t.expected_mstar);
    }
  }
  SUBCASE("lookup by label") {
    CHECK(tight_instance("tight-bipartite").target_algorithm == "three-pass-bipartite");
    CHECK(tight_instance("support-hub:3").matched.size() == 7);
    CHECK_THROWS_AS(tight_instance("tight-planar"), std::invalid_argument);
  }
}

TEST_CASE("orderings") {
  Graph p4;
  p4.n = 4;
  p4.edges = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3)};

  SUBCASE("as-given preserves order") {
    StreamSource src = apply_ordering(p4, OrderingSpec::as_given());
    CHECK(src.ordering() == p4.edges);
  }
  SUBCASE("random is deterministic per seed") {
    StreamSource a = apply_ordering(p4, OrderingSpec::random(7));
    StreamSource b = apply_ordering(p4, OrderingSpec::random(7));
    CHECK(a.ordering() == b.ordering());
  }
  SUBCASE("m0-first on a path puts the middle edge first") {
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
      StreamSource src = apply_ordering(p4, OrderingSpec::m0_first(seed));
      CHECK(src.ordering().front() == make_edge(1, 2));
    }
  }
  SUBCASE("spec strings round-trip") {
    CHECK(OrderingSpec::parse("as-given").label() == "as-given");
    CHECK(OrderingSpec::parse("random:12").label() == "random:12");
    CHECK(OrderingSpec::parse("m0-first:3").label() == "m0-first:3");
    CHECK_THROWS_AS(OrderingSpec::parse("sorted"), std::invalid_argument);
  }
}

TEST_CASE("support augmentation search is exact on a hand example") {
  // Two matched edges sharing one support hub: only one augmentation fits.
  std::vector<Edge> matched{make_edge(0, 1), make_edge(2, 3)};
  std::vector<Edge> support{make_edge(0, 4), make_edge(1, 5), make_edge(2, 6),
                            make_edge(3, 5)};
  CHECK(max_support_augmentations(7, matched, support) == 1);
  support.push_back(make_edge(3, 7));
  CHECK(max_support_augmentations(8, matched, support) == 2);
}
