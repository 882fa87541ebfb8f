#include <doctest.h>

#include <random>

#include "semistream/core.hpp"

using namespace semistream;

TEST_CASE("make_edge normalizes and rejects self-loops") {
  CHECK(make_edge(3, 1) == Edge{1, 3});
  CHECK(make_edge(0, 9) == Edge{0, 9});
  CHECK(make_edge(1, 3) == make_edge(3, 1));
  CHECK_THROWS_AS(make_edge(4, 4), std::invalid_argument);
}

TEST_CASE("is_valid_matching") {
  CHECK(is_valid_matching(std::vector<Edge>{{0, 1}, {2, 3}}));
  CHECK_FALSE(is_valid_matching(std::vector<Edge>{{0, 1}, {1, 2}}));
  CHECK(is_valid_matching(std::vector<Edge>{}));

  SUBCASE("exact duplicates collapse, reversed orientation included") {
    CHECK(is_valid_matching(std::vector<Edge>{{0, 1}, {0, 1}}));
  }
}

TEST_CASE("matching enforces disjointness on every mutation") {
  Matching m(6);
  m.insert(make_edge(0, 1));
  m.insert(make_edge(2, 3));
  CHECK(m.size() == 2);
  CHECK(m.covers(0));
  CHECK(m.partner(1) == 0);
  CHECK_FALSE(m.covers(4));
  CHECK_THROWS_AS(m.insert(make_edge(1, 4)), std::invalid_argument);
  CHECK_THROWS_AS(m.erase(make_edge(0, 4)), std::invalid_argument);

  m.erase(make_edge(0, 1));
  CHECK_FALSE(m.covers(0));
  m.insert(make_edge(0, 5));
  CHECK(m.edges() == std::vector<Edge>{{2, 3}, {0, 5}});  // insertion order
}

TEST_CASE("augment_3 replaces one matched edge by two") {
  SUBCASE("single edge path") {
    Matching m(4);
    m.insert(make_edge(1, 2));
    Matching out = augment_3(m, make_edge(1, 2), make_edge(0, 1), make_edge(2, 3));
    CHECK(out.size() == 2);
    CHECK(out.contains(make_edge(0, 1)));
    CHECK(out.contains(make_edge(2, 3)));
    CHECK_FALSE(out.contains(make_edge(1, 2)));
  }
  SUBCASE("other matched edges untouched") {
    Matching m(7);
    m.insert(make_edge(1, 2));
    m.insert(make_edge(5, 6));
    Matching out = augment_3(m, make_edge(1, 2), make_edge(0, 1), make_edge(2, 3));
    CHECK(out.size() == 3);
    CHECK(out.contains(make_edge(5, 6)));
  }
  SUBCASE("coinciding outer endpoints rejected") {
    Matching m(3);
    m.insert(make_edge(1, 2));
    CHECK_THROWS_AS(augment_3(m, make_edge(1, 2), make_edge(0, 1), make_edge(0, 2)),
                    std::invalid_argument);
  }
  SUBCASE("covered outer endpoint rejected") {
    Matching m(6);
    m.insert(make_edge(1, 2));
    m.insert(make_edge(3, 4));
    CHECK_THROWS_AS(augment_3(m, make_edge(1, 2), make_edge(0, 1), make_edge(2, 3)),
                    std::invalid_argument);
  }
  SUBCASE("drop edge must be matched") {
    Matching m(4);
    m.insert(make_edge(0, 1));
    CHECK_THROWS_AS(augment_3(m, make_edge(2, 3), make_edge(1, 2), make_edge(0, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("random augmentation chains keep the matching valid and grow by one") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    VertexId n = 30;
    Matching m(n);
    // Matched pairs 2i-(2i+1) for i < 7; vertices 14.. stay free for augmenting.
    for (VertexId i = 0; i < 7; ++i) m.insert(make_edge(2 * i, 2 * i + 1));
    VertexId free_next = 14;
    std::size_t expected = m.size();
    for (VertexId i = 0; i < 7; ++i) {
      if (rng() & 1) continue;
      Edge drop = make_edge(2 * i, 2 * i + 1);
      VertexId o1 = free_next++, o2 = free_next++;
      apply_augment3(m, drop, make_edge(o1, drop.u), make_edge(drop.v, o2));
      ++expected;
      CHECK(m.size() == expected);
      CHECK(is_valid_matching(m.edges()));
    }
  }
}

TEST_CASE("graph validation") {
  Graph g;
  g.n = 3;
  g.edges = {make_edge(0, 1), make_edge(1, 2)};
  CHECK_NOTHROW(g.validate());

  SUBCASE("endpoint out of range") {
    g.edges.push_back(make_edge(1, 5));
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("bipartite needs sides for every vertex") {
    g.cls = GraphClass::kBipartite;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
  SUBCASE("bipartite edge within one side") {
    g.cls = GraphClass::kBipartite;
    g.sides = {Side::kA, Side::kB, Side::kB};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);  // edge 1-2 inside B
  }
  SUBCASE("sides on non-bipartite graph rejected") {
    g.sides = {Side::kA, Side::kB, Side::kA};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  }
}

TEST_CASE("graph class names round-trip") {
  for (GraphClass cls : {GraphClass::kBipartite, GraphClass::kTriangleFree, GraphClass::kGeneral}) {
    CHECK(parse_graph_class(to_string(cls)) == cls);
  }
  CHECK_THROWS_AS(parse_graph_class("planar"), std::invalid_argument);
}
