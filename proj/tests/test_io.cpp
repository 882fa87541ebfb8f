#include <doctest.h>

#include <random>
#include <sstream>

#include "semistream/generators.hpp"
#include "semistream/io.hpp"
#include "semistream/oracle.hpp"

using namespace semistream;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_text(in, "test");
}

}  // namespace

TEST_CASE("graph file parsing") {
  SUBCASE("plain path with stream order") {
    Graph g = parse("n 3\ne 0 1\ne 1 2\n");
    CHECK(g.n == 3);
    CHECK(g.cls == GraphClass::kGeneral);
    CHECK(g.edges == std::vector<Edge>{{0, 1}, {1, 2}});
  }
  SUBCASE("comments and blank lines are skipped") {
    Graph g = parse("# a comment\nn 2\n\n# another\ne 0 1\n");
    CHECK(g.m() == 1);
  }
  SUBCASE("bipartite with sides") {
    Graph g = parse("n 2\nclass bipartite\nside 0 A\nside 1 B\ne 0 1\n");
    CHECK(g.cls == GraphClass::kBipartite);
    CHECK(g.sides == std::vector<Side>{Side::kA, Side::kB});
  }
  SUBCASE("bipartite without side lines fails") {
    CHECK_THROWS_AS(parse("n 2\nclass bipartite\ne 0 1\n"), UsageError);
  }
  SUBCASE("same-side edge fails") {
    CHECK_THROWS_AS(parse("n 3\nclass bipartite\nside 0 A\nside 1 A\nside 2 B\ne 0 1\n"),
                    UsageError);
  }
  SUBCASE("errors carry line numbers") {
    try {
      parse("n 3\ne 0 1\nq 1 2\n");
      FAIL("expected UsageError");
    } catch (const UsageError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
  }
  SUBCASE("out-of-range vertex fails") {
    CHECK_THROWS_AS(parse("n 3\ne 0 5\n"), UsageError);
    CHECK_THROWS_AS(parse("n 3\ne 2 2\n"), UsageError);
  }
}

TEST_CASE("format and parse round-trip") {
  std::mt19937_64 rng(83);
  for (GraphClass cls :
       {GraphClass::kBipartite, GraphClass::kTriangleFree, GraphClass::kGeneral}) {
    Graph g = random_instance(15, 0.3, cls, rng());
    Graph back = parse(format_graph(g));
    CHECK(back.n == g.n);
    CHECK(back.cls == g.cls);
    CHECK(back.edges == g.edges);
    CHECK(back.sides == g.sides);
  }
}

TEST_CASE("report JSON round-trips") {
  RunReport r;
  r.algorithm = "two-pass-improved";
  r.n = 20;
  r.m = 35;
  r.matching_size = 8;
  r.optimum = 9;
  r.ratio = 8.0 / 9.0;
  r.guarantee = 0.5625;
  r.passes = 2;
  r.peak_stored_edges = 17;
  r.update_ops = 123;
  r.ordering = "random:7";
  r.seed = 99;
  RunReport back = RunReport::from_json(r.to_json());
  CHECK(back.algorithm == r.algorithm);
  CHECK(back.n == r.n);
  CHECK(back.m == r.m);
  CHECK(back.matching_size == r.matching_size);
  CHECK(back.optimum == r.optimum);
  CHECK(back.ratio == r.ratio);
  CHECK(back.guarantee == r.guarantee);
  CHECK(back.passes == r.passes);
  CHECK(back.peak_stored_edges == r.peak_stored_edges);
  CHECK(back.update_ops == r.update_ops);
  CHECK(back.ordering == r.ordering);
  CHECK(back.seed == r.seed);
  CHECK(back.epsilon == r.epsilon);
  CHECK(back.guarantee_violated == r.guarantee_violated);

  SUBCASE("optional fields stay absent") {
    r.optimum.reset();
    r.ratio.reset();
    RunReport sparse = RunReport::from_json(r.to_json());
    CHECK_FALSE(sparse.optimum.has_value());
    CHECK_FALSE(sparse.ratio.has_value());
  }
}

TEST_CASE("algorithm registry") {
  for (Algorithm a : all_algorithms()) CHECK(parse_algorithm(to_string(a)) == a);
  CHECK_THROWS_AS(parse_algorithm("four-pass"), UsageError);

  CHECK(applicable(Algorithm::kGreedy, GraphClass::kGeneral));
  CHECK_FALSE(applicable(Algorithm::kTwoPassSimple, GraphClass::kGeneral));
  CHECK_FALSE(applicable(Algorithm::kThreePassBipartite, GraphClass::kTriangleFree));

  CHECK(guarantee_ratio(Algorithm::kTwoPassImproved, GraphClass::kTriangleFree, {}) ==
        Rational(9, 16));
  CHECK(guarantee_ratio(Algorithm::kTwoPassImproved, GraphClass::kGeneral, {}) ==
        Rational(17, 32));
  CHECK(guarantee_ratio(Algorithm::kThreePassGeneral, GraphClass::kGeneral, {}) ==
        Rational(881, 1600));
  CHECK(guarantee_ratio(Algorithm::kMultiPass, GraphClass::kTriangleFree, Rational(1, 6)) ==
        Rational(1, 2));
  CHECK(guarantee_ratio(Algorithm::kMultiPass, GraphClass::kGeneral, Rational(1, 10)) ==
        Rational(2, 3) - Rational(1, 10));
}

TEST_CASE("single runs produce faithful reports") {
  SUBCASE("greedy on a path") {
    Graph g = parse("n 4\ne 0 1\ne 1 2\ne 2 3\n");
    RunReport r = run_algorithm(Algorithm::kGreedy, g, RunParams{});
    CHECK(r.matching_size == 2);
    CHECK(r.optimum == 2);
    CHECK(r.passes == 1);
    CHECK_FALSE(r.guarantee_violated);
  }
  SUBCASE("tight instance reports ratio exactly 0.6") {
    TightInstance t = tight_instance_bipartite();
    RunReport r = run_algorithm(Algorithm::kThreePassBipartite, t.graph, RunParams{});
    CHECK(r.matching_size == 3);
    CHECK(r.optimum == 5);
    CHECK(r.ratio == 0.6);
    CHECK_FALSE(r.guarantee_violated);  // exactly at the guarantee
  }
  SUBCASE("multi-pass pass count lands in the report") {
    Graph g = random_instance(20, 0.3, GraphClass::kTriangleFree, 3);
    RunParams p;
    p.epsilon = 0.1;
    RunReport r = run_algorithm(Algorithm::kMultiPass, g, p);
    CHECK(r.passes == 7);
  }
  SUBCASE("--no-oracle leaves ratio fields empty") {
    Graph g = random_instance(20, 0.3, GraphClass::kGeneral, 4);
    RunParams p;
    p.with_oracle = false;
    RunReport r = run_algorithm(Algorithm::kTwoPassImproved, g, p);
    CHECK_FALSE(r.optimum.has_value());
    CHECK_FALSE(r.ratio.has_value());
    CHECK(r.update_ops > 0);
  }
  SUBCASE("class compatibility is enforced") {
    Graph g = random_instance(10, 0.3, GraphClass::kGeneral, 5);
    CHECK_THROWS_AS(run_algorithm(Algorithm::kThreePassBipartite, g, RunParams{}),
                    UsageError);
  }
}

TEST_CASE("reports are deterministic given input, algorithm, params, and seed") {
  Graph g = random_instance(22, 0.25, GraphClass::kGeneral, 77);
  RunParams p;
  p.order = OrderingSpec::random(5);
  p.seed = 9;
  RunReport a = run_algorithm(Algorithm::kTwoPassFurther, g, p);
  RunReport b = run_algorithm(Algorithm::kTwoPassFurther, g, p);
  CHECK(a.to_json() == b.to_json());
}

TEST_CASE("experiments aggregate and never violate on honest algorithms") {
  SUBCASE("zero trials yield an empty table") {
    ExperimentConfig config;
    config.trials = 0;
    ExperimentResult result = run_experiment(config);
    CHECK(result.rows.empty());
    CHECK(result.violations.empty());
  }
  SUBCASE("a small matrix runs clean") {
    ExperimentConfig config;
    config.trials = 12;
    config.max_n = 24;
    config.seed = 5;
    config.threads = 2;
    ExperimentResult result = run_experiment(config);
    CHECK(result.errors.empty());
    CHECK(result.violations.empty());
    CHECK(!result.rows.empty());
    for (const AggregateRow& row : result.rows) {
      CHECK(row.min_ratio >= row.guarantee);
      CHECK(row.violations == 0);
    }
    CHECK(render_table(result).find("two-pass-improved") != std::string::npos);
  }
}
