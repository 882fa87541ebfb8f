#include "semistream/io.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace semistream {

using nlohmann::json;

// ---------------------------------------------------------------------------
// File format.

Graph parse_graph_text(std::istream& in, const std::string& name) {
  Graph g;
  bool saw_n = false;
  std::vector<std::pair<VertexId, Side>> side_lines;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw UsageError(name + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "n") {
      long long n = -1;
      if (!(ls >> n) || n < 0) fail("bad vertex count");
      g.n = static_cast<VertexId>(n);
      saw_n = true;
    } else if (tok == "class") {
      std::string cls;
      if (!(ls >> cls)) fail("missing class name");
      try {
        g.cls = parse_graph_class(cls);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else if (tok == "side") {
      long long v = -1;
      std::string s;
      if (!(ls >> v >> s) || v < 0 || (s != "A" && s != "B")) fail("bad side line");
      side_lines.emplace_back(static_cast<VertexId>(v), s == "A" ? Side::kA : Side::kB);
    } else if (tok == "e") {
      long long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("bad edge line");
      if (!saw_n) fail("edge before the n directive");
      if (u >= g.n || v >= g.n) fail("edge endpoint out of range");
      try {
        g.edges.push_back(make_edge(static_cast<VertexId>(u), static_cast<VertexId>(v)));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    } else {
      fail("unknown directive: " + tok);
    }
  }
  if (!saw_n) throw UsageError(name + ": missing n directive");
  if (g.cls == GraphClass::kBipartite) {
    if (side_lines.empty()) throw UsageError(name + ": class bipartite but no side lines");
    g.sides.assign(g.n, Side::kA);
    std::vector<bool> seen(g.n, false);
    for (auto [v, s] : side_lines) {
      if (v >= g.n) throw UsageError(name + ": side vertex out of range");
      g.sides[v] = s;
      seen[v] = true;
    }
    for (VertexId v = 0; v < g.n; ++v) {
      if (!seen[v]) throw UsageError(name + ": no side for vertex " + std::to_string(v));
    }
  } else if (!side_lines.empty()) {
    throw UsageError(name + ": side lines on a non-bipartite graph");
  }
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
  return g;
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return parse_graph_text(in, path);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.n << "\n";
  out << "class " << to_string(g.cls) << "\n";
  if (g.cls == GraphClass::kBipartite) {
    for (VertexId v = 0; v < g.n; ++v) {
      out << "side " << v << " " << (g.sides[v] == Side::kA ? "A" : "B") << "\n";
    }
  }
  for (const Edge& e : g.edges) out << "e " << e.u << " " << e.v << "\n";
  return out.str();
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << format_graph(g);
}

// ---------------------------------------------------------------------------
// Algorithm registry.

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kTwoPassSimple: return "two-pass-simple";
    case Algorithm::kTwoPassImproved: return "two-pass-improved";
    case Algorithm::kTwoPassFurther: return "two-pass-further";
    case Algorithm::kThreePassBipartite: return "three-pass-bipartite";
    case Algorithm::kThreePassTriangleFree: return "three-pass-triangle-free";
    case Algorithm::kThreePassGeneral: return "three-pass-general";
    case Algorithm::kMultiPass: return "multi-pass";
  }
  throw std::logic_error("unreachable algorithm");
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : all_algorithms()) {
    if (to_string(a) == name) return a;
  }
  throw UsageError("unknown algorithm: " + name);
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::kGreedy,             Algorithm::kTwoPassSimple,
          Algorithm::kTwoPassImproved,    Algorithm::kTwoPassFurther,
          Algorithm::kThreePassBipartite, Algorithm::kThreePassTriangleFree,
          Algorithm::kThreePassGeneral,   Algorithm::kMultiPass};
}

bool applicable(Algorithm a, GraphClass cls) {
  switch (a) {
    case Algorithm::kTwoPassSimple:
    case Algorithm::kThreePassTriangleFree:
      return cls != GraphClass::kGeneral;
    case Algorithm::kThreePassBipartite:
      return cls == GraphClass::kBipartite;
    default:
      return true;
  }
}

Rational guarantee_ratio(Algorithm a, GraphClass cls, const std::optional<Rational>& epsilon) {
  bool tf = cls != GraphClass::kGeneral;
  Rational half(1, 2);
  switch (a) {
    case Algorithm::kGreedy: return half;
    case Algorithm::kTwoPassSimple: return {11, 20};
    case Algorithm::kTwoPassImproved: return tf ? Rational(9, 16) : Rational(17, 32);
    // 1/12.86 is 50/643 exactly.
    case Algorithm::kTwoPassFurther:
      return tf ? half + Rational(50, 643) : Rational(15, 28);
    case Algorithm::kThreePassBipartite: return {3, 5};
    case Algorithm::kThreePassTriangleFree: return {3, 5};
    case Algorithm::kThreePassGeneral: return half + Rational(81, 1600);
    case Algorithm::kMultiPass: {
      if (!epsilon) throw UsageError("multi-pass needs --epsilon");
      Rational ratio = Rational(2, 3) - *epsilon;
      return std::max(ratio, half);
    }
  }
  throw std::logic_error("unreachable algorithm");
}

int expected_passes(Algorithm a, GraphClass cls, const std::optional<Rational>& epsilon) {
  switch (a) {
    case Algorithm::kGreedy: return 1;
    case Algorithm::kTwoPassSimple:
    case Algorithm::kTwoPassImproved:
    case Algorithm::kTwoPassFurther:
      return 2;
    case Algorithm::kThreePassBipartite:
    case Algorithm::kThreePassTriangleFree:
    case Algorithm::kThreePassGeneral:
      return 3;
    case Algorithm::kMultiPass:
      if (!epsilon) throw UsageError("multi-pass needs --epsilon");
      return multi_pass_count(*epsilon, cls);
  }
  throw std::logic_error("unreachable algorithm");
}

AlgoResult dispatch_algorithm(Algorithm a, StreamSource& src,
                              const std::optional<Rational>& epsilon, const RunOptions& opts) {
  switch (a) {
    case Algorithm::kGreedy: return run_greedy(src, opts);
    case Algorithm::kTwoPassSimple: return two_pass_simple(src, opts);
    case Algorithm::kTwoPassImproved: return two_pass_improved(src, opts);
    case Algorithm::kTwoPassFurther: return two_pass_further(src, opts);
    case Algorithm::kThreePassBipartite: return three_pass_bipartite(src, opts);
    case Algorithm::kThreePassTriangleFree: return three_pass_triangle_free(src, opts);
    case Algorithm::kThreePassGeneral: return three_pass_general(src, opts);
    case Algorithm::kMultiPass:
      if (!epsilon) throw UsageError("multi-pass needs --epsilon");
      return multi_pass(src, *epsilon, opts);
  }
  throw std::logic_error("unreachable algorithm");
}

// ---------------------------------------------------------------------------
// Reports.

std::string RunReport::to_json() const {
  json j;
  j["algorithm"] = algorithm;
  j["n"] = n;
  j["m"] = m;
  j["matching_size"] = matching_size;
  if (optimum) j["optimum"] = *optimum;
  if (ratio) j["ratio"] = *ratio;
  j["guarantee"] = guarantee;
  j["passes"] = passes;
  j["peak_stored_edges"] = peak_stored_edges;
  j["update_ops"] = update_ops;
  j["ordering"] = ordering;
  j["seed"] = seed;
  if (epsilon) j["epsilon"] = *epsilon;
  j["guarantee_violated"] = guarantee_violated;
  return j.dump();
}

RunReport RunReport::from_json(const std::string& text) {
  json j = json::parse(text);
  RunReport r;
  r.algorithm = j.at("algorithm").get<std::string>();
  r.n = j.at("n").get<std::uint64_t>();
  r.m = j.at("m").get<std::uint64_t>();
  r.matching_size = j.at("matching_size").get<std::uint64_t>();
  if (j.contains("optimum")) r.optimum = j.at("optimum").get<std::uint64_t>();
  if (j.contains("ratio")) r.ratio = j.at("ratio").get<double>();
  r.guarantee = j.at("guarantee").get<double>();
  r.passes = j.at("passes").get<int>();
  r.peak_stored_edges = j.at("peak_stored_edges").get<std::uint64_t>();
  r.update_ops = j.at("update_ops").get<std::uint64_t>();
  r.ordering = j.at("ordering").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("epsilon")) r.epsilon = j.at("epsilon").get<double>();
  r.guarantee_violated = j.at("guarantee_violated").get<bool>();
  return r;
}

RunReport run_algorithm(Algorithm a, const Graph& g, const RunParams& params) {
  g.validate();
  if (!applicable(a, g.cls)) {
    throw UsageError(to_string(a) + " is not applicable to class " + to_string(g.cls));
  }
  std::optional<Rational> eps;
  if (params.epsilon) eps = rationalize(*params.epsilon);

  StreamSource src = apply_ordering(g, params.order);
  RunOptions opts;
  opts.checked = params.checked;
  AlgoResult run = dispatch_algorithm(a, src, eps, opts);

  RunReport r;
  r.algorithm = to_string(a);
  r.n = g.n;
  r.m = g.m();
  r.matching_size = run.matching.size();
  Rational guar = guarantee_ratio(a, g.cls, eps);
  r.guarantee = guar.convert_to<double>();
  r.passes = run.metrics.passes;
  r.peak_stored_edges = run.metrics.peak_stored_edges;
  r.update_ops = run.metrics.update_ops;
  r.ordering = params.order.label();
  r.seed = params.seed;
  r.epsilon = params.epsilon;

  if (params.with_oracle) {
    Matching opt = max_matching(g);
    r.optimum = opt.size();
    if (opt.size() > 0) {
      r.ratio = static_cast<double>(run.matching.size()) / static_cast<double>(opt.size());
      // |M| / |M*| >= guarantee, compared exactly.
      r.guarantee_violated = Rational(static_cast<std::int64_t>(run.matching.size()),
                                      static_cast<std::int64_t>(opt.size())) < guar;
    } else {
      r.ratio = 1.0;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Experiment runner.

ExperimentResult run_experiment(const ExperimentConfig& config) {
  std::vector<GraphClass> classes = config.classes;
  if (classes.empty()) {
    classes = {GraphClass::kBipartite, GraphClass::kTriangleFree, GraphClass::kGeneral};
  }
  std::vector<Algorithm> algorithms = config.algorithms;
  if (algorithms.empty()) algorithms = all_algorithms();
  double epsilon = config.epsilon.value_or(0.1);

  struct Cell {
    int trials = 0;
    double min_ratio = 2.0, sum_ratio = 0.0, max_ratio = 0.0;
    int violations = 0;
  };
  std::map<std::pair<int, int>, Cell> cells;
  std::vector<RunReport> violating;
  std::vector<std::string> errors;
  std::mutex mu;

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(threads, 1);

  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    GraphClass cls = classes[ci];
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        int trial = next.fetch_add(1);
        if (trial >= config.trials) return;
        std::uint64_t seed = config.seed * 1000003ULL + ci * 7919ULL + trial;
        std::mt19937_64 rng(seed);
        VertexId n = 4 + static_cast<VertexId>(rng() % std::max<VertexId>(config.max_n - 3, 1));
        double density = 0.05 + 0.45 * ((rng() >> 11) * (1.0 / 9007199254740992.0));
        Graph g = random_instance(n, density, cls, rng());
        OrderingSpec order;
        switch (trial % 3) {
          case 0: order = OrderingSpec::as_given(); break;
          case 1: order = OrderingSpec::random(rng()); break;
          default: order = OrderingSpec::m0_first(rng()); break;
        }
        for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
          Algorithm a = algorithms[ai];
          if (!applicable(a, cls)) continue;
          RunParams params;
          params.order = order;
          params.seed = seed;
          params.checked = config.checked;
          if (a == Algorithm::kMultiPass) params.epsilon = epsilon;
          try {
            RunReport r = run_algorithm(a, g, params);
            std::lock_guard<std::mutex> lock(mu);
            Cell& cell = cells[{static_cast<int>(ai), static_cast<int>(ci)}];
            cell.trials += 1;
            if (r.ratio) {
              cell.min_ratio = std::min(cell.min_ratio, *r.ratio);
              cell.max_ratio = std::max(cell.max_ratio, *r.ratio);
              cell.sum_ratio += *r.ratio;
            }
            if (r.guarantee_violated) {
              cell.violations += 1;
              violating.push_back(r);
            }
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(mu);
            errors.push_back("trial seed " + std::to_string(seed) + " " + to_string(a) + ": " +
                             e.what());
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentResult result;
  for (std::size_t ai = 0; ai < algorithms.size(); ++ai) {
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      auto it = cells.find({static_cast<int>(ai), static_cast<int>(ci)});
      if (it == cells.end() || it->second.trials == 0) continue;
      const Cell& cell = it->second;
      AggregateRow row;
      row.algorithm = algorithms[ai];
      row.cls = classes[ci];
      row.trials = cell.trials;
      row.min_ratio = cell.min_ratio;
      row.mean_ratio = cell.sum_ratio / cell.trials;
      row.max_ratio = cell.max_ratio;
      std::optional<Rational> eps;
      if (algorithms[ai] == Algorithm::kMultiPass) eps = rationalize(epsilon);
      row.guarantee = guarantee_ratio(algorithms[ai], classes[ci], eps).convert_to<double>();
      row.violations = cell.violations;
      result.rows.push_back(row);
    }
  }
  result.violations = std::move(violating);
  result.errors = std::move(errors);
  return result;
}

std::string render_table(const ExperimentResult& result) {
  std::ostringstream out;
  out << std::left << std::setw(26) << "algorithm" << std::setw(15) << "class" << std::right
      << std::setw(8) << "trials" << std::setw(11) << "guarantee" << std::setw(10) << "min"
      << std::setw(10) << "mean" << std::setw(10) << "max" << std::setw(8) << "viol" << "\n";
  out << std::string(98, '-') << "\n";
  for (const AggregateRow& row : result.rows) {
    out << std::left << std::setw(26) << to_string(row.algorithm) << std::setw(15)
        << to_string(row.cls) << std::right << std::fixed << std::setprecision(4) << std::setw(8)
        << row.trials << std::setw(11) << row.guarantee << std::setw(10) << row.min_ratio
        << std::setw(10) << row.mean_ratio << std::setw(10) << row.max_ratio << std::setw(8)
        << row.violations << "\n";
  }
  if (!result.errors.empty()) {
    out << result.errors.size() << " trial error(s); first: " << result.errors.front() << "\n";
  }
  return out.str();
}

}  // namespace semistream
