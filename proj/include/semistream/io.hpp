#pragma once
// Harness surface: the edge-list file format, the algorithm registry with
// per-class guarantees, single-run reports, and the experiment runner.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semistream/algorithms.hpp"
#include "semistream/core.hpp"
#include "semistream/generators.hpp"
#include "semistream/oracle.hpp"

namespace semistream {

// Thrown on malformed input files or bad CLI parameters (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text format, one directive per line:
//   # comment
//   n <N>
//   class <bipartite|triangle-free|general>
//   side <v> <A|B>      (bipartite only)
//   e <u> <v>
// Edges stream in file order.
Graph parse_graph_text(std::istream& in, const std::string& name);
Graph parse_graph_file(const std::string& path);
std::string format_graph(const Graph& g);
void write_graph_file(const Graph& g, const std::string& path);

enum class Algorithm {
  kGreedy,
  kTwoPassSimple,
  kTwoPassImproved,
  kTwoPassFurther,
  kThreePassBipartite,
  kThreePassTriangleFree,
  kThreePassGeneral,
  kMultiPass,
};

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);
std::vector<Algorithm> all_algorithms();

// Whether the algorithm's guarantee applies to (and the harness will run it
// on) the declared class.
bool applicable(Algorithm a, GraphClass cls);

// The proven approximation ratio, as an exact rational.
Rational guarantee_ratio(Algorithm a, GraphClass cls, const std::optional<Rational>& epsilon);

// Declared pass count: 1, 2, 3, or the multi-pass formula.
int expected_passes(Algorithm a, GraphClass cls, const std::optional<Rational>& epsilon);

AlgoResult dispatch_algorithm(Algorithm a, StreamSource& src,
                              const std::optional<Rational>& epsilon, const RunOptions& opts);

struct RunReport {
  std::string algorithm;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t matching_size = 0;
  std::optional<std::uint64_t> optimum;
  std::optional<double> ratio;
  double guarantee = 0.0;
  int passes = 0;
  std::uint64_t peak_stored_edges = 0;
  std::uint64_t update_ops = 0;
  std::string ordering;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  bool guarantee_violated = false;  // exact rational comparison, never tolerance

  std::string to_json() const;
  static RunReport from_json(const std::string& text);
};

struct RunParams {
  OrderingSpec order = OrderingSpec::as_given();
  std::optional<double> epsilon;
  bool with_oracle = true;
  bool checked = false;
  std::uint64_t seed = 0;  // provenance only
};

RunReport run_algorithm(Algorithm a, const Graph& g, const RunParams& params);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;  // empty = all applicable
  std::vector<GraphClass> classes;    // empty = all three
  int trials = 100;
  VertexId max_n = 40;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;  // multi-pass parameter, default 0.1
  int threads = 0;                // 0 = hardware concurrency
  bool checked = true;
};

struct AggregateRow {
  Algorithm algorithm;
  GraphClass cls;
  int trials = 0;
  double min_ratio = 1.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double guarantee = 0.0;
  int violations = 0;
};

struct ExperimentResult {
  std::vector<AggregateRow> rows;
  std::vector<RunReport> violations;  // every violating run, with provenance
  std::vector<std::string> errors;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string render_table(const ExperimentResult& result);

}  // namespace semistream
