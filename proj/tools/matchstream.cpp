// Command-line harness: single runs with JSON reports, the experiment
// matrix, the invariant/acceptance verifier, and instance generation.
//
// Exit codes: 0 success, 1 guarantee or invariant violation, 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "semistream/generators.hpp"
#include "semistream/io.hpp"
#include "semistream/verify.hpp"

namespace ss = semistream;

namespace {

int cmd_run(const std::string& algorithm, const std::string& input, const std::string& order,
            std::optional<double> epsilon, bool no_oracle, bool checked, std::uint64_t seed,
            const std::string& format) {
  ss::Graph g = ss::parse_graph_file(input);
  ss::RunParams params;
  params.order = ss::OrderingSpec::parse(order);
  params.epsilon = epsilon;
  params.with_oracle = !no_oracle;
  params.checked = checked;
  params.seed = seed;
  ss::RunReport report = ss::run_algorithm(ss::parse_algorithm(algorithm), g, params);

  if (format == "json") {
    std::cout << report.to_json() << "\n";
  } else {
    std::cout << "algorithm        " << report.algorithm << "\n"
              << "n / m            " << report.n << " / " << report.m << "\n"
              << "matching size    " << report.matching_size << "\n";
    if (report.optimum) std::cout << "optimum          " << *report.optimum << "\n";
    if (report.ratio) std::cout << "ratio            " << *report.ratio << "\n";
    std::cout << "guarantee        " << report.guarantee << "\n"
              << "passes           " << report.passes << "\n"
              << "peak stored      " << report.peak_stored_edges << "\n"
              << "update ops       " << report.update_ops << "\n"
              << "ordering         " << report.ordering << "\n";
  }
  return report.guarantee_violated ? 1 : 0;
}

int cmd_experiment(const ss::ExperimentConfig& config, const std::string& format) {
  ss::ExperimentResult result = ss::run_experiment(config);
  if (format == "json") {
    for (const ss::AggregateRow& row : result.rows) {
      std::cout << "{\"algorithm\":\"" << ss::to_string(row.algorithm) << "\",\"class\":\""
                << ss::to_string(row.cls) << "\",\"trials\":" << row.trials
                << ",\"guarantee\":" << row.guarantee << ",\"min\":" << row.min_ratio
                << ",\"mean\":" << row.mean_ratio << ",\"max\":" << row.max_ratio
                << ",\"violations\":" << row.violations << "}\n";
    }
  }
  for (const ss::RunReport& bad : result.violations) {
    std::cerr << "FAILURE " << bad.to_json() << "\n";
  }
  if (format != "json") std::cout << ss::render_table(result);
  if (!result.errors.empty()) {
    std::cerr << result.errors.size() << " trial error(s); first: " << result.errors.front()
              << "\n";
    return 1;
  }
  return result.violations.empty() ? 0 : 1;
}

int cmd_verify(const std::string& level, int threads) {
  ss::VerifyConfig config =
      level == "full" ? ss::full_verify_config() : ss::fast_verify_config();
  config.threads = threads;
  auto results = ss::run_acceptance(config);
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::cout << (results[i].passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": "
              << results[i].name << " — " << results[i].detail << "\n";
  }
  return ss::all_passed(results) ? 0 : 1;
}

// --paths takes "3:1,5:2" for one 3-path and two 5-paths.
std::map<int, std::size_t> parse_path_counts(const std::string& text) {
  std::map<int, std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ss::UsageError("bad --paths item: " + item);
    out[std::stoi(item.substr(0, colon))] = std::stoull(item.substr(colon + 1));
  }
  return out;
}

int cmd_gen(const std::string& kind, const std::string& output, ss::VertexId n, double density,
            const std::string& cls, std::uint64_t seed, std::size_t common,
            const std::string& paths) {
  ss::Graph g;
  if (kind == "random") {
    g = ss::random_instance(n, density, ss::parse_graph_class(cls), seed);
  } else if (kind == "path-union") {
    g = ss::path_union_instance(common, parse_path_counts(paths), seed).graph;
  } else {
    g = ss::tight_instance(kind).graph;
  }
  if (output.empty() || output == "-") {
    std::cout << ss::format_graph(g);
  } else {
    ss::write_graph_file(g, output);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-streaming maximum matching toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run one algorithm on one input file");
  std::string algorithm, input, order = "as-given", format = "table";
  std::optional<double> epsilon;
  bool no_oracle = false, checked = false;
  std::uint64_t seed = 0;
  run->add_option("--algorithm", algorithm, "algorithm label")->required();
  run->add_option("--input", input, "edge-list file")->required();
  run->add_option("--order", order, "as-given | random:<seed> | m0-first:<seed>");
  run->add_option("--epsilon", epsilon, "multi-pass epsilon");
  run->add_flag("--no-oracle", no_oracle, "skip the exact optimum (no ratio fields)");
  run->add_flag("--checked", checked, "validate runtime invariants at every arrival");
  run->add_option("--seed", seed, "provenance seed recorded in the report");
  run->add_option("--format", format, "json | table");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a seeded trial matrix");
  ss::ExperimentConfig config;
  std::vector<std::string> exp_algorithms, exp_classes;
  std::string exp_format = "table";
  double exp_epsilon = 0.1;
  exp->add_option("--trials", config.trials, "trials per class");
  exp->add_option("--algorithm", exp_algorithms, "algorithms (default: all applicable)");
  exp->add_option("--class", exp_classes, "graph classes (default: all)");
  exp->add_option("--max-n", config.max_n, "largest instance size");
  exp->add_option("--seed", config.seed, "base seed");
  exp->add_option("--epsilon", exp_epsilon, "multi-pass epsilon");
  exp->add_option("--threads", config.threads, "worker threads (0 = all)");
  exp->add_option("--format", exp_format, "json | table");

  // verify
  auto* ver = app.add_subcommand("verify", "run the invariant and acceptance suites");
  std::string level = "fast";
  int ver_threads = 0;
  ver->add_option("level", level, "fast | full");
  ver->add_option("--threads", ver_threads, "worker threads (0 = all)");

  // gen
  auto* gen = app.add_subcommand("gen", "emit an instance in the file format");
  std::string gen_kind = "random", gen_output, gen_class = "general";
  ss::VertexId gen_n = 20;
  double gen_density = 0.2;
  std::uint64_t gen_seed = 1;
  std::size_t gen_common = 0;
  std::string gen_paths;
  gen->add_option("--kind", gen_kind,
                  "random | path-union | tight-bipartite | tight-triangle-free | "
                  "support-hub:<k>");
  gen->add_option("--output", gen_output, "output path (default stdout)");
  gen->add_option("--n", gen_n, "vertex count (random)");
  gen->add_option("--density", gen_density, "edge density (random)");
  gen->add_option("--class", gen_class, "graph class (random)");
  gen->add_option("--seed", gen_seed, "seed (random)");
  gen->add_option("--k", gen_common, "common edges (path-union)");
  gen->add_option("--paths", gen_paths, "path counts like 3:1,5:2 (path-union)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      return cmd_run(algorithm, input, order, epsilon, no_oracle, checked, seed, format);
    }
    if (exp->parsed()) {
      config.epsilon = exp_epsilon;
      for (const std::string& name : exp_algorithms) {
        config.algorithms.push_back(ss::parse_algorithm(name));
      }
      for (const std::string& name : exp_classes) {
        config.classes.push_back(ss::parse_graph_class(name));
      }
      return cmd_experiment(config, exp_format);
    }
    if (ver->parsed()) {
      if (level != "fast" && level != "full") throw ss::UsageError("level must be fast or full");
      return cmd_verify(level, ver_threads);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_kind, gen_output, gen_n, gen_density, gen_class, gen_seed, gen_common,
                     gen_paths);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ss::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
