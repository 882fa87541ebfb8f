#pragma once
// Instance factories: seeded random graphs per class, prescribed
// augmenting-path unions, the tight examples, and arrival orderings.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "semistream/core.hpp"
#include "semistream/stream.hpp"

namespace semistream {

struct OrderingSpec {
  enum class Kind { kAsGiven, kRandom, kM0First };
  Kind kind = Kind::kAsGiven;
  std::uint64_t seed = 0;

  static OrderingSpec as_given() { return {Kind::kAsGiven, 0}; }
  static OrderingSpec random(std::uint64_t seed) { return {Kind::kRandom, seed}; }
  static OrderingSpec m0_first(std::uint64_t seed) { return {Kind::kM0First, seed}; }

  // "as-given" | "random:<seed>" | "m0-first:<seed>"
  static OrderingSpec parse(const std::string& text);
  std::string label() const;
};

// Seeded random graph honoring the requested class by construction:
// bipartite draws cross edges over random sides, triangle-free adds a
// shuffled pair only when it closes no triangle, general is unconstrained.
Graph random_instance(VertexId n, double density, GraphClass cls, std::uint64_t seed);

struct PathUnionInstance {
  Graph graph;          // edges ordered with the designated M0 first
  std::vector<Edge> m0; // the designated maximal matching
  std::size_t k = 0;
  std::map<int, std::size_t> k_i;
};

// Disjoint union of k common edges and k_i paths of each odd length i >= 3;
// streaming the instance as ordered makes the first-pass greedy matching
// exactly the designated M0.
PathUnionInstance path_union_instance(std::size_t k, const std::map<int, std::size_t>& k_i,
                                      std::uint64_t seed);

struct TightInstance {
  Graph graph;                   // edges already in the adversarial arrival order
  std::vector<Edge> matched;     // the matching the first pass is forced into
  std::vector<Edge> support;     // support edges (support-hub family only)
  std::size_t expected_m = 0;
  std::size_t expected_mstar = 0;
  std::string target_algorithm;
};

// The 10-vertex bipartite instance on which the three-pass bipartite
// algorithm returns 3 against an optimum of 5.  Ordering: the M0 edges
// first, then the one second-pass edge that lands on a bad vertex, then
// the rest.
TightInstance tight_instance_bipartite();

// The triangle-free analogue for the three-pass triangle-free algorithm:
// both M1 edges land on bad vertices, so no third-pass augmentation exists.
TightInstance tight_instance_triangle_free();

// Counterexample family with 2k+1 matched edges whose support structure
// funnels every augmentation through three shared hubs, so only one is
// realizable; verified mechanically for each k.
TightInstance tight_instance_support_hub(int k);

TightInstance tight_instance(const std::string& which);
// labels: "tight-bipartite" | "tight-triangle-free" | "support-hub:<k>"

StreamSource apply_ordering(const Graph& g, const OrderingSpec& spec);

// Largest number of vertex-disjoint 3-augmentations of `matched` realizable
// using only `support` edges (exhaustive search).
std::size_t max_support_augmentations(VertexId n, const std::vector<Edge>& matched,
                                      const std::vector<Edge>& support);

}  // namespace semistream
