#pragma once
// Offline ground truth: exact maximum matchings, decomposition of a maximal
// matching against an optimum, class verification, and the multi-pass
// guarantee schedule evaluated in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <vector>

#include "semistream/core.hpp"

namespace semistream {

using Rational = boost::multiprecision::cpp_rational;

// Best rational approximation of x with denominator <= max_den (continued
// fractions).  Used to turn a double epsilon like 0.1666... back into 1/6 so
// pass-count formulas evaluate exactly.
Rational rationalize(double x, std::int64_t max_den = 1000000);

// Exact maximum-cardinality matching.  Bipartite inputs (declared sides) go
// through Hopcroft-Karp; everything else through a blossom search.
Matching max_matching(const Graph& g);

Matching hopcroft_karp(VertexId n, const std::vector<Edge>& edges,
                       const std::vector<Side>& sides);
Matching blossom_max_matching(VertexId n, const std::vector<Edge>& edges);

// Provably maximum by branch-and-bound over edge subsets.  Refuses inputs
// with more than kExhaustiveEdgeLimit edges.
inline constexpr std::size_t kExhaustiveEdgeLimit = 24;
Matching exhaustive_max_matching(const Graph& g);

// One alternating augmenting path of M0 u M*, listed vertex by vertex; the
// first and last edges are M* edges, so the length is odd.
struct AugPath {
  std::vector<VertexId> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

// Component statistics of M0 u M* after canonicalizing M*: inside every
// non-augmenting component the optimum is re-chosen to coincide with M0, so
// those components collapse to single common edges and the path counts
// satisfy |M0| = k + sum (i-1)/2 k_i and |M*| = k + sum (i+1)/2 k_i exactly.
struct AugDecomposition {
  std::size_t k = 0;                    // common edges after canonicalization
  std::map<int, std::size_t> k_i;       // odd i >= 3 -> number of i-augmenting paths
  std::size_t even_paths = 0;           // pre-canonicalization shapes
  std::size_t cycles = 0;
  std::size_t m0_size = 0;
  std::size_t mstar_size = 0;
  std::vector<AugPath> aug_paths;

  std::size_t k3() const {
    auto it = k_i.find(3);
    return it == k_i.end() ? 0 : it->second;
  }
  // alpha with |M0| = (1/2 + alpha)|M*|.
  Rational alpha() const;
};

AugDecomposition decompose_union(const Matching& m0, const Matching& mstar);

// The two bounds on 3-augmentable edges: k3 >= (1/2 - 3a)|M*| and
// |M0| - k3 <= 4a|M*|, evaluated in integers (2|M*| - 3|M0| and
// 4|M0| - 2|M*|).
bool lemma1_check(const AugDecomposition& d);

bool is_triangle_free(const Graph& g);
std::optional<std::vector<Side>> bipartition(const Graph& g);

// Guarantee schedule of the multi-pass algorithm: the advantage recurrence
// per pass plus the closed-form lower bound 1/6 - 2/(3i) (triangle-free)
// or 1/6 - 4/(3i) (general).
struct GuaranteeSchedule {
  Rational epsilon;
  int passes = 0;
  std::vector<Rational> alphas;  // alphas[i-1] is the advantage after pass i
  bool bounds_hold = false;      // closed-form lower bound verified at every index

  const Rational& final_alpha() const { return alphas.back(); }
  double final_ratio() const;
};

// Number of stream passes for a given epsilon: ceil(2/(3e)) triangle-free,
// ceil(4/(3e)) general, clamped to at least 2.
int multi_pass_count(const Rational& epsilon, GraphClass cls);

GuaranteeSchedule alpha_schedule(const Rational& epsilon, GraphClass cls);
GuaranteeSchedule alpha_schedule(double epsilon, GraphClass cls);

// Advantage recurrence steps used by the schedule and its tests.
Rational improve_alpha_step(const Rational& prev, int lambda_u, int lambda_m);

}  // namespace semistream
