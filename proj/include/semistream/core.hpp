#pragma once
// Core value types: vertices, normalized edges, graphs with a declared class,
// and matchings with enforced vertex-disjointness.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistream {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

// Undirected edge, stored with the lower endpoint first.
struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Normalizes endpoint order; rejects self-loops.
Edge make_edge(VertexId a, VertexId b);

bool edge_touches(const Edge& e, VertexId x);

// Given one endpoint of e, returns the other.
VertexId other_endpoint(const Edge& e, VertexId x);

enum class GraphClass { kBipartite, kTriangleFree, kGeneral };

std::string to_string(GraphClass cls);
GraphClass parse_graph_class(const std::string& name);

enum class Side : std::uint8_t { kA, kB };

// Edge list with a declared vertex count and class label.  The list order is
// the stream arrival order.  The class label is input metadata, never
// inferred while streaming; the oracle verifies it offline.
struct Graph {
  VertexId n = 0;
  std::vector<Edge> edges;
  GraphClass cls = GraphClass::kGeneral;
  std::vector<Side> sides;  // size n iff cls == kBipartite

  std::size_t m() const { return edges.size(); }

  // Throws std::invalid_argument on out-of-range endpoints, missing or
  // malformed sides, or a bipartite edge that does not cross the sides.
  void validate() const;
};

// Vertex-disjoint edge set with O(1) partner lookup.  Mutations that would
// break disjointness throw, so a Matching is valid by construction.
class Matching {
 public:
  Matching() = default;
  explicit Matching(VertexId n) : partner_(n, kNoVertex) {}

  VertexId vertex_count() const { return static_cast<VertexId>(partner_.size()); }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool covers(VertexId x) const { return partner_.at(x) != kNoVertex; }
  VertexId partner(VertexId x) const { return partner_.at(x); }
  bool contains(const Edge& e) const;

  void insert(const Edge& e);
  void erase(const Edge& e);

  // Current edges, in first-insertion order.
  std::vector<Edge> edges() const;

 private:
  std::vector<VertexId> partner_;
  std::vector<Edge> log_;  // append-only insertion log; erased edges are skipped on read
  std::size_t size_ = 0;
};

// True iff no vertex appears in two distinct edges (exact duplicates are
// collapsed first).
bool is_valid_matching(std::span<const Edge> edges);

// Replaces drop by the path edges add1, add2.  Preconditions: drop is
// matched, {add1, drop, add2} is a length-3 path whose outer endpoints are
// uncovered.  Throws std::invalid_argument otherwise; this is the enforcement
// point every algorithm goes through.
void apply_augment3(Matching& m, const Edge& drop, const Edge& add1, const Edge& add2);

// Value-returning form of apply_augment3.
Matching augment_3(const Matching& m, const Edge& drop, const Edge& add1, const Edge& add2);

}  // namespace semistream
