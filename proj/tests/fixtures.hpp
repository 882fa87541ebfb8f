#pragma once
// Shared fixture: six matched pairs with ten support edges around
// two-degree hubs.  Streaming the matched edges first (worst pair leading)
// reproduces the known augmentation traces frozen in the tests.

#include <vector>

#include "semistream/core.hpp"
#include "semistream/stream.hpp"

namespace semistream::testfix {

// Vertex ids: u1..u6 = 0..5, v1..v6 = 6..11, then the unmatched hubs.
inline constexpr VertexId kU1 = 0, kU2 = 1, kU3 = 2, kU4 = 3, kU5 = 4, kU6 = 5;
inline constexpr VertexId kV1 = 6, kV2 = 7, kV3 = 8, kV4 = 9, kV5 = 10, kV6 = 11;
inline constexpr VertexId kA56 = 12;  // hub over u5, u6
inline constexpr VertexId kA34 = 13;  // hub over u3, u4
inline constexpr VertexId kA1 = 14;
inline constexpr VertexId kB45 = 15;  // hub over v4, v5
inline constexpr VertexId kB12 = 16;  // hub over v1 and u2
inline constexpr VertexId kB6 = 17;
inline constexpr VertexId kN = 18;

inline std::vector<Edge> matched_edges() {
  // u5v5 leads: greedily augmenting it first costs the u4 and u6 pairs.
  return {make_edge(kU5, kV5), make_edge(kU1, kV1), make_edge(kU2, kV2),
          make_edge(kU3, kV3), make_edge(kU4, kV4), make_edge(kU6, kV6)};
}

inline std::vector<Edge> support_edges() {
  return {make_edge(kU6, kA56), make_edge(kU5, kA56), make_edge(kU4, kA34),
          make_edge(kU3, kA34), make_edge(kV4, kB45), make_edge(kV5, kB45),
          make_edge(kV1, kB12), make_edge(kU2, kB12), make_edge(kV6, kB6),
          make_edge(kU1, kA1)};
}

inline Graph graph() {
  Graph g;
  g.n = kN;
  g.cls = GraphClass::kTriangleFree;
  g.edges = matched_edges();
  auto sup = support_edges();
  g.edges.insert(g.edges.end(), sup.begin(), sup.end());
  return g;
}

inline StreamSource source() { return StreamSource::from_graph(graph()); }

}  // namespace semistream::testfix
