#include "semistream/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace semistream {

Edge make_edge(VertexId a, VertexId b) {
  if (a == b) {
    throw std::invalid_argument("self-loop rejected: (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

bool edge_touches(const Edge& e, VertexId x) { return e.u == x || e.v == x; }

VertexId other_endpoint(const Edge& e, VertexId x) {
  if (e.u == x) return e.v;
  if (e.v == x) return e.u;
  throw std::invalid_argument("vertex " + std::to_string(x) + " is not an endpoint");
}

std::string to_string(GraphClass cls) {
  switch (cls) {
    case GraphClass::kBipartite: return "bipartite";
    case GraphClass::kTriangleFree: return "triangle-free";
    case GraphClass::kGeneral: return "general";
  }
  throw std::logic_error("unreachable graph class");
}

GraphClass parse_graph_class(const std::string& name) {
  if (name == "bipartite") return GraphClass::kBipartite;
  if (name == "triangle-free") return GraphClass::kTriangleFree;
  if (name == "general") return GraphClass::kGeneral;
  throw std::invalid_argument("unknown graph class: " + name);
}

void Graph::validate() const {
  for (const Edge& e : edges) {
    if (e.u >= e.v) throw std::invalid_argument("edge not normalized or self-loop");
    if (e.v >= n) {
      throw std::invalid_argument("edge endpoint " + std::to_string(e.v) +
                                  " out of range for n=" + std::to_string(n));
    }
  }
  if (cls == GraphClass::kBipartite) {
    if (sides.size() != n) {
      throw std::invalid_argument("bipartite graph needs a side for each of the " +
                                  std::to_string(n) + " vertices");
    }
    for (const Edge& e : edges) {
      if (sides[e.u] == sides[e.v]) {
        throw std::invalid_argument("bipartite edge (" + std::to_string(e.u) + "," +
                                    std::to_string(e.v) + ") does not cross the sides");
      }
    }
  } else if (!sides.empty()) {
    throw std::invalid_argument("sides given for a non-bipartite graph");
  }
}

bool Matching::contains(const Edge& e) const {
  return e.u < partner_.size() && partner_[e.u] == e.v;
}

void Matching::insert(const Edge& e) {
  if (e.u == e.v || e.v >= partner_.size()) {
    throw std::invalid_argument("matching insert: bad edge");
  }
  if (covers(e.u) || covers(e.v)) {
    throw std::invalid_argument("matching insert: endpoint already covered by (" +
                                std::to_string(e.u) + "," + std::to_string(e.v) + ")");
  }
  partner_[e.u] = e.v;
  partner_[e.v] = e.u;
  log_.push_back(e);
  ++size_;
}

void Matching::erase(const Edge& e) {
  if (!contains(e)) {
    throw std::invalid_argument("matching erase: edge not present (" + std::to_string(e.u) +
                                "," + std::to_string(e.v) + ")");
  }
  partner_[e.u] = kNoVertex;
  partner_[e.v] = kNoVertex;
  --size_;
}

std::vector<Edge> Matching::edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : log_) {
    if (!contains(e)) continue;
    std::uint64_t key = (static_cast<std::uint64_t>(e.u) << 32) | e.v;
    if (seen.insert(key).second) out.push_back(e);
  }
  return out;
}

bool is_valid_matching(std::span<const Edge> edges) {
  std::unordered_set<std::uint64_t> seen_edges;
  std::unordered_set<VertexId> seen_vertices;
  for (const Edge& e : edges) {
    Edge norm = e.u < e.v ? e : Edge{e.v, e.u};
    if (norm.u == norm.v) return false;
    std::uint64_t key = (static_cast<std::uint64_t>(norm.u) << 32) | norm.v;
    if (!seen_edges.insert(key).second) continue;  // duplicate of the same edge
    if (!seen_vertices.insert(norm.u).second) return false;
    if (!seen_vertices.insert(norm.v).second) return false;
  }
  return true;
}

void apply_augment3(Matching& m, const Edge& drop, const Edge& add1, const Edge& add2) {
  if (!m.contains(drop)) throw std::invalid_argument("augment_3: drop edge not in matching");
  if (m.contains(add1) || m.contains(add2)) {
    throw std::invalid_argument("augment_3: path edge already in matching");
  }
  auto shared_with_drop = [&](const Edge& e) -> VertexId {
    bool at_u = edge_touches(e, drop.u);
    bool at_v = edge_touches(e, drop.v);
    if (at_u == at_v) {
      throw std::invalid_argument("augment_3: path edge must meet drop in exactly one endpoint");
    }
    return at_u ? drop.u : drop.v;
  };
  VertexId inner1 = shared_with_drop(add1);
  VertexId inner2 = shared_with_drop(add2);
  if (inner1 == inner2) {
    throw std::invalid_argument("augment_3: both path edges meet drop at the same endpoint");
  }
  VertexId outer1 = other_endpoint(add1, inner1);
  VertexId outer2 = other_endpoint(add2, inner2);
  if (outer1 == outer2 || edge_touches(drop, outer1) || edge_touches(drop, outer2)) {
    throw std::invalid_argument("augment_3: outer endpoints must be distinct and off the path");
  }
  if (m.covers(outer1) || m.covers(outer2)) {
    throw std::invalid_argument("augment_3: outer endpoint already matched");
  }
  m.erase(drop);
  m.insert(add1);
  m.insert(add2);
}

Matching augment_3(const Matching& m, const Edge& drop, const Edge& add1, const Edge& add2) {
  Matching out = m;
  apply_augment3(out, drop, add1, add2);
  return out;
}

}  // namespace semistream
