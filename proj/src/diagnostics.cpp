#include "semistream/diagnostics.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

namespace semistream {
namespace {

std::uint64_t key_of(const Edge& e) { return (static_cast<std::uint64_t>(e.u) << 32) | e.v; }

// Replayed pass state, answering "at arrival time t" queries.  Times are
// step indices; state at time t reflects steps 0..t-1.
class TraceState {
 public:
  TraceState(const ImproveTrace& trace, VertexId n) : sup_(n) {
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
      const StepRecord& rec = trace.steps[t];
      if (!arrival_.count(key_of(rec.e))) arrival_[key_of(rec.e)] = t;
      switch (rec.action) {
        case StepAction::kAddedToSupport:
          sup_[rec.x].push_back({t, rec.y});
          sup_[rec.y].push_back({t, rec.x});
          break;
        case StepAction::kAugmented: {
          Edge dropped = make_edge(rec.y, rec.v);
          good_time_[key_of(dropped)] = t;
          consumed_[rec.x] = {t, dropped};
          consumed_[rec.b] = {t, dropped};
          break;
        }
        default:
          break;
      }
    }
  }

  std::optional<std::size_t> arrival(const Edge& e) const {
    auto it = arrival_.find(key_of(e));
    if (it == arrival_.end()) return std::nullopt;
    return it->second;
  }

  bool is_good(const Edge& e) const { return good_time_.count(key_of(e)) != 0; }

  int degree_at(VertexId v, std::size_t t) const {
    int d = 0;
    for (const auto& [time, other] : sup_[v]) {
      if (time < t) ++d; else break;
    }
    return d;
  }

  // Consumed (matched through an augmentation) strictly before time t.
  bool consumed_before(VertexId v, std::size_t t) const {
    auto it = consumed_.find(v);
    return it != consumed_.end() && it->second.first < t;
  }

  Edge good_edge_of(VertexId v) const { return consumed_.at(v).second; }

  // Earliest-inserted support neighbor of v that is consumed before t.
  std::optional<VertexId> consumed_neighbor(VertexId v, std::size_t t) const {
    for (const auto& [time, other] : sup_[v]) {
      if (time >= t) break;
      if (consumed_before(other, t)) return other;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::vector<std::pair<std::size_t, VertexId>>> sup_;
  std::unordered_map<std::uint64_t, std::size_t> arrival_;
  std::unordered_map<std::uint64_t, std::size_t> good_time_;
  std::unordered_map<VertexId, std::pair<std::size_t, Edge>> consumed_;
};

}  // namespace

ChargingReport classify_trace(const ImproveTrace& trace, const Matching& m0,
                              const AugDecomposition& d) {
  ChargingReport report;
  TraceState state(trace, m0.vertex_count());
  int lu = trace.lambda_u;
  int lm = trace.lambda_m;

  std::map<std::uint64_t, std::size_t> charges;
  auto charge_to = [&](VertexId consumed_vertex) {
    charges[key_of(state.good_edge_of(consumed_vertex))] += 1;
    report.partially_good += 1;
  };

  for (const Edge& e : trace.base_edges) {
    if (state.is_good(e)) report.good += 1;
  }

  for (const AugPath& path : d.aug_paths) {
    if (path.length() != 3) continue;
    report.augmentable += 1;
    Edge uv = make_edge(path.vertices[1], path.vertices[2]);
    if (state.is_good(uv)) continue;  // good; counted above

    VertexId a = path.vertices[0], u = path.vertices[1];
    VertexId v = path.vertices[2], b = path.vertices[3];
    auto t_first = state.arrival(make_edge(a, u));
    auto t_second = state.arrival(make_edge(v, b));
    if (!t_first || !t_second) {
      report.errors.push_back("optimum edge missing from the trace");
      continue;
    }
    if (*t_first > *t_second) {
      std::swap(a, b);
      std::swap(u, v);
      std::swap(t_first, t_second);
    }
    std::size_t t1 = *t_first, t2 = *t_second;

    // Resolution of the second optimum edge vb, shared by two cases below.
    auto resolve_at_vb = [&]() {
      if (auto aprime = state.consumed_neighbor(u, t2)) return charge_to(*aprime);
      if (auto aprime = state.consumed_neighbor(v, t2)) return charge_to(*aprime);
      if (state.consumed_before(b, t2)) {
        if (state.degree_at(b, t2) <= lu - 1) charge_to(b); else report.bad += 1;
        return;
      }
      if (trace.strict && state.degree_at(b, t2) >= lu) {
        report.bad += 1;  // the strict gate blocked the augmentation
        return;
      }
      report.errors.push_back("unaugmented edge with no blocking cause at (" +
                              std::to_string(uv.u) + "," + std::to_string(uv.v) + ")");
    };

    const StepRecord& first = trace.steps[t1];
    if (first.action == StepAction::kAddedToSupport) {
      resolve_at_vb();
    } else if (state.consumed_before(a, t1)) {
      // a was already matched when au arrived.
      if (state.degree_at(a, t1) <= lu - 1) charge_to(a); else report.bad += 1;
    } else if (state.degree_at(u, t1) >= lm) {
      resolve_at_vb();
    } else if (state.degree_at(a, t1) >= lu) {
      report.bad += 1;
    } else if (auto aprime = state.consumed_neighbor(u, t1)) {
      // au was ignored through the pair's ignore-set entry.
      charge_to(*aprime);
    } else if (auto aprime = state.consumed_neighbor(v, t1)) {
      charge_to(*aprime);
    } else {
      report.errors.push_back("first optimum edge rejected for no chargeable reason at (" +
                              std::to_string(uv.u) + "," + std::to_string(uv.v) + ")");
    }
  }

  for (const auto& [edge_key, count] : charges) {
    report.max_charges = std::max(report.max_charges, count);
  }
  report.lemma3_ok =
      report.bad * static_cast<std::size_t>(lu) <= static_cast<std::size_t>(lm) * m0.size();
  std::size_t lemma4_bound = trace.strict ? 2 * lu - 2 : 2 * lu - 1;
  report.lemma4_ok = report.max_charges <= lemma4_bound;
  return report;
}

}  // namespace semistream
