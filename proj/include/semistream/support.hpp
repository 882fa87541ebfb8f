#pragma once
// Support-edge bookkeeping for the second-pass machines: the degree-capped
// append-only support set, the monotone ignore sets, and the step trace that
// the post-hoc diagnostics replay.

#include <cstdint>
#include <span>
#include <vector>

#include "semistream/core.hpp"
#include "semistream/stream.hpp"

namespace semistream {

// Append-only edge set between unmatched and matched vertices with per-side
// degree caps.  Edges are never removed; consumed edges become unreachable
// through the ignore sets.
class SupportSet {
 public:
  SupportSet(VertexId n, int cap_unmatched, int cap_matched)
      : nbr_(n), cap_u_(cap_unmatched), cap_m_(cap_matched) {}

  int cap_unmatched() const { return cap_u_; }
  int cap_matched() const { return cap_m_; }
  std::size_t size() const { return edges_; }

  int degree(VertexId v) const { return static_cast<int>(nbr_[v].size()); }
  std::span<const VertexId> neighbors(VertexId v) const { return nbr_[v]; }

  bool contains(VertexId a, VertexId b) const {
    const auto& shorter = nbr_[a].size() <= nbr_[b].size() ? nbr_[a] : nbr_[b];
    VertexId target = nbr_[a].size() <= nbr_[b].size() ? b : a;
    for (VertexId w : shorter) {
      if (w == target) return true;
    }
    return false;
  }

  // Inserts the edge (x unmatched, y matched); throws if a cap would break.
  void insert(VertexId x, VertexId y) {
    if (degree(x) >= cap_u_ || degree(y) >= cap_m_) {
      throw std::logic_error("support insert over degree cap");
    }
    nbr_[x].push_back(y);
    nbr_[y].push_back(x);
    ++edges_;
  }

 private:
  std::vector<std::vector<VertexId>> nbr_;  // insertion order per vertex
  std::size_t edges_ = 0;
  int cap_u_;
  int cap_m_;
};

// The sets I (augmentation participants) and I_B (pairs invalidated through
// consumed support edges).  Vertices are only ever added.
class IgnoreSets {
 public:
  explicit IgnoreSets(VertexId n) : i_(n, false), ib_(n, false) {}

  bool in_i(VertexId v) const { return i_[v]; }
  bool in_ib(VertexId v) const { return ib_[v]; }
  bool in_any(VertexId v) const { return i_[v] || ib_[v]; }

  void add_i(VertexId v, Meter& meter) {
    if (!i_[v]) {
      i_[v] = true;
      ++entries_;
      meter.add_vertex_entries(1);
    }
  }
  void add_ib(VertexId v, Meter& meter) {
    if (!ib_[v]) {
      ib_[v] = true;
      ++entries_;
      meter.add_vertex_entries(1);
    }
  }

  std::size_t entries() const { return entries_; }

 private:
  std::vector<bool> i_, ib_;
  std::size_t entries_ = 0;
};

enum class StepAction : std::uint8_t {
  kIgnoredIgnoreSet,    // an endpoint is in I u I_B
  kIgnoredBothMatched,  // both endpoints matched in the base matching
  kAugmented,
  kAddedToSupport,
  kDuplicateSupport,  // edge already stored; arrival is a no-op
  kSkippedCaps,       // degree caps (or the strict gate) block storing the edge
};

struct StepRecord {
  Edge e;
  StepAction action;
  VertexId x = kNoVertex;  // unmatched endpoint, when the edge was oriented
  VertexId y = kNoVertex;  // matched endpoint
  VertexId v = kNoVertex;  // y's base partner (augmentations only)
  VertexId b = kNoVertex;  // support endpoint completing the path (augmentations only)
};

// Everything the charging-scheme diagnostics need to replay one
// improve-matching pass.
struct ImproveTrace {
  int lambda_u = 0;
  int lambda_m = 0;
  bool strict = false;
  std::vector<Edge> base_edges;  // the pass's base matching, insertion order
  std::vector<StepRecord> steps;
};

}  // namespace semistream
