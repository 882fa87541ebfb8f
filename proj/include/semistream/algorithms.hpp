#pragma once
// The streaming matching algorithms, written as per-edge state machines
// driven over stream replays.

#include <optional>
#include <span>
#include <vector>

#include "semistream/core.hpp"
#include "semistream/oracle.hpp"
#include "semistream/stream.hpp"
#include "semistream/support.hpp"

namespace semistream {

// Thrown when a checked-mode runtime invariant fails.
struct CheckViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct RunOptions {
  bool checked = false;       // validate invariants at every arrival
  bool record_trace = false;  // keep per-pass traces for the diagnostics
};

struct AlgoResult {
  Matching matching;
  PassMetrics metrics;
  std::vector<ImproveTrace> traces;  // one per improve pass, when recorded
};

// One-pass greedy machine: inserts any edge with both endpoints uncovered.
class GreedyMatcher {
 public:
  GreedyMatcher(VertexId n, Meter& meter) : m_(n), meter_(&meter) {}

  bool step(const Edge& e) {
    meter_->op();
    if (m_.covers(e.u) || m_.covers(e.v)) return false;
    m_.insert(e);
    meter_->add_edges(1);
    return true;
  }

  const Matching& matching() const { return m_; }
  Matching take() { return std::move(m_); }

 private:
  Matching m_;
  Meter* meter_;
};

// Second-pass machine of the improved two-pass algorithm: augments the base
// matching the moment an arriving edge closes a length-3 path through the
// support set, otherwise stores the edge if the degree caps allow.  With
// strict = true an augmentation additionally requires the arriving unmatched
// endpoint to have support degree below the cap.
class ImproveMatcher {
 public:
  // The trailing flag disables the explicit b != x triangle guard; it exists
  // only so tests can demonstrate that the mutation is caught downstream.
  ImproveMatcher(const Matching& base, int lambda_u, int lambda_m, bool strict,
                 Meter& meter, const RunOptions& opts, bool omit_triangle_guard = false);

  void step(const Edge& e);

  const Matching& matching() const { return m_; }
  const SupportSet& support() const { return s_; }
  Matching take() { return std::move(m_); }
  ImproveTrace take_trace() { return std::move(trace_); }

  // Pass-end invariant sweep (caps, pair sums, |S| bound, validity).
  void final_checks() const;

  // Returns the pass-local storage (support set and ignore entries, plus the
  // matching delta when the result is dropped) to the meter.  Call once when
  // the machine's structures are freed between passes.
  void release_metering(bool keep_matching);

 private:
  void record(const Edge& e, StepAction a, VertexId x = kNoVertex, VertexId y = kNoVertex,
              VertexId v = kNoVertex, VertexId b = kNoVertex);
  void checked_arrival();

  Matching base_;
  Matching m_;
  SupportSet s_;
  IgnoreSets ignore_;
  int lambda_u_, lambda_m_;
  bool strict_;
  bool omit_triangle_guard_;
  Meter* meter_;
  RunOptions opts_;
  ImproveTrace trace_;
  std::size_t last_size_;
};

// --- Building blocks over explicit edge sequences (unit-test surface) ------

Matching greedy_maximal_matching(std::span<const Edge> pass, VertexId n);

// (cap, X, Y)-semi-matching: X-side degree <= 1, Y-side degree <= cap; an
// edge is stored iff at arrival deg(x) = 0 and deg(y) <= cap - 1.  Edges not
// crossing X-Y are skipped.
SupportSet semi_matching(std::span<const Edge> pass, int cap, const std::vector<bool>& in_x,
                         const std::vector<bool>& in_y, VertexId n);

// Post-pass greedy augmentation of the simple two-pass algorithm: scans the
// base matching in insertion order and augments through the earliest
// available support edges, retiring all support edges at consumed vertices.
Matching greedy_augment(const Matching& m0, const SupportSet& s);

Matching improve_matching(std::span<const Edge> pass, const Matching& m0, int lambda_u,
                          int lambda_m, bool strict = false, ImproveTrace* trace = nullptr);

// --- Full algorithms over stream sources -----------------------------------

AlgoResult run_greedy(StreamSource& src, const RunOptions& opts = {});
AlgoResult two_pass_simple(StreamSource& src, const RunOptions& opts = {});
AlgoResult two_pass_improved(StreamSource& src, const RunOptions& opts = {});
AlgoResult two_pass_further(StreamSource& src, const RunOptions& opts = {});
AlgoResult three_pass_bipartite(StreamSource& src, const RunOptions& opts = {});
AlgoResult three_pass_triangle_free(StreamSource& src, const RunOptions& opts = {});
AlgoResult three_pass_general(StreamSource& src, const RunOptions& opts = {});
AlgoResult multi_pass(StreamSource& src, const Rational& epsilon, const RunOptions& opts = {});
AlgoResult multi_pass(StreamSource& src, double epsilon, const RunOptions& opts = {});

// Parameters the dispatching algorithms use per class.
inline constexpr int kLambdaSimple = 3;  // cap of the simple two-pass semi-matching

}  // namespace semistream
