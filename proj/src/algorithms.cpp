#include "semistream/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace semistream {
namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool triangle_free_class(GraphClass cls) {
  return cls == GraphClass::kBipartite || cls == GraphClass::kTriangleFree;
}

PassMetrics metrics_for(const StreamSource& src, const Meter& meter, int passes_before) {
  PassMetrics pm;
  pm.passes = src.passes_used() - passes_before;
  pm.peak_stored_edges = meter.peak_stored_edges();
  pm.update_ops = meter.ops();
  pm.stream_length = src.length();
  return pm;
}

}  // namespace

// ---------------------------------------------------------------------------
// ImproveMatcher

ImproveMatcher::ImproveMatcher(const Matching& base, int lambda_u, int lambda_m, bool strict,
                               Meter& meter, const RunOptions& opts, bool omit_triangle_guard)
    : base_(base),
      m_(base),
      s_(base.vertex_count(), lambda_u, lambda_m),
      ignore_(base.vertex_count()),
      lambda_u_(lambda_u),
      lambda_m_(lambda_m),
      strict_(strict),
      omit_triangle_guard_(omit_triangle_guard),
      meter_(&meter),
      opts_(opts),
      last_size_(base.size()) {
  require(lambda_u > lambda_m && lambda_m >= 1, "improve_matching needs lambda_u > lambda_m >= 1");
  if (opts_.record_trace) {
    trace_.lambda_u = lambda_u;
    trace_.lambda_m = lambda_m;
    trace_.strict = strict;
    trace_.base_edges = base.edges();
  }
}

void ImproveMatcher::record(const Edge& e, StepAction a, VertexId x, VertexId y, VertexId v,
                            VertexId b) {
  if (opts_.record_trace) trace_.steps.push_back(StepRecord{e, a, x, y, v, b});
}

void ImproveMatcher::checked_arrival() {
  if (!opts_.checked) return;
  if (m_.size() < last_size_) throw CheckViolation("matching size decreased");
  last_size_ = m_.size();
  if (!is_valid_matching(m_.edges())) throw CheckViolation("matching invalid after arrival");
  if (s_.size() > static_cast<std::size_t>(lambda_m_) * base_.size()) {
    throw CheckViolation("|S| exceeds lambda_m * |M0|");
  }
}

void ImproveMatcher::step(const Edge& e) {
  meter_->op();
  if (ignore_.in_any(e.u) || ignore_.in_any(e.v)) {
    record(e, StepAction::kIgnoredIgnoreSet);
    checked_arrival();
    return;
  }
  bool mu = base_.covers(e.u);
  bool mv = base_.covers(e.v);
  if (mu && mv) {
    record(e, StepAction::kIgnoredBothMatched);
    checked_arrival();
    return;
  }
  if (!mu && !mv) {
    throw std::logic_error("improve_matching: edge with both endpoints unmatched; base not maximal");
  }
  VertexId x = mu ? e.v : e.u;  // unmatched endpoint
  VertexId y = mu ? e.u : e.v;  // matched endpoint
  VertexId v = base_.partner(y);

  if (!strict_ || s_.degree(x) < lambda_u_) {
    for (VertexId b : s_.neighbors(v)) {
      meter_->op();
      if (!omit_triangle_guard_ && b == x) continue;  // would close a triangle, not a path
      if (ignore_.in_i(b) || m_.covers(b)) {
        // The ignore-set bookkeeping makes consumed support endpoints
        // unreachable; reaching one here is a machine bug.
        throw std::logic_error("improve_matching: stale support endpoint survived the ignore sets");
      }
      apply_augment3(m_, make_edge(y, v), make_edge(x, y), make_edge(v, b));
      meter_->op(4);
      meter_->add_edges(1);  // net one more matched edge
      ignore_.add_i(x, *meter_);
      ignore_.add_i(y, *meter_);
      ignore_.add_i(v, *meter_);
      ignore_.add_i(b, *meter_);
      for (VertexId t : s_.neighbors(x)) {
        meter_->op();
        ignore_.add_ib(t, *meter_);
        ignore_.add_ib(base_.partner(t), *meter_);
      }
      for (VertexId t : s_.neighbors(b)) {
        meter_->op();
        ignore_.add_ib(t, *meter_);
        ignore_.add_ib(base_.partner(t), *meter_);
      }
      record(e, StepAction::kAugmented, x, y, v, b);
      checked_arrival();
      return;
    }
  }

  meter_->op();
  if (s_.degree(x) < lambda_u_ && s_.degree(y) < lambda_m_) {
    if (s_.contains(x, y)) {
      record(e, StepAction::kDuplicateSupport, x, y);
    } else {
      s_.insert(x, y);
      meter_->add_edges(1);
      record(e, StepAction::kAddedToSupport, x, y);
      if (opts_.checked && s_.degree(y) + s_.degree(v) > lambda_m_) {
        throw CheckViolation("support degree sum over a matched pair exceeds lambda_m");
      }
    }
  } else {
    record(e, StepAction::kSkippedCaps, x, y);
  }
  checked_arrival();
}

void ImproveMatcher::release_metering(bool keep_matching) {
  meter_->remove_edges(static_cast<std::int64_t>(s_.size()));
  meter_->add_vertex_entries(-static_cast<std::int64_t>(ignore_.entries()));
  if (!keep_matching) {
    meter_->remove_edges(static_cast<std::int64_t>(m_.size()) -
                         static_cast<std::int64_t>(base_.size()));
  }
}

void ImproveMatcher::final_checks() const {
  if (s_.size() > static_cast<std::size_t>(lambda_m_) * base_.size()) {
    throw CheckViolation("|S| exceeds lambda_m * |M0| at pass end");
  }
  for (const Edge& e : base_.edges()) {
    if (s_.degree(e.u) + s_.degree(e.v) > lambda_m_) {
      throw CheckViolation("support degree sum over a matched pair exceeds lambda_m at pass end");
    }
  }
  for (VertexId w = 0; w < base_.vertex_count(); ++w) {
    int cap = base_.covers(w) ? lambda_m_ : lambda_u_;
    if (s_.degree(w) > cap) throw CheckViolation("support degree cap exceeded");
  }
  if (!is_valid_matching(m_.edges())) throw CheckViolation("final matching invalid");
}

// ---------------------------------------------------------------------------
// Building blocks over explicit sequences.

Matching greedy_maximal_matching(std::span<const Edge> pass, VertexId n) {
  Meter meter;
  GreedyMatcher g(n, meter);
  for (const Edge& e : pass) g.step(e);
  return g.take();
}

SupportSet semi_matching(std::span<const Edge> pass, int cap, const std::vector<bool>& in_x,
                         const std::vector<bool>& in_y, VertexId n) {
  require(cap >= 1, "semi_matching needs cap >= 1");
  SupportSet s(n, cap, 1);  // X-side cap 1, Y-side cap `cap`
  for (const Edge& e : pass) {
    VertexId x, y;
    if (in_x[e.u] && in_y[e.v]) {
      x = e.u;
      y = e.v;
    } else if (in_x[e.v] && in_y[e.u]) {
      x = e.v;
      y = e.u;
    } else {
      continue;  // not an X-Y edge
    }
    if (s.degree(x) == 0 && s.degree(y) <= cap - 1 && !s.contains(x, y)) {
      s.insert(y, x);  // y plays the unmatched-capped side, x the 1-capped side
    }
  }
  return s;
}

Matching greedy_augment(const Matching& m0, const SupportSet& s) {
  Matching m = m0;
  std::vector<bool> consumed(m0.vertex_count(), false);
  for (const Edge& uv : m0.edges()) {
    auto pick = [&](VertexId side, VertexId avoid) -> VertexId {
      for (VertexId cand : s.neighbors(side)) {
        if (!consumed[cand] && cand != avoid) return cand;
      }
      return kNoVertex;
    };
    VertexId a = pick(uv.u, kNoVertex);
    if (a == kNoVertex) continue;
    VertexId b = pick(uv.v, a);
    if (b == kNoVertex) continue;
    apply_augment3(m, uv, make_edge(a, uv.u), make_edge(uv.v, b));
    consumed[a] = true;  // retires every support edge at a and b
    consumed[b] = true;
  }
  return m;
}

Matching improve_matching(std::span<const Edge> pass, const Matching& m0, int lambda_u,
                          int lambda_m, bool strict, ImproveTrace* trace) {
  Meter meter;
  RunOptions opts;
  opts.record_trace = trace != nullptr;
  ImproveMatcher machine(m0, lambda_u, lambda_m, strict, meter, opts);
  for (const Edge& e : pass) machine.step(e);
  if (trace != nullptr) *trace = machine.take_trace();
  return machine.take();
}

// ---------------------------------------------------------------------------
// Full algorithms.

AlgoResult run_greedy(StreamSource& src, const RunOptions& opts) {
  Meter meter;
  int before = src.passes_used();
  GreedyMatcher g(src.vertex_count(), meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m = g.take();
  if (opts.checked && !is_valid_matching(m.edges())) throw CheckViolation("greedy matching invalid");
  return AlgoResult{std::move(m), metrics_for(src, meter, before), {}};
}

AlgoResult two_pass_simple(StreamSource& src, const RunOptions& opts) {
  require(triangle_free_class(src.graph_class()),
          "two-pass-simple needs a triangle-free (or bipartite) input");
  Meter meter;
  int before = src.passes_used();
  VertexId n = src.vertex_count();

  GreedyMatcher g(n, meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m0 = g.take();

  // Second pass: (3, V(M0), V \ V(M0))-semi-matching, built in-stream.
  SupportSet s(n, kLambdaSimple, 1);
  for (const Edge& e : src.replay()) {
    meter.op();
    bool cu = m0.covers(e.u);
    bool cv = m0.covers(e.v);
    if (cu == cv) continue;  // skip edges not crossing the bipartition
    VertexId x = cu ? e.u : e.v;  // matched side, degree cap 1
    VertexId y = cu ? e.v : e.u;  // unmatched side, degree cap lambda
    if (s.degree(x) == 0 && s.degree(y) <= kLambdaSimple - 1 && !s.contains(x, y)) {
      s.insert(y, x);
      meter.add_edges(1);
    }
  }

  Matching m = greedy_augment(m0, s);
  meter.add_edges(static_cast<std::int64_t>(m.size()) - static_cast<std::int64_t>(m0.size()));
  if (opts.checked && !is_valid_matching(m.edges())) throw CheckViolation("matching invalid");
  return AlgoResult{std::move(m), metrics_for(src, meter, before), {}};
}

namespace {

AlgoResult improve_based(StreamSource& src, int lambda_u, int lambda_m, bool strict,
                         const RunOptions& opts) {
  Meter meter;
  int before = src.passes_used();
  GreedyMatcher g(src.vertex_count(), meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m0 = g.take();

  ImproveMatcher machine(m0, lambda_u, lambda_m, strict, meter, opts);
  for (const Edge& e : src.replay()) machine.step(e);
  if (opts.checked) machine.final_checks();

  AlgoResult out{Matching{}, PassMetrics{}, {}};
  if (opts.record_trace) out.traces.push_back(machine.take_trace());
  machine.release_metering(true);
  out.matching = machine.take();
  out.metrics = metrics_for(src, meter, before);
  return out;
}

}  // namespace

AlgoResult two_pass_improved(StreamSource& src, const RunOptions& opts) {
  bool tf = triangle_free_class(src.graph_class());
  return tf ? improve_based(src, 2, 1, false, opts) : improve_based(src, 4, 2, false, opts);
}

AlgoResult two_pass_further(StreamSource& src, const RunOptions& opts) {
  if (!triangle_free_class(src.graph_class())) {
    return improve_based(src, 4, 2, true, opts);
  }
  // Two strict machines share the single second pass; both see every edge.
  Meter meter;
  int before = src.passes_used();
  GreedyMatcher g(src.vertex_count(), meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m0 = g.take();

  ImproveMatcher narrow(m0, 2, 1, true, meter, opts);
  ImproveMatcher wide(m0, 3, 1, true, meter, opts);
  for (const Edge& e : src.replay()) {
    narrow.step(e);
    wide.step(e);
  }
  if (opts.checked) {
    narrow.final_checks();
    wide.final_checks();
  }

  AlgoResult out{Matching{}, PassMetrics{}, {}};
  if (opts.record_trace) {
    out.traces.push_back(narrow.take_trace());
    out.traces.push_back(wide.take_trace());
  }
  bool narrow_wins = narrow.matching().size() >= wide.matching().size();
  narrow.release_metering(narrow_wins);
  wide.release_metering(!narrow_wins);
  out.matching = narrow_wins ? narrow.take() : wide.take();
  out.metrics = metrics_for(src, meter, before);
  return out;
}

AlgoResult three_pass_bipartite(StreamSource& src, const RunOptions& opts) {
  require(src.graph_class() == GraphClass::kBipartite,
          "three-pass-bipartite needs declared sides");
  const std::vector<Side>& sides = src.sides();
  Meter meter;
  int before = src.passes_used();
  VertexId n = src.vertex_count();

  GreedyMatcher g(n, meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m0 = g.take();

  // Pass 2: maximal matching in F2 = {ab : a in A(M0), b in B \ B(M0)}.
  GreedyMatcher ga(n, meter);
  for (const Edge& e : src.replay()) {
    VertexId a = sides[e.u] == Side::kA ? e.u : e.v;
    VertexId b = other_endpoint(e, a);
    if (m0.covers(a) && !m0.covers(b)) ga.step(e); else meter.op();
  }
  Matching ma = ga.take();

  // Pass 3: maximal matching in F3 = {ab : a in A \ A(M0), partner(b) in A(M_A)}.
  GreedyMatcher gb(n, meter);
  for (const Edge& e : src.replay()) {
    VertexId a = sides[e.u] == Side::kA ? e.u : e.v;
    VertexId b = other_endpoint(e, a);
    bool eligible = !m0.covers(a) && m0.covers(b) && ma.covers(m0.partner(b));
    if (eligible) gb.step(e); else meter.op();
  }
  Matching mb = gb.take();

  // Each M_B edge ba fixes the unique path b'' - a' - b - a; all paths are
  // vertex-disjoint, so augment them all.
  Matching m = m0;
  for (const Edge& e : mb.edges()) {
    VertexId a = sides[e.u] == Side::kA ? e.u : e.v;
    VertexId b = other_endpoint(e, a);
    VertexId aprime = m0.partner(b);
    VertexId bsecond = ma.partner(aprime);
    apply_augment3(m, make_edge(aprime, b), make_edge(bsecond, aprime), make_edge(b, a));
    meter.add_edges(1);
  }
  if (opts.checked && !is_valid_matching(m.edges())) throw CheckViolation("matching invalid");
  return AlgoResult{std::move(m), metrics_for(src, meter, before), {}};
}

AlgoResult three_pass_triangle_free(StreamSource& src, const RunOptions& opts) {
  require(triangle_free_class(src.graph_class()),
          "three-pass-triangle-free needs a triangle-free (or bipartite) input");
  Meter meter;
  int before = src.passes_used();
  VertexId n = src.vertex_count();

  GreedyMatcher g(n, meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m0 = g.take();

  // Pass 2: maximal matching M1 in F1 = edges with exactly one matched endpoint.
  GreedyMatcher g1(n, meter);
  std::vector<Edge> m1_order;
  for (const Edge& e : src.replay()) {
    if (m0.covers(e.u) != m0.covers(e.v)) {
      if (g1.step(e)) m1_order.push_back(e);
    } else {
      meter.op();
    }
  }
  Matching m1 = g1.take();

  // Offline: drop the later-arriving M1 edge of every 3-augmenting path of
  // M1 u M0, leaving M1' free of 3-augmenting paths.
  std::unordered_map<std::uint64_t, std::size_t> arrival;
  for (std::size_t i = 0; i < m1_order.size(); ++i) {
    const Edge& e = m1_order[i];
    arrival[(static_cast<std::uint64_t>(e.u) << 32) | e.v] = i;
  }
  auto arrival_of = [&](VertexId covered) {
    Edge e = make_edge(covered, m1.partner(covered));
    return arrival.at((static_cast<std::uint64_t>(e.u) << 32) | e.v);
  };
  std::vector<bool> dropped(m1_order.size(), false);
  std::vector<Edge> aug_pairs;  // the M0 edges of the 3-augmenting paths
  for (const Edge& pq : m0.edges()) {
    if (m1.covers(pq.u) && m1.covers(pq.v)) {
      aug_pairs.push_back(pq);
      dropped[std::max(arrival_of(pq.u), arrival_of(pq.v))] = true;
    }
  }
  Matching m1prime(n);
  for (std::size_t i = 0; i < m1_order.size(); ++i) {
    if (!dropped[i]) m1prime.insert(m1_order[i]);
  }

  // V2 and P: x in V2 iff x's partner w carries an M1' edge wv; P(x) = v.
  std::vector<VertexId> p_of(n, kNoVertex), p_inv(n, kNoVertex);
  std::vector<bool> in_v2(n, false);
  for (const Edge& e : m1prime.edges()) {
    VertexId w = m0.covers(e.u) ? e.u : e.v;
    VertexId v = other_endpoint(e, w);
    VertexId x = m0.partner(w);
    in_v2[x] = true;
    p_of[x] = v;
    p_inv[v] = x;
  }

  // Pass 3: greedily collect M2 inside F2 = {xy : x in V2, y unmatched},
  // marking P(x), x, y, and P^-1(y) so the later augmentations stay disjoint.
  std::vector<bool> marked(n, false);
  std::vector<Edge> m2;
  for (const Edge& e : src.replay()) {
    meter.op();
    VertexId x, y;
    if (in_v2[e.u] && !m0.covers(e.v)) {
      x = e.u;
      y = e.v;
    } else if (in_v2[e.v] && !m0.covers(e.u)) {
      x = e.v;
      y = e.u;
    } else {
      continue;
    }
    if (marked[x] || marked[y]) continue;
    if (y == p_of[x]) {
      throw std::logic_error("three-pass-triangle-free: triangle through P(x); input not triangle-free");
    }
    m2.push_back(make_edge(x, y));
    meter.add_edges(1);
    marked[p_of[x]] = true;
    marked[x] = true;
    marked[y] = true;
    if (p_inv[y] != kNoVertex) marked[p_inv[y]] = true;
    if (opts.checked) {
      for (VertexId z = 0; z < n; ++z) {
        if (in_v2[z] && marked[z] != marked[p_of[z]]) {
          throw CheckViolation("marking invariant broken: x and P(x) disagree");
        }
      }
    }
  }

  // M3: augment every 3-augmenting path of M1 u M0.
  Matching m3 = m0;
  for (const Edge& pq : aug_pairs) {
    apply_augment3(m3, pq, make_edge(pq.u, m1.partner(pq.u)), make_edge(pq.v, m1.partner(pq.v)));
  }
  // M3': augment along M1' + M2.
  Matching m3prime = m0;
  for (const Edge& e : m2) {
    VertexId x = in_v2[e.u] ? e.u : e.v;
    VertexId y = other_endpoint(e, x);
    VertexId w = m0.partner(x);
    apply_augment3(m3prime, make_edge(x, w), make_edge(x, y), make_edge(w, p_of[x]));
  }
  meter.add_edges(static_cast<std::int64_t>(std::max(m3.size(), m3prime.size()) - m0.size()));

  Matching m = m3.size() >= m3prime.size() ? std::move(m3) : std::move(m3prime);
  if (opts.checked && !is_valid_matching(m.edges())) throw CheckViolation("matching invalid");
  return AlgoResult{std::move(m), metrics_for(src, meter, before), {}};
}

AlgoResult three_pass_general(StreamSource& src, const RunOptions& opts) {
  Meter meter;
  int before = src.passes_used();
  GreedyMatcher g(src.vertex_count(), meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m = g.take();

  std::vector<ImproveTrace> traces;
  for (auto [lu, lm] : {std::pair{4, 2}, std::pair{5, 2}}) {
    ImproveMatcher machine(m, lu, lm, false, meter, opts);
    for (const Edge& e : src.replay()) machine.step(e);
    if (opts.checked) machine.final_checks();
    if (opts.record_trace) traces.push_back(machine.take_trace());
    machine.release_metering(true);
    m = machine.take();
  }
  return AlgoResult{std::move(m), metrics_for(src, meter, before), std::move(traces)};
}

AlgoResult multi_pass(StreamSource& src, const Rational& epsilon, const RunOptions& opts) {
  if (epsilon <= 0) throw std::invalid_argument("multi-pass: epsilon must be positive");
  bool tf = triangle_free_class(src.graph_class());
  int passes = multi_pass_count(epsilon, src.graph_class());

  Meter meter;
  int before = src.passes_used();
  GreedyMatcher g(src.vertex_count(), meter);
  for (const Edge& e : src.replay()) g.step(e);
  Matching m = g.take();

  std::vector<ImproveTrace> traces;
  for (int i = 2; i <= passes; ++i) {
    int lu = tf ? i : i + 1;
    int lm = tf ? 1 : 2;
    ImproveMatcher machine(m, lu, lm, false, meter, opts);
    std::size_t size_before = m.size();
    for (const Edge& e : src.replay()) machine.step(e);
    if (opts.checked) {
      machine.final_checks();
      if (machine.matching().size() < size_before) {
        throw CheckViolation("matching shrank across a pass");
      }
    }
    if (opts.record_trace) traces.push_back(machine.take_trace());
    machine.release_metering(true);
    m = machine.take();
  }
  return AlgoResult{std::move(m), metrics_for(src, meter, before), std::move(traces)};
}

AlgoResult multi_pass(StreamSource& src, double epsilon, const RunOptions& opts) {
  return multi_pass(src, rationalize(epsilon), opts);
}

}  // namespace semistream
