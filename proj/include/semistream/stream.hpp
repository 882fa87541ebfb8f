#pragma once
// Replayable edge streams with pass counting, plus the meter that tracks
// per-edge work and peak stored edges for the semi-streaming space check.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semistream/core.hpp"

namespace semistream {

// Counts elementary per-edge operations and the peak number of simultaneously
// stored edges.  Vertex-set entries (ignore sets) weigh half an edge, so the
// meter tracks half-edge units internally.
class Meter {
 public:
  void op(std::size_t k = 1) { ops_ += k; }

  void add_edges(std::int64_t count) { add_half(2 * count); }
  void remove_edges(std::int64_t count) { add_half(-2 * count); }
  void add_vertex_entries(std::int64_t count) { add_half(count); }

  std::size_t ops() const { return ops_; }
  // Peak stored edges, vertex entries rounded up.
  std::size_t peak_stored_edges() const {
    return static_cast<std::size_t>((peak_half_ + 1) / 2);
  }

 private:
  void add_half(std::int64_t delta) {
    stored_half_ += delta;
    if (stored_half_ > peak_half_) peak_half_ = stored_half_;
  }

  std::size_t ops_ = 0;
  std::int64_t stored_half_ = 0;
  std::int64_t peak_half_ = 0;
};

struct PassMetrics {
  int passes = 0;
  std::size_t peak_stored_edges = 0;
  std::size_t update_ops = 0;
  std::size_t stream_length = 0;
};

// Fixed-order edge sequence that can be traversed repeatedly.  Each completed
// traversal bumps passes_used exactly once; a live traversal blocks any other
// traversal of the same source.
class StreamSource {
 public:
  StreamSource(std::vector<Edge> edges, VertexId n,
               GraphClass cls = GraphClass::kGeneral, std::vector<Side> sides = {});

  static StreamSource from_graph(const Graph& g);

  VertexId vertex_count() const { return n_; }
  std::size_t length() const { return edges_.size(); }
  GraphClass graph_class() const { return cls_; }
  const std::vector<Side>& sides() const { return sides_; }
  const std::vector<Edge>& ordering() const { return edges_; }
  int passes_used() const { return passes_used_; }

  class Replay {
   public:
    class Iterator {
     public:
      using value_type = Edge;
      using difference_type = std::ptrdiff_t;

      Iterator() = default;
      Iterator(Replay* r, std::size_t i) : replay_(r), index_(i) {}

      const Edge& operator*() const { return replay_->source_->edges_[index_]; }
      Iterator& operator++() {
        ++index_;
        if (index_ >= replay_->source_->edges_.size()) replay_->mark_complete();
        return *this;
      }
      void operator++(int) { ++(*this); }
      friend bool operator==(const Iterator& a, const Iterator& b) {
        return a.index_ == b.index_;
      }

     private:
      Replay* replay_ = nullptr;
      std::size_t index_ = 0;
    };

    Replay(const Replay&) = delete;
    Replay& operator=(const Replay&) = delete;
    Replay(Replay&& other) noexcept;
    ~Replay();

    Iterator begin() { return Iterator(this, 0); }
    Iterator end() { return Iterator(nullptr, source_->edges_.size()); }

   private:
    friend class StreamSource;
    explicit Replay(StreamSource* source);
    void mark_complete();

    StreamSource* source_ = nullptr;
    bool completed_ = false;
  };

  // Throws std::logic_error if a traversal of this source is already live.
  Replay replay();

 private:
  friend class Replay;

  std::vector<Edge> edges_;
  VertexId n_;
  GraphClass cls_;
  std::vector<Side> sides_;
  int passes_used_ = 0;
  bool live_ = false;
};

}  // namespace semistream
