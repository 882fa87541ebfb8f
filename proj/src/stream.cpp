#include "semistream/stream.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace semistream {

StreamSource::StreamSource(std::vector<Edge> edges, VertexId n, GraphClass cls,
                           std::vector<Side> sides)
    : edges_(std::move(edges)), n_(n), cls_(cls), sides_(std::move(sides)) {
  for (const Edge& e : edges_) {
    if (e.u >= e.v || e.v >= n_) {
      throw std::invalid_argument("stream edge (" + std::to_string(e.u) + "," +
                                  std::to_string(e.v) + ") out of range for n=" +
                                  std::to_string(n_));
    }
  }
  if (cls_ == GraphClass::kBipartite && sides_.size() != n_) {
    throw std::invalid_argument("bipartite stream needs sides for all vertices");
  }
}

StreamSource StreamSource::from_graph(const Graph& g) {
  g.validate();
  return StreamSource(g.edges, g.n, g.cls, g.sides);
}

StreamSource::Replay::Replay(StreamSource* source) : source_(source) {
  source_->live_ = true;
  if (source_->edges_.empty()) mark_complete();  // an empty traversal is already done
}

StreamSource::Replay::Replay(Replay&& other) noexcept
    : source_(other.source_), completed_(other.completed_) {
  other.source_ = nullptr;
}

StreamSource::Replay::~Replay() {
  if (source_ != nullptr) source_->live_ = false;
}

void StreamSource::Replay::mark_complete() {
  if (!completed_) {
    completed_ = true;
    ++source_->passes_used_;
  }
}

StreamSource::Replay StreamSource::replay() {
  if (live_) {
    throw std::logic_error("nested replay: a traversal of this source is still live");
  }
  return Replay(this);
}

}  // namespace semistream
