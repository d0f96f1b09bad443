#include <numeric>
#include <string>

#include "resnet/errors.hpp"
#include "resnet/solver.hpp"

namespace resnet {

namespace {

// Union-find with undo; union by size, no path compression.
class RollbackUnionFind {
public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
    return true;
  }
  void undo() {
    std::size_t b = history_.back();
    history_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<std::size_t> history_;
};

class TreeEnumerator {
public:
  explicit TreeEnumerator(const Network& network)
      : network_(network), uf_(network.vertex_count()), counts_{0.0, std::vector<double>(network.edge_count(), 0.0)} {}

  SpanningTreeCounts run() {
    recurse(0);
    return std::move(counts_);
  }

private:
  std::size_t needed() const { return network_.vertex_count() - 1 - chosen_.size(); }

  // Would chosen edges plus edges [from, m) still connect every vertex?
  bool can_span(EdgeId from) const {
    RollbackUnionFind probe = uf_;
    std::size_t joins = chosen_.size();
    for (EdgeId e = from; e < network_.edge_count() && joins < network_.vertex_count() - 1; ++e) {
      if (probe.unite(network_.edge(e).tail, network_.edge(e).head)) ++joins;
    }
    return joins == network_.vertex_count() - 1;
  }

  void recurse(EdgeId next) {
    if (needed() == 0) {
      counts_.total += 1.0;
      for (EdgeId e : chosen_) counts_.containing[e] += 1.0;
      return;
    }
    if (network_.edge_count() - next < needed()) return;
    const Edge& edge = network_.edge(next);
    if (uf_.unite(edge.tail, edge.head)) {
      chosen_.push_back(next);
      recurse(next + 1);
      chosen_.pop_back();
      uf_.undo();
    }
    if (can_span(next + 1)) recurse(next + 1);
  }

  const Network& network_;
  RollbackUnionFind uf_;
  std::vector<EdgeId> chosen_;
  SpanningTreeCounts counts_;
};

}  // namespace

SpanningTreeCounts count_spanning_trees(const Network& network) {
  if (network.vertex_count() > kSpanningTreeVertexLimit) {
    throw CapacityError("spanning-tree enumeration is limited to " + std::to_string(kSpanningTreeVertexLimit) +
                        " vertices (got " + std::to_string(network.vertex_count()) + ")");
  }
  if (network.vertex_count() == 0) return {0.0, {}};
  return TreeEnumerator(network).run();
}

std::vector<double> spanning_tree_edge_probabilities(const Network& network) {
  SpanningTreeCounts counts = count_spanning_trees(network);
  if (counts.total == 0.0) throw PreconditionError("network is disconnected: it has no spanning tree");
  std::vector<double> out(network.edge_count());
  for (EdgeId e = 0; e < out.size(); ++e) out[e] = counts.containing[e] / counts.total;
  return out;
}

double spanning_tree_edge_probability(const Network& network, EdgeId edge) {
  if (edge >= network.edge_count()) throw ArgumentError("edge id " + std::to_string(edge) + " out of range");
  return spanning_tree_edge_probabilities(network)[edge];
}

}  // namespace resnet
