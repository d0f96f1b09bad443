#ifndef RESNET_NETWORK_HPP
#define RESNET_NETWORK_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace resnet {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// An edge stored in its reference orientation: tail < head.
/// Conductance is in siemens; resistance is 1 / conductance.
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  double conductance = 1.0;

  double resistance() const { return 1.0 / conductance; }
  bool operator==(const Edge&) const = default;
};

struct Incidence {
  EdgeId edge;
  VertexId other;
};

/// Finite multigraph of resistors. Immutable once built.
///
/// Parallel edges are kept distinct. Self-loops, non-positive and
/// non-finite conductances are rejected at construction. Endpoints given
/// in either order are normalized so that tail < head, which fixes the
/// sign convention of every Flow on this network.
class Network {
public:
  Network() = default;
  Network(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const { return edges_; }

  /// (edge, other endpoint) pairs at v, in edge-id order.
  std::span<const Incidence> incident(VertexId v) const;

  std::size_t degree(VertexId v) const { return incident(v).size(); }
  /// Sum of conductances at v.
  double total_conductance(VertexId v) const;

  bool valid(VertexId v) const { return v < vertex_count_; }
  /// Throws ArgumentError if v is out of range.
  void check_vertex(VertexId v) const;

  /// Component label per vertex; labels are 0.. in order of first vertex.
  std::vector<std::size_t> component_labels() const;
  bool is_connected() const;

  /// Rebuilds the incidence index from the edge list and compares.
  bool incidence_consistent() const;

private:
  void build_incidence();

  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
};

/// Signed per-edge currents in amperes, relative to each edge's reference
/// orientation (tail -> head).
class Flow {
public:
  Flow() = default;
  explicit Flow(std::vector<double> currents) : currents_(std::move(currents)) {}
  static Flow zero(const Network& network) { return Flow(std::vector<double>(network.edge_count(), 0.0)); }

  std::size_t size() const { return currents_.size(); }
  double operator[](EdgeId e) const { return currents_[e]; }
  /// Current along e leaving `from`; negated when `from` is the head.
  double along(const Network& network, EdgeId e, VertexId from) const;
  std::span<const double> currents() const { return currents_; }

  Flow operator+(const Flow& other) const;
  Flow operator-(const Flow& other) const;
  Flow operator*(double scale) const;

private:
  std::vector<double> currents_;
};

/// Per-vertex voltage.
class Potential {
public:
  Potential() = default;
  explicit Potential(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](VertexId v) const { return values_[v]; }
  std::span<const double> values() const { return values_; }

  Potential shifted(double constant) const;

private:
  std::vector<double> values_;
};

/// Finitely supported map vertex -> injected current (amperes).
class SourceDistribution {
public:
  SourceDistribution() = default;
  SourceDistribution(std::initializer_list<std::pair<const VertexId, double>> entries) : entries_(entries) {}

  /// Accumulates strength at v.
  void add(VertexId v, double strength) { entries_[v] += strength; }
  double at(VertexId v) const;
  double total() const;
  bool empty() const { return entries_.empty(); }
  const std::map<VertexId, double>& entries() const { return entries_; }

  /// Dense vector of strengths over a network with `vertex_count` vertices.
  std::vector<double> dense(std::size_t vertex_count) const;

  SourceDistribution operator+(const SourceDistribution& other) const;

private:
  std::map<VertexId, double> entries_;
};

inline constexpr double kBalanceTolerance = 1e-12;

bool is_balanced(const SourceDistribution& sources);

/// Connected component of a network, with maps back to the parent.
struct Subnetwork {
  Network network;
  std::vector<VertexId> parent_vertex;  // sub vertex -> parent vertex
  std::vector<EdgeId> parent_edge;      // sub edge -> parent edge
  std::vector<VertexId> local_vertex;   // parent vertex -> sub vertex, or npos outside
  static constexpr VertexId npos = static_cast<VertexId>(-1);
};

/// The component containing `seed`, preserving vertex and edge order.
Subnetwork component_of(const Network& network, VertexId seed);

/// Net current leaving v.
double divergence(const Network& network, const Flow& flow, VertexId v);
std::vector<double> divergence(const Network& network, const Flow& flow);

/// Dissipated power: sum of current^2 / conductance.
double energy(const Network& network, const Flow& flow);

/// Ohm's law flow: conductance * (u(tail) - u(head)) per edge.
Flow potential_flow(const Network& network, const Potential& u);

/// Sum of conductance * (u(tail) - u(head))^2.
double dirichlet_energy(const Network& network, const Potential& u);

}  // namespace resnet

#endif
