#include "resnet/network.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "resnet/errors.hpp"

namespace resnet {

Network::Network(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    Edge& edge = edges_[e];
    if (edge.tail >= vertex_count_ || edge.head >= vertex_count_) {
      throw ArgumentError("edge " + std::to_string(e) + " references a vertex outside 0.." +
                          std::to_string(vertex_count_));
    }
    if (edge.tail == edge.head) {
      throw ArgumentError("edge " + std::to_string(e) + " is a self-loop at vertex " + std::to_string(edge.tail));
    }
    if (!(edge.conductance > 0.0) || !std::isfinite(edge.conductance)) {
      throw ArgumentError("edge " + std::to_string(e) + " has non-positive or non-finite conductance");
    }
    if (edge.tail > edge.head) std::swap(edge.tail, edge.head);
  }
  build_incidence();
}

void Network::build_incidence() {
  std::vector<std::size_t> counts(vertex_count_ + 1, 0);
  for (const Edge& edge : edges_) {
    ++counts[edge.tail + 1];
    ++counts[edge.head + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  offsets_ = counts;
  incidence_.assign(2 * edges_.size(), Incidence{0, 0});
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    incidence_[cursor[edges_[e].tail]++] = {e, edges_[e].head};
    incidence_[cursor[edges_[e].head]++] = {e, edges_[e].tail};
  }
}

std::span<const Incidence> Network::incident(VertexId v) const {
  check_vertex(v);
  return std::span<const Incidence>(incidence_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

double Network::total_conductance(VertexId v) const {
  double sum = 0.0;
  for (const Incidence& inc : incident(v)) sum += edges_[inc.edge].conductance;
  return sum;
}

void Network::check_vertex(VertexId v) const {
  if (!valid(v)) {
    throw ArgumentError("vertex id " + std::to_string(v) + " out of range for network with " +
                        std::to_string(vertex_count_) + " vertices");
  }
}

std::vector<std::size_t> Network::component_labels() const {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(vertex_count_, unset);
  std::vector<VertexId> stack;
  std::size_t next = 0;
  for (VertexId root = 0; root < vertex_count_; ++root) {
    if (label[root] != unset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : incident(v)) {
        if (label[inc.other] == unset) {
          label[inc.other] = next;
          stack.push_back(inc.other);
        }
      }
    }
    ++next;
  }
  return label;
}

bool Network::is_connected() const {
  if (vertex_count_ <= 1) return true;
  auto labels = component_labels();
  for (std::size_t l : labels)
    if (l != 0) return false;
  return true;
}

bool Network::incidence_consistent() const {
  Network rebuilt;
  rebuilt.vertex_count_ = vertex_count_;
  rebuilt.edges_ = edges_;
  rebuilt.build_incidence();
  if (rebuilt.offsets_ != offsets_ || rebuilt.incidence_.size() != incidence_.size()) return false;
  for (std::size_t i = 0; i < incidence_.size(); ++i) {
    if (rebuilt.incidence_[i].edge != incidence_[i].edge || rebuilt.incidence_[i].other != incidence_[i].other)
      return false;
  }
  return true;
}

Subnetwork component_of(const Network& network, VertexId seed) {
  network.check_vertex(seed);
  auto labels = network.component_labels();
  Subnetwork sub;
  sub.local_vertex.assign(network.vertex_count(), Subnetwork::npos);
  for (VertexId v = 0; v < network.vertex_count(); ++v) {
    if (labels[v] != labels[seed]) continue;
    sub.local_vertex[v] = sub.parent_vertex.size();
    sub.parent_vertex.push_back(v);
  }
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    if (labels[edge.tail] != labels[seed]) continue;
    edges.push_back({sub.local_vertex[edge.tail], sub.local_vertex[edge.head], edge.conductance});
    sub.parent_edge.push_back(e);
  }
  sub.network = Network(sub.parent_vertex.size(), std::move(edges));
  return sub;
}

double Flow::along(const Network& network, EdgeId e, VertexId from) const {
  const Edge& edge = network.edge(e);
  if (from == edge.tail) return currents_.at(e);
  if (from == edge.head) return -currents_.at(e);
  throw ArgumentError("vertex " + std::to_string(from) + " is not an endpoint of edge " + std::to_string(e));
}

Flow Flow::operator+(const Flow& other) const {
  if (other.size() != size()) throw ArgumentError("flow size mismatch");
  std::vector<double> out(currents_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.currents_[i];
  return Flow(std::move(out));
}

Flow Flow::operator-(const Flow& other) const { return *this + other * -1.0; }

Flow Flow::operator*(double scale) const {
  std::vector<double> out(currents_);
  for (double& c : out) c *= scale;
  return Flow(std::move(out));
}

Potential Potential::shifted(double constant) const {
  std::vector<double> out(values_);
  for (double& v : out) v += constant;
  return Potential(std::move(out));
}

double SourceDistribution::at(VertexId v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? 0.0 : it->second;
}

double SourceDistribution::total() const {
  double sum = 0.0;
  for (const auto& [v, s] : entries_) sum += s;
  return sum;
}

std::vector<double> SourceDistribution::dense(std::size_t vertex_count) const {
  std::vector<double> out(vertex_count, 0.0);
  for (const auto& [v, s] : entries_) {
    if (v >= vertex_count) throw ArgumentError("source at vertex " + std::to_string(v) + " outside the network");
    out[v] = s;
  }
  return out;
}

SourceDistribution SourceDistribution::operator+(const SourceDistribution& other) const {
  SourceDistribution out = *this;
  for (const auto& [v, s] : other.entries_) out.add(v, s);
  return out;
}

bool is_balanced(const SourceDistribution& sources) { return std::abs(sources.total()) <= kBalanceTolerance; }

namespace {
void check_flow_shape(const Network& network, const Flow& flow) {
  if (flow.size() != network.edge_count()) {
    throw ArgumentError("flow has " + std::to_string(flow.size()) + " entries, network has " +
                        std::to_string(network.edge_count()) + " edges");
  }
}
void check_potential_shape(const Network& network, const Potential& u) {
  if (u.size() != network.vertex_count()) {
    throw ArgumentError("potential has " + std::to_string(u.size()) + " entries, network has " +
                        std::to_string(network.vertex_count()) + " vertices");
  }
}
}  // namespace

double divergence(const Network& network, const Flow& flow, VertexId v) {
  check_flow_shape(network, flow);
  double out = 0.0;
  for (const Incidence& inc : network.incident(v)) out += flow.along(network, inc.edge, v);
  return out;
}

std::vector<double> divergence(const Network& network, const Flow& flow) {
  check_flow_shape(network, flow);
  std::vector<double> out(network.vertex_count(), 0.0);
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    out[network.edge(e).tail] += flow[e];
    out[network.edge(e).head] -= flow[e];
  }
  return out;
}

double energy(const Network& network, const Flow& flow) {
  check_flow_shape(network, flow);
  double sum = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e) sum += flow[e] * flow[e] / network.edge(e).conductance;
  return sum;
}

Flow potential_flow(const Network& network, const Potential& u) {
  check_potential_shape(network, u);
  std::vector<double> currents(network.edge_count());
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    const Edge& edge = network.edge(e);
    currents[e] = edge.conductance * (u[edge.tail] - u[edge.head]);
  }
  return Flow(std::move(currents));
}

double dirichlet_energy(const Network& network, const Potential& u) {
  check_potential_shape(network, u);
  double sum = 0.0;
  for (const Edge& edge : network.edges()) {
    double drop = u[edge.tail] - u[edge.head];
    sum += edge.conductance * drop * drop;
  }
  return sum;
}

}  // namespace resnet
