#include "resnet/flows.hpp"

#include <cmath>
#include <deque>
#include <ostream>

#include "resnet/errors.hpp"

namespace resnet {

namespace {

SourceDistribution to_vertices(const LatticeSpec& lattice, const Approximant& net, const SiteSources& sources) {
  SourceDistribution out;
  for (const auto& [site, strength] : sources) {
    if (!net.has(site))
      throw PreconditionError("source at " + lattice.format_site(site) + " lies outside the subset");
    out.add(net.vertex(site), strength);
  }
  return out;
}

// Solves on the component holding the support and scatters back; edges of
// other components carry no current.
Flow kirchhoff_flow(const LatticeSpec& lattice, const Approximant& net, const SourceDistribution& sources,
                    VertexId ground, const SolveConfig& cfg) {
  if (net.network.is_connected())
    return potential_flow(net.network, solve_potential(net.network, sources, ground, cfg));
  Subnetwork sub = component_of(net.network, ground);
  SourceDistribution local;
  for (const auto& [v, s] : sources.entries()) {
    if (s == 0.0) continue;
    if (sub.local_vertex[v] == Subnetwork::npos) {
      throw PreconditionError("sources are split across components: " + net.label(lattice, v) +
                              " is disconnected from " + net.label(lattice, ground));
    }
    local.add(sub.local_vertex[v], s);
  }
  Flow partial = potential_flow(sub.network, solve_potential(sub.network, local, sub.local_vertex[ground], cfg));
  std::vector<double> currents(net.network.edge_count(), 0.0);
  for (EdgeId e = 0; e < sub.parent_edge.size(); ++e) currents[sub.parent_edge[e]] = partial[e];
  return Flow(std::move(currents));
}

}  // namespace

LatticeFlow even_flow(const LatticeSpec& lattice, const SiteSources& sources, const VertexSubset& subset,
                      const SolveConfig& cfg) {
  LatticeFlow out{cut_network(lattice, subset), {}};
  SourceDistribution s = to_vertices(lattice, out.net, sources);
  if (!is_balanced(s)) throw PreconditionError("even flows need balanced sources");
  if (s.empty()) {
    out.flow = Flow::zero(out.net.network);
    return out;
  }
  out.flow = kirchhoff_flow(lattice, out.net, s, s.entries().begin()->first, cfg);
  return out;
}

LatticeFlow odd_flow(const LatticeSpec& lattice, const SiteSources& sources, const VertexSubset& subset,
                     const SolveConfig& cfg) {
  LatticeFlow out{short_network(lattice, subset), {}};
  SourceDistribution s = to_vertices(lattice, out.net, sources);
  const VertexId infinity = *out.net.infinity;
  VertexId ground = infinity;
  if (!is_balanced(s)) {
    s.add(infinity, -s.total());
  } else if (!s.empty()) {
    ground = s.entries().begin()->first;
  }
  out.flow = kirchhoff_flow(lattice, out.net, s, ground, cfg);
  return out;
}

FlowPair flow_pair(const LatticeSpec& lattice, const Site& p, const Site& q, const VertexSubset& subset,
                   const SolveConfig& cfg) {
  if (p == q) throw PreconditionError("terminals p and q must differ");
  SiteSources unit{{p, 1.0}, {q, -1.0}};
  FlowPair out;
  out.even = even_flow(lattice, unit, subset, cfg);
  out.odd = odd_flow(lattice, unit, subset, cfg);
  out.common_edges = out.even.net.internal_edge_count;
  return out;
}

GhostEstimate ghost_flow_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                  const VertexSubset& subset, const SolveConfig& cfg) {
  FlowPair pair = flow_pair(lattice, p, q, subset, cfg);
  const Network& cut = pair.even.net.network;
  std::vector<double> ghost(pair.common_edges);
  GhostEstimate out;
  for (EdgeId e = 0; e < pair.common_edges; ++e) {
    ghost[e] = pair.even.flow[e] - pair.odd.flow[e];
    out.ghost_energy += ghost[e] * ghost[e] / cut.edge(e).conductance;
  }
  out.ghost = Flow(std::move(ghost));
  // Unit flows dissipate exactly their resistance.
  out.even_resistance = energy(cut, pair.even.flow);
  out.odd_resistance = energy(pair.odd.net.network, pair.odd.flow);
  return out;
}

double ghost_objective(const Network& network, const Potential& u, VertexId p, VertexId q) {
  network.check_vertex(p);
  network.check_vertex(q);
  return dirichlet_energy(network, u) - (u[p] - u[q]);
}

Flow cycle_flow(const Network& network, const Cycle& cycle) {
  if (cycle.empty()) throw ArgumentError("cycle has no edges");
  std::vector<double> currents(network.edge_count(), 0.0);
  VertexId start = cycle.front().from;
  VertexId at = start;
  for (const CycleStep& step : cycle) {
    if (step.edge >= network.edge_count()) throw ArgumentError("cycle references an unknown edge");
    const Edge& edge = network.edge(step.edge);
    if (step.from != at) throw ArgumentError("cycle steps do not chain: expected a step leaving vertex " +
                                             std::to_string(at));
    if (step.from == edge.tail) {
      currents[step.edge] += 1.0;
      at = edge.head;
    } else if (step.from == edge.head) {
      currents[step.edge] -= 1.0;
      at = edge.tail;
    } else {
      throw ArgumentError("cycle step starts at a vertex that is not an endpoint of its edge");
    }
  }
  if (at != start) throw ArgumentError("edge chain is open: it ends at " + std::to_string(at) +
                                       " instead of " + std::to_string(start));
  return Flow(std::move(currents));
}

double cycle_perturbation_check(const Network& network, const Flow& flow, const Cycle& cycle, double epsilon) {
  if (flow.size() != network.edge_count()) throw ArgumentError("flow does not match network");
  Flow circulation = cycle_flow(network, cycle);
  double delta = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    const double d = epsilon * circulation[e];
    if (d == 0.0) continue;
    delta += (2.0 * flow[e] * d + d * d) / network.edge(e).conductance;
  }
  return delta;
}

double cycle_first_order(const Network& network, const Flow& flow, const Cycle& cycle) {
  if (flow.size() != network.edge_count()) throw ArgumentError("flow does not match network");
  Flow circulation = cycle_flow(network, cycle);
  double sum = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e)
    sum += 2.0 * flow[e] * circulation[e] / network.edge(e).conductance;
  return sum;
}

double cycle_second_order(const Network& network, const Cycle& cycle) {
  Flow circulation = cycle_flow(network, cycle);
  double sum = 0.0;
  for (EdgeId e = 0; e < network.edge_count(); ++e)
    sum += circulation[e] * circulation[e] / network.edge(e).conductance;
  return sum;
}

std::vector<Cycle> fundamental_cycles(const Network& network) {
  const std::size_t n = network.vertex_count();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<EdgeId> parent_edge(n, none);
  std::vector<VertexId> parent(n, none);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree_edge(network.edge_count(), false);
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (const Incidence& inc : network.incident(v)) {
        if (seen[inc.other]) continue;
        seen[inc.other] = true;
        parent[inc.other] = v;
        parent_edge[inc.other] = inc.edge;
        depth[inc.other] = depth[v] + 1;
        tree_edge[inc.edge] = true;
        queue.push_back(inc.other);
      }
    }
  }

  std::vector<Cycle> out;
  for (EdgeId e = 0; e < network.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    // Walk tail -> head along e, then head back up to tail through the tree.
    const Edge& edge = network.edge(e);
    std::vector<CycleStep> up_from_head;  // head ... lca, forward steps
    std::vector<CycleStep> up_from_tail;  // tail ... lca, forward steps
    VertexId a = edge.head, b = edge.tail;
    while (depth[a] > depth[b]) {
      up_from_head.push_back({parent_edge[a], a});
      a = parent[a];
    }
    while (depth[b] > depth[a]) {
      up_from_tail.push_back({parent_edge[b], b});
      b = parent[b];
    }
    while (a != b) {
      up_from_head.push_back({parent_edge[a], a});
      a = parent[a];
      up_from_tail.push_back({parent_edge[b], b});
      b = parent[b];
    }
    Cycle cycle{{e, edge.tail}};
    cycle.insert(cycle.end(), up_from_head.begin(), up_from_head.end());
    // Descend from the common ancestor back to tail: reverse the tail climb.
    for (auto it = up_from_tail.rbegin(); it != up_from_tail.rend(); ++it) {
      const Edge& tree = network.edge(it->edge);
      VertexId upper = tree.tail == it->from ? tree.head : tree.tail;
      cycle.push_back({it->edge, upper});
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

void write_flow_csv(std::ostream& out, const LatticeSpec& lattice, const LatticeFlow& flow) {
  out << "from,to,conductance,current\n";
  const Network& net = flow.net.network;
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(e);
    out << '"' << flow.net.label(lattice, edge.tail) << "\",\"" << flow.net.label(lattice, edge.head) << "\","
        << format_double(edge.conductance) << ',' << format_double(flow.flow[e]) << '\n';
  }
}

}  // namespace resnet
