#ifndef RESNET_FLOWS_HPP
#define RESNET_FLOWS_HPP

#include <iosfwd>
#include <map>
#include <vector>

#include "resnet/approximation.hpp"

namespace resnet {

/// Source strengths keyed by lattice site.
using SiteSources = std::map<Site, double>;

/// A Kirchhoff flow together with the finite network it lives on.
struct LatticeFlow {
  Approximant net;
  Flow flow;
};

/// Kirchhoff flow for balanced `sources` in cut_network(S): the finite
/// stand-in for the flow with an insulated boundary at infinity.
/// Throws PreconditionError for unbalanced sources, support outside S, or
/// support split across components of the cut network.
LatticeFlow even_flow(const LatticeSpec& lattice, const SiteSources& sources, const VertexSubset& subset,
                      const SolveConfig& cfg = {});

/// Kirchhoff flow for `sources` in short_network(S). Unbalanced sources
/// are accepted: the shorted exterior absorbs the net imbalance.
LatticeFlow odd_flow(const LatticeSpec& lattice, const SiteSources& sources, const VertexSubset& subset,
                     const SolveConfig& cfg = {});

/// Unit flows from p to q on the cut and short networks of one subset.
struct FlowPair {
  int radius = -1;
  LatticeFlow even;
  LatticeFlow odd;
  /// Edges [0, common_edges) are the same lattice edges in both networks.
  std::size_t common_edges = 0;
};

FlowPair flow_pair(const LatticeSpec& lattice, const Site& p, const Site& q, const VertexSubset& subset,
                   const SolveConfig& cfg = {});

/// Finite-radius estimator of the ghost flow: even minus odd unit flow on
/// the edges internal to S. The true ghost flow is the limit of this as S
/// swells; at finite radius ghost_energy only approximates even_R - odd_R.
struct GhostEstimate {
  int radius = -1;
  Flow ghost;
  double ghost_energy = 0.0;
  double even_resistance = 0.0;
  double odd_resistance = 0.0;
};

GhostEstimate ghost_flow_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                  const VertexSubset& subset, const SolveConfig& cfg = {});

/// dirichlet_energy(u) - (u(p) - u(q)). Minimized by half the unit-current
/// potential, where it equals -R/4.
double ghost_objective(const Network& network, const Potential& u, VertexId p, VertexId q);

/// One step of a closed edge walk: traverse `edge` starting at `from`.
struct CycleStep {
  EdgeId edge = 0;
  VertexId from = 0;
};

using Cycle = std::vector<CycleStep>;

/// Unit circulation around `cycle` as a Flow. Throws ArgumentError unless
/// the steps chain head to tail and close up.
Flow cycle_flow(const Network& network, const Cycle& cycle);

/// energy(flow + epsilon * cycle) - energy(flow), evaluated as
/// sum (2 f d + d^2) / c over the touched edges to avoid cancellation.
double cycle_perturbation_check(const Network& network, const Flow& flow, const Cycle& cycle, double epsilon);

/// d/d epsilon of the energy at epsilon = 0: 2 sum f s / c. Zero for a
/// Kirchhoff flow (voltage law around the cycle).
double cycle_first_order(const Network& network, const Flow& flow, const Cycle& cycle);

/// sum over the cycle of 1/c: the second-order coefficient.
double cycle_second_order(const Network& network, const Cycle& cycle);

/// Fundamental cycles of the breadth-first spanning forest rooted at the
/// lowest vertex of each component, one per non-tree edge in edge order.
std::vector<Cycle> fundamental_cycles(const Network& network);

/// CSV with header from,to,conductance,current; endpoints as lattice
/// coordinates ("inf" for the shorted vertex).
void write_flow_csv(std::ostream& out, const LatticeSpec& lattice, const LatticeFlow& flow);

}  // namespace resnet

#endif
