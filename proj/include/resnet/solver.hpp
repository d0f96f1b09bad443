#ifndef RESNET_SOLVER_HPP
#define RESNET_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "resnet/network.hpp"

namespace resnet {

enum class Preconditioner { none, diagonal };

struct SolveConfig {
  /// Stop when ||b - A x||_2 <= residual_tolerance * ||b||_2 on the grounded system.
  double residual_tolerance = 1e-10;
  /// Defaults to 20 * vertex_count when unset.
  std::optional<std::size_t> max_iterations;
  Preconditioner preconditioner = Preconditioner::diagonal;

  void validate() const;
  std::size_t iteration_limit(std::size_t vertex_count) const;
};

struct PotentialSolution {
  Potential potential;
  std::size_t iterations = 0;
  double residual = 0.0;  // relative, as in SolveConfig
};

/// Solves Kirchhoff's equations L u = sources with u(ground) = 0 by
/// preconditioned conjugate gradients on the grounded Laplacian. The
/// Laplacian is applied matrix-free from the incidence lists.
///
/// Throws PreconditionError for a disconnected network or unbalanced
/// sources, ArgumentError for a bad ground, ConvergenceError when the
/// iteration budget runs out.
PotentialSolution solve_kirchhoff(const Network& network, const SourceDistribution& sources, VertexId ground,
                                  const SolveConfig& cfg = {});

Potential solve_potential(const Network& network, const SourceDistribution& sources, VertexId ground,
                          const SolveConfig& cfg = {});

struct ResistanceReport {
  VertexId p = 0;
  VertexId q = 0;
  double resistance = 0.0;
  Flow flow;
  Potential potential;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Unit current in at p, out at q, grounded at q.
ResistanceReport effective_resistance(const Network& network, VertexId p, VertexId q, const SolveConfig& cfg = {});

Flow unit_current_flow(const Network& network, VertexId p, VertexId q, const SolveConfig& cfg = {});

/// Effective resistance across every edge, in edge order. Edges are solved
/// independently (in parallel).
std::vector<double> edge_resistances(const Network& network, const SolveConfig& cfg = {});

/// Mean effective resistance across the edges. For unit conductances this
/// is (n - 1) / e.
double foster_average(const Network& network, const SolveConfig& cfg = {});

/// (n - 1) / e.
double foster_formula(const Network& network);

inline constexpr std::size_t kSpanningTreeVertexLimit = 12;

struct SpanningTreeCounts {
  double total = 0;                 // number of spanning trees
  std::vector<double> containing;  // per edge: trees containing it
};

/// Exhaustive enumeration by recursive edge inclusion/exclusion. Include
/// is pruned by a union-find cycle check, exclude by checking that the
/// remaining edges still span. Conductances are ignored (trees are
/// counted, not weighted). Throws CapacityError above the vertex limit.
SpanningTreeCounts count_spanning_trees(const Network& network);

/// Fraction of spanning trees that contain `edge`.
double spanning_tree_edge_probability(const Network& network, EdgeId edge);
std::vector<double> spanning_tree_edge_probabilities(const Network& network);

}  // namespace resnet

#endif
