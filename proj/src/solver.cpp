#include "resnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "resnet/errors.hpp"
#include "resnet/parallel.hpp"

namespace resnet {

void SolveConfig::validate() const {
  if (!(residual_tolerance > 0.0 && residual_tolerance < 1.0))
    throw ArgumentError("residual_tolerance must lie in (0, 1)");
  if (max_iterations && *max_iterations < 1) throw ArgumentError("max_iterations must be at least 1");
}

std::size_t SolveConfig::iteration_limit(std::size_t vertex_count) const {
  return max_iterations.value_or(std::max<std::size_t>(1, 20 * vertex_count));
}

namespace {

void require_connected(const Network& network, VertexId ground) {
  auto labels = network.component_labels();
  std::size_t home = labels[ground];
  for (VertexId v = 0; v < network.vertex_count(); ++v) {
    if (labels[v] == home) continue;
    std::size_t size = std::count(labels.begin(), labels.end(), labels[v]);
    throw PreconditionError("network is disconnected: vertex " + std::to_string(v) + " lies in a component of " +
                            std::to_string(size) + " vertices stranded from ground vertex " +
                            std::to_string(ground));
  }
}

// y = L x on the grounded system: x[ground] is treated as 0 and y[ground] = 0.
void apply_grounded(const Network& network, VertexId ground, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t n = network.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    if (v == ground) {
      y[v] = 0.0;
      continue;
    }
    double acc = 0.0;
    const double xv = x[v];
    for (const Incidence& inc : network.incident(v)) {
      double xw = inc.other == ground ? 0.0 : x[inc.other];
      acc += network.edge(inc.edge).conductance * (xv - xw);
    }
    y[v] = acc;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

PotentialSolution solve_kirchhoff(const Network& network, const SourceDistribution& sources, VertexId ground,
                                  const SolveConfig& cfg) {
  cfg.validate();
  network.check_vertex(ground);
  if (!is_balanced(sources))
    throw PreconditionError("sources are not balanced (total " + std::to_string(sources.total()) + " A)");
  require_connected(network, ground);

  const std::size_t n = network.vertex_count();
  std::vector<double> b = sources.dense(n);
  b[ground] = 0.0;
  const double b_norm = std::sqrt(dot(b, b));

  PotentialSolution out;
  std::vector<double> x(n, 0.0);
  if (b_norm == 0.0) {
    out.potential = Potential(std::move(x));
    return out;
  }

  std::vector<double> inv_diag(n, 1.0);
  if (cfg.preconditioner == Preconditioner::diagonal) {
    for (VertexId v = 0; v < n; ++v) inv_diag[v] = v == ground ? 0.0 : 1.0 / network.total_conductance(v);
  } else {
    inv_diag[ground] = 0.0;
  }

  std::vector<double> r = b;
  std::vector<double> z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  double rel = 1.0;
  const std::size_t limit = cfg.iteration_limit(n);
  std::size_t it = 0;
  while (true) {
    if (rel <= cfg.residual_tolerance) break;
    if (it >= limit) {
      std::ostringstream msg;
      msg << "conjugate gradient did not reach relative residual " << cfg.residual_tolerance << " within " << limit
          << " iterations (last " << rel << ")";
      throw ConvergenceError(msg.str(), rel, it);
    }
    ++it;
    apply_grounded(network, ground, p, ap);
    const double alpha = rz / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    rel = std::sqrt(dot(r, r)) / b_norm;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  // Recompute the true residual; the recurrence drifts on long solves.
  apply_grounded(network, ground, x, ap);
  double true_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) true_sq += (b[i] - ap[i]) * (b[i] - ap[i]);
  x[ground] = 0.0;
  out.potential = Potential(std::move(x));
  out.iterations = it;
  out.residual = std::sqrt(true_sq) / b_norm;
  return out;
}

Potential solve_potential(const Network& network, const SourceDistribution& sources, VertexId ground,
                          const SolveConfig& cfg) {
  return solve_kirchhoff(network, sources, ground, cfg).potential;
}

ResistanceReport effective_resistance(const Network& network, VertexId p, VertexId q, const SolveConfig& cfg) {
  network.check_vertex(p);
  network.check_vertex(q);
  if (p == q) throw ArgumentError("effective resistance needs distinct terminals");
  SourceDistribution unit{{p, 1.0}, {q, -1.0}};
  PotentialSolution sol = solve_kirchhoff(network, unit, q, cfg);
  ResistanceReport report;
  report.p = p;
  report.q = q;
  report.resistance = sol.potential[p] - sol.potential[q];
  report.flow = potential_flow(network, sol.potential);
  report.potential = std::move(sol.potential);
  report.iterations = sol.iterations;
  report.residual = sol.residual;
  return report;
}

Flow unit_current_flow(const Network& network, VertexId p, VertexId q, const SolveConfig& cfg) {
  return effective_resistance(network, p, q, cfg).flow;
}

std::vector<double> edge_resistances(const Network& network, const SolveConfig& cfg) {
  if (network.edge_count() == 0) return {};
  // Surface connectivity errors once rather than from every worker.
  require_connected(network, 0);
  std::vector<double> out(network.edge_count());
  parallel_for(network.edge_count(), [&](std::size_t e) {
    const Edge& edge = network.edge(e);
    out[e] = effective_resistance(network, edge.tail, edge.head, cfg).resistance;
  });
  return out;
}

double foster_average(const Network& network, const SolveConfig& cfg) {
  if (network.edge_count() == 0) throw ArgumentError("foster average needs at least one edge");
  auto rs = edge_resistances(network, cfg);
  return std::accumulate(rs.begin(), rs.end(), 0.0) / static_cast<double>(rs.size());
}

double foster_formula(const Network& network) {
  if (network.edge_count() == 0) throw ArgumentError("foster formula needs at least one edge");
  return static_cast<double>(network.vertex_count() - 1) / static_cast<double>(network.edge_count());
}

}  // namespace resnet
