#include "resnet/approximation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "resnet/errors.hpp"
#include "resnet/parallel.hpp"

namespace resnet {

VertexId Approximant::vertex(const Site& s) const {
  auto it = std::lower_bound(sites.begin(), sites.end(), s);
  if (it == sites.end() || *it != s) throw PreconditionError("site is outside the finite subset");
  return static_cast<VertexId>(it - sites.begin());
}

std::string Approximant::label(const LatticeSpec& lattice, VertexId v) const {
  if (infinity && v == *infinity) return "inf";
  return lattice.format_site(sites.at(v));
}

namespace {

VertexSubset normalized(const VertexSubset& subset) {
  if (subset.empty()) throw ArgumentError("vertex subset is empty");
  auto strictly_sorted = std::adjacent_find(subset.begin(), subset.end(),
                                            [](const Site& a, const Site& b) { return !(a < b); }) == subset.end();
  return strictly_sorted ? subset : make_subset(subset);
}

Approximant build(const LatticeSpec& lattice, const VertexSubset& subset, bool shorted) {
  Approximant out;
  out.sites = normalized(subset);
  for (const Site& s : out.sites) {
    if (!lattice.contains(s)) throw ArgumentError("site " + lattice.format_site(s) + " is not in " + lattice.name());
  }
  const std::size_t n = out.sites.size();
  std::vector<Edge> internal;
  std::vector<Edge> leaving;
  std::vector<LatticeNeighbor> nbrs;
  for (VertexId i = 0; i < n; ++i) {
    lattice.neighbors(out.sites[i], nbrs);
    for (const LatticeNeighbor& nb : nbrs) {
      auto it = std::lower_bound(out.sites.begin(), out.sites.end(), nb.site);
      if (it != out.sites.end() && *it == nb.site) {
        auto j = static_cast<VertexId>(it - out.sites.begin());
        if (i < j) internal.push_back({i, j, nb.conductance});
      } else if (shorted) {
        leaving.push_back({i, n, nb.conductance});
      }
    }
  }
  out.internal_edge_count = internal.size();
  if (shorted) {
    out.infinity = n;
    internal.insert(internal.end(), leaving.begin(), leaving.end());
  }
  out.network = Network(shorted ? n + 1 : n, std::move(internal));
  return out;
}

}  // namespace

CutResult cut_network(const LatticeSpec& lattice, const VertexSubset& subset) { return build(lattice, subset, false); }

ShortResult short_network(const LatticeSpec& lattice, const VertexSubset& subset, int fringe_radius) {
  if (fringe_radius < 1) throw ArgumentError("fringe_radius must be at least 1");
  return build(lattice, subset, true);
}

SwellingSequence::SwellingSequence(LatticeSpec lattice, std::vector<Site> centers, int first_radius)
    : lattice_(std::move(lattice)), centers_(std::move(centers)), first_radius_(first_radius) {
  if (centers_.empty()) throw ArgumentError("swelling sequence needs at least one center");
  if (first_radius_ < 0) throw ArgumentError("swelling sequence radius must be non-negative");
  for (const Site& c : centers_) {
    if (!lattice_.contains(c)) throw ArgumentError("center " + lattice_.format_site(c) + " not in " + lattice_.name());
  }
}

SwellingSequence SwellingSequence::around(const LatticeSpec& lattice, const Site& p, const Site& q, int first_radius) {
  return SwellingSequence(lattice, {p, q}, first_radius);
}

VertexSubset SwellingSequence::term(int radius) const {
  if (radius < first_radius_) throw ArgumentError("radius below the start of the swelling sequence");
  return ball(lattice_, centers_, radius);
}

namespace {

void check_terminals(const LatticeSpec& lattice, const Site& p, const Site& q, const VertexSubset& subset) {
  if (p == q) throw PreconditionError("terminals p and q must differ");
  for (const Site* s : {&p, &q}) {
    if (!subset_contains(subset, *s))
      throw PreconditionError("terminal " + lattice.format_site(*s) + " lies outside the subset");
  }
}

// Resistance between a and b, restricted to a's component; +inf if b is elsewhere.
double component_resistance(const Network& network, VertexId a, VertexId b, const SolveConfig& cfg) {
  if (network.is_connected()) return effective_resistance(network, a, b, cfg).resistance;
  Subnetwork sub = component_of(network, a);
  if (sub.local_vertex[b] == Subnetwork::npos) return std::numeric_limits<double>::infinity();
  return effective_resistance(sub.network, sub.local_vertex[a], sub.local_vertex[b], cfg).resistance;
}

}  // namespace

Bracket resistance_bracket(const LatticeSpec& lattice, const Site& p, const Site& q, const VertexSubset& subset,
                           const SolveConfig& cfg) {
  VertexSubset s = normalized(subset);
  check_terminals(lattice, p, q, s);
  CutResult cut = cut_network(lattice, s);
  ShortResult shorted = short_network(lattice, s);
  Bracket out;
  out.vertices = s.size();
  out.edges = cut.network.edge_count();
  out.short_resistance = component_resistance(shorted.network, shorted.vertex(p), shorted.vertex(q), cfg);
  out.cut_resistance = component_resistance(cut.network, cut.vertex(p), cut.vertex(q), cfg);
  out.cut_connected = std::isfinite(out.cut_resistance);
  return out;
}

std::vector<Bracket> bracket_table(const LatticeSpec& lattice, const Site& p, const Site& q,
                                   const SwellingSequence& seq, std::span<const int> radii, const SolveConfig& cfg) {
  std::vector<Bracket> out(radii.size());
  // Largest balls first so the slowest solves start early.
  std::vector<std::size_t> order(radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return radii[a] > radii[b]; });
  parallel_for(order.size(), [&](std::size_t k) {
    std::size_t i = order[k];
    out[i] = resistance_bracket(lattice, p, q, seq.term(radii[i]), cfg);
    out[i].radius = radii[i];
  });
  return out;
}

std::vector<std::string> bracket_violations(std::span<const Bracket> table, double slack) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Bracket& b = table[i];
    const std::string at = "radius " + std::to_string(b.radius) + ": ";
    if (b.short_resistance > b.cut_resistance + slack)
      out.push_back(at + "short_R " + format_double(b.short_resistance) + " exceeds cut_R " +
                    format_double(b.cut_resistance));
    if (i == 0) continue;
    const Bracket& prev = table[i - 1];
    if (b.cut_resistance > prev.cut_resistance + slack)
      out.push_back(at + "cut_R increased from " + format_double(prev.cut_resistance) + " to " +
                    format_double(b.cut_resistance));
    if (b.short_resistance < prev.short_resistance - slack)
      out.push_back(at + "short_R decreased from " + format_double(prev.short_resistance) + " to " +
                    format_double(b.short_resistance));
  }
  return out;
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_bracket_csv(std::ostream& out, std::span<const Bracket> table) {
  out << "radius,vertices,edges,short_R,cut_R,gap\n";
  for (const Bracket& b : table) {
    out << b.radius << ',' << b.vertices << ',' << b.edges << ',' << format_double(b.short_resistance) << ','
        << format_double(b.cut_resistance) << ',' << format_double(b.gap()) << '\n';
  }
}

namespace {

EstimateTable run_estimate(const LatticeSpec& lattice, const Site& p, const Site& q, const SwellingSequence& seq,
                           const StopRule& stop, const SolveConfig& cfg, bool shorted) {
  if (stop.max_radius < seq.first_radius()) throw ArgumentError("stop radius is below the first term");
  EstimateTable out;
  for (int r = seq.first_radius(); r <= stop.max_radius; ++r) {
    VertexSubset s = seq.term(r);
    check_terminals(lattice, p, q, s);
    Approximant net = shorted ? short_network(lattice, s) : cut_network(lattice, s);
    double value = component_resistance(net.network, net.vertex(p), net.vertex(q), cfg);
    out.rows.push_back({r, net.network.vertex_count(), net.network.edge_count(), value});
    if (stop.change_tolerance > 0.0 && out.rows.size() >= 2) {
      double change = std::abs(out.rows.back().value - out.rows[out.rows.size() - 2].value);
      if (change < stop.change_tolerance) break;
    }
  }
  return out;
}

}  // namespace

EstimateTable even_resistance_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                       const SwellingSequence& seq, const StopRule& stop, const SolveConfig& cfg) {
  return run_estimate(lattice, p, q, seq, stop, cfg, false);
}

EstimateTable odd_resistance_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                      const SwellingSequence& seq, const StopRule& stop, const SolveConfig& cfg) {
  return run_estimate(lattice, p, q, seq, stop, cfg, true);
}

std::string to_string(Trend trend) {
  switch (trend) {
    case Trend::diverging_linear:
      return "diverging-linear";
    case Trend::diverging_log:
      return "diverging-log";
    case Trend::plateau:
      return "plateau";
    case Trend::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

TrendFit fit_trend(std::span<const EstimateRow> rows) {
  TrendFit fit;
  std::vector<EstimateRow> usable;
  for (const EstimateRow& row : rows)
    if (row.radius >= 1) usable.push_back(row);
  if (usable.size() < 3) return fit;
  const std::size_t n = usable.size();
  // Three rows spanning the last half; ia < ib < ic for every n >= 3.
  const std::size_t ia = n >= 5 ? n / 2 : 0;
  const std::size_t ic = n - 1;
  const std::size_t ib = (ia + ic) / 2;
  const EstimateRow& a = usable[ia];
  const EstimateRow& b = usable[ib];
  const EstimateRow& c = usable[ic];
  if (!(a.radius < b.radius && b.radius < c.radius)) return fit;
  const double slope_ab = (b.value - a.value) / (b.radius - a.radius);
  const double slope_bc = (c.value - b.value) / (c.radius - b.radius);
  if (!(slope_ab > 0.0 && slope_bc > 0.0)) return fit;
  // Logarithmic means make alpha exact for R = c log r.
  auto log_mean = [](double x, double y) { return (y - x) / std::log(y / x); };
  const double m_ab = log_mean(a.radius, b.radius);
  const double m_bc = log_mean(b.radius, c.radius);
  const double alpha = std::log(slope_ab / slope_bc) / std::log(m_bc / m_ab);
  fit.growth_exponent = alpha;
  if (alpha < 0.5) {
    fit.trend = Trend::diverging_linear;
  } else if (alpha < 1.5) {
    fit.trend = Trend::diverging_log;
  } else {
    fit.trend = Trend::plateau;
    const double beta = alpha - 1.0;
    const double wb = std::pow(static_cast<double>(b.radius), -beta);
    const double wc = std::pow(static_cast<double>(c.radius), -beta);
    fit.limit = c.value + (c.value - b.value) * wc / (wb - wc);
  }
  return fit;
}

InfinityTable resistance_to_infinity(const LatticeSpec& lattice, const Site& p, const SwellingSequence& seq,
                                     std::span<const int> radii, const SolveConfig& cfg) {
  InfinityTable out;
  out.table.rows.resize(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    VertexSubset s = seq.term(radii[i]);
    if (!subset_contains(s, p))
      throw PreconditionError("site " + lattice.format_site(p) + " is outside the ball of radius " +
                              std::to_string(radii[i]));
    ShortResult net = short_network(lattice, s);
    // A subset covering a whole finite network leaves infinity isolated.
    double value = component_resistance(net.network, net.vertex(p), *net.infinity, cfg);
    out.table.rows[i] = {radii[i], net.network.vertex_count(), net.network.edge_count(), value};
  });
  out.fit = fit_trend(out.table.rows);
  return out;
}

void write_infinity_csv(std::ostream& out, const InfinityTable& result) {
  out << "radius,vertices,edges,R_inf\n";
  for (const EstimateRow& row : result.table.rows)
    out << row.radius << ',' << row.vertices << ',' << row.edges << ',' << format_double(row.value) << '\n';
}

std::vector<int> parse_radius_list(std::string_view text) {
  auto parse_int = [&](std::string_view field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || value < 0)
      throw ArgumentError("bad radius '" + std::string(field) + "' in '" + std::string(text) + "'");
    return value;
  };
  std::vector<int> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    if (auto dots = item.find(".."); dots != std::string_view::npos) {
      int lo = parse_int(item.substr(0, dots));
      int hi = parse_int(item.substr(dots + 2));
      if (hi < lo) throw ArgumentError("empty radius range '" + std::string(item) + "'");
      for (int r = lo; r <= hi; ++r) out.push_back(r);
    } else {
      out.push_back(parse_int(item));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ArgumentError("empty radius list");
  return out;
}

}  // namespace resnet
