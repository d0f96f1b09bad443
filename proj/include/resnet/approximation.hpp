#ifndef RESNET_APPROXIMATION_HPP
#define RESNET_APPROXIMATION_HPP

#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resnet/lattice.hpp"
#include "resnet/network.hpp"
#include "resnet/solver.hpp"

namespace resnet {

/// Finite network built from a lattice subset S. Vertex i is sites[i].
///
/// Edges [0, internal_edge_count) join two sites of S and appear in the
/// same order in the cut and short networks of the same S, so edge ids in
/// that range correspond one to one. Short networks append one edge to
/// `infinity` per lattice edge leaving S.
struct Approximant {
  Network network;
  VertexSubset sites;
  std::optional<VertexId> infinity;
  std::size_t internal_edge_count = 0;

  bool has(const Site& s) const { return subset_contains(sites, s); }
  /// Vertex id of s; throws PreconditionError when s is outside S.
  VertexId vertex(const Site& s) const;
  /// Site label for vertex v ("inf" for the shorted vertex).
  std::string label(const LatticeSpec& lattice, VertexId v) const;
};

using CutResult = Approximant;
using ShortResult = Approximant;

/// Keeps S and the lattice edges with both ends in S.
CutResult cut_network(const LatticeSpec& lattice, const VertexSubset& subset);

/// Identifies every vertex outside S with one new vertex. Edges leaving S
/// become distinct parallel edges to that vertex; edges outside S are
/// dropped. `fringe_radius` bounds how far outside S edges are searched;
/// every lattice here has nearest-neighbor edges, so 1 is exact.
ShortResult short_network(const LatticeSpec& lattice, const VertexSubset& subset, int fringe_radius = 1);

/// Nested balls around fixed centers, indexed by radius.
class SwellingSequence {
public:
  SwellingSequence(LatticeSpec lattice, std::vector<Site> centers, int first_radius = 0);
  /// Balls around the pair {p, q}, which are symmetric about their midpoint.
  static SwellingSequence around(const LatticeSpec& lattice, const Site& p, const Site& q, int first_radius = 0);

  VertexSubset term(int radius) const;
  int first_radius() const { return first_radius_; }
  const LatticeSpec& lattice() const { return lattice_; }
  std::span<const Site> centers() const { return centers_; }

private:
  LatticeSpec lattice_;
  std::vector<Site> centers_;
  int first_radius_;
};

struct Bracket {
  int radius = -1;
  std::size_t vertices = 0;  // |S|
  std::size_t edges = 0;     // edges of the cut network
  double short_resistance = 0.0;
  /// +infinity when cutting separates p from q.
  double cut_resistance = 0.0;
  bool cut_connected = true;

  double gap() const { return cut_resistance - short_resistance; }
};

inline constexpr double kBracketSlack = 1e-8;

/// Resistance between p and q in short_network(S) and cut_network(S).
/// Throws PreconditionError if p or q is outside S or p == q.
Bracket resistance_bracket(const LatticeSpec& lattice, const Site& p, const Site& q, const VertexSubset& subset,
                           const SolveConfig& cfg = {});

/// One bracket per radius of `seq`, in the order given. Radii are solved
/// concurrently.
std::vector<Bracket> bracket_table(const LatticeSpec& lattice, const Site& p, const Site& q,
                                   const SwellingSequence& seq, std::span<const int> radii,
                                   const SolveConfig& cfg = {});

/// Ordering (short <= cut) and monotonicity (cut nonincreasing, short
/// nondecreasing in table order) violations beyond `slack`, one message each.
std::vector<std::string> bracket_violations(std::span<const Bracket> table, double slack = kBracketSlack);

/// CSV with header radius,vertices,edges,short_R,cut_R,gap. Values use
/// round-trip precision; a disconnected cut prints "inf".
void write_bracket_csv(std::ostream& out, std::span<const Bracket> table);

struct StopRule {
  int max_radius = 10;
  /// Stop early once consecutive values change by less than this (0 disables).
  double change_tolerance = 0.0;
};

struct EstimateRow {
  int radius = 0;
  std::size_t vertices = 0;  // of the network the value was measured on
  std::size_t edges = 0;
  double value = 0.0;
};

struct EstimateTable {
  std::vector<EstimateRow> rows;
  double final_value() const { return rows.empty() ? std::numeric_limits<double>::quiet_NaN() : rows.back().value; }
};

/// Cut-network resistances from seq.first_radius() up to the stop rule.
/// These are upper bounds that decrease toward the even resistance.
EstimateTable even_resistance_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                       const SwellingSequence& seq, const StopRule& stop, const SolveConfig& cfg = {});

/// Short-network resistances; lower bounds increasing toward the odd resistance.
EstimateTable odd_resistance_estimate(const LatticeSpec& lattice, const Site& p, const Site& q,
                                      const SwellingSequence& seq, const StopRule& stop, const SolveConfig& cfg = {});

enum class Trend { diverging_linear, diverging_log, plateau, indeterminate };

std::string to_string(Trend trend);

/// Descriptive fit of how a nondecreasing sequence R(r) grows.
///
/// The growth exponent alpha is read off the decay of the increments,
/// dR/dr ~ r^-alpha, using secant slopes over the last half of the table:
/// alpha near 0 is linear growth, near 1 logarithmic growth, and 2 or more
/// a convergent sequence R(r) ~ L - a r^(1 - alpha). For a plateau the
/// limit L is extrapolated from the last two rows with that exponent.
struct TrendFit {
  Trend trend = Trend::indeterminate;
  double growth_exponent = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> limit;
};

TrendFit fit_trend(std::span<const EstimateRow> rows);

struct InfinityTable {
  EstimateTable table;
  TrendFit fit;
};

/// Resistance from p to the shorted exterior of each ball in `radii`.
InfinityTable resistance_to_infinity(const LatticeSpec& lattice, const Site& p, const SwellingSequence& seq,
                                     std::span<const int> radii, const SolveConfig& cfg = {});

/// CSV with header radius,vertices,edges,R_inf; one row per radius.
void write_infinity_csv(std::ostream& out, const InfinityTable& result);

/// Parses "a..b" or comma lists of integers ("2,4,8") into radii.
std::vector<int> parse_radius_list(std::string_view text);

/// Round-trip decimal for CSV output.
std::string format_double(double value);

}  // namespace resnet

#endif
