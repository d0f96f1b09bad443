#ifndef RESNET_LATTICE_HPP
#define RESNET_LATTICE_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resnet/network.hpp"

namespace resnet {

/// A vertex of an infinite lattice: integer coordinates plus a sublattice
/// tag. Unused coordinates stay 0.
///
/// Coordinate schemes:
///   grid(d)         x[0..d)                       tag 0
///   triangular      axial (x, y)                  tag 0
///   hexagonal       unit cell (x, y)              tag 0 = A, 1 = B
///   subdivided grid corner (x, y)                 tag 0 corner, 1 horizontal midpoint, 2 vertical midpoint
///   tree(b)         (depth, index)                tag 0
///   dumbbell(d)     x[0..d)                       tag = copy (0 or 1)
///   embedded        (vertex id)                   tag 0
///
/// The canonical text form "x0,x1,...:tag" (see LatticeSpec::format_site)
/// is the stable serialization; it round-trips exactly.
struct Site {
  std::array<std::int64_t, 4> x{};
  std::int32_t tag = 0;

  auto operator<=>(const Site&) const = default;
};

struct SiteHash {
  std::size_t operator()(const Site& s) const noexcept;
};

struct LatticeNeighbor {
  Site site;
  double conductance = 1.0;
};

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational operator+(const Rational& o) const { return make(num * o.den + o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return make(num * o.num, den * o.den); }
  bool operator==(const Rational&) const = default;
};

/// Symmetry class of vertices with its relative frequency.
struct SiteKind {
  std::string label;
  Rational frequency;
  int valence = 0;
};

enum class LatticeKind { grid, triangular, hexagonal, subdivided_grid, tree, dumbbell, embedded };

/// Immutable description of an infinite (or embedded finite) network.
/// Every edge has unit conductance except in embedded networks.
class LatticeSpec {
public:
  static LatticeSpec grid(int dimension);
  static LatticeSpec triangular();
  static LatticeSpec hexagonal();
  static LatticeSpec subdivided_grid();
  /// Regular tree in which every vertex has `degree` neighbors.
  static LatticeSpec tree(int degree);
  /// Two copies of grid(dimension) joined by one edge between their origins.
  static LatticeSpec dumbbell(int dimension);
  /// A finite network viewed as a lattice whose sites are its vertex ids.
  static LatticeSpec embed(Network network);
  /// grid1..grid4, tri, hex, subdiv, tree3, dumbbell3.
  static LatticeSpec from_name(std::string_view name);

  LatticeKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  /// Number of meaningful coordinates.
  int dimension() const { return dimension_; }
  Site origin() const { return Site{}; }

  bool contains(const Site& s) const;
  /// Replaces `out` with the neighbors of s in a fixed, documented order.
  /// For grids the order is -e0, +e0, -e1, +e1, ...
  void neighbors(const Site& s, std::vector<LatticeNeighbor>& out) const;
  std::vector<LatticeNeighbor> neighbors(const Site& s) const;
  std::size_t max_valence() const;

  /// Tabulated vertex kinds; frequencies sum to 1.
  std::vector<SiteKind> site_kinds() const;
  /// Index into site_kinds() for s.
  std::size_t kind_of(const Site& s) const;
  bool edge_transitive() const;
  /// Admits a pinching sequence (boundary/volume -> 0).
  bool smallish() const;

  Site parse_site(std::string_view text) const;
  std::string format_site(const Site& s) const;

  const Network* embedded_network() const { return embedded_.get(); }

private:
  LatticeSpec(LatticeKind kind, int dimension, int degree, std::string name)
      : kind_(kind), dimension_(dimension), degree_(degree), name_(std::move(name)) {}

  void check_site(const Site& s) const;

  LatticeKind kind_;
  int dimension_;
  int degree_;  // tree branching degree
  std::string name_;
  std::shared_ptr<const Network> embedded_;
};

/// Sorted, duplicate-free finite set of sites.
using VertexSubset = std::vector<Site>;

/// Sorts and removes duplicates.
VertexSubset make_subset(std::vector<Site> sites);
bool subset_contains(std::span<const Site> subset, const Site& s);

/// All sites within `radius` of any center. Grids use the L-infinity
/// distance, the dumbbell uses L-infinity inside each copy plus one step
/// across the bridge, every other kind uses graph distance.
VertexSubset ball(const LatticeSpec& lattice, std::span<const Site> centers, int radius);
VertexSubset ball(const LatticeSpec& lattice, const Site& center, int radius);

/// Sites of S with a neighbor outside S.
VertexSubset boundary(const LatticeSpec& lattice, std::span<const Site> subset);

struct BoundaryEdge {
  Site inside;
  Site outside;
  double conductance = 1.0;
};

/// Edges from S to its complement, in subset order then neighbor order.
std::vector<BoundaryEdge> edge_boundary(const LatticeSpec& lattice, std::span<const Site> subset);

/// |edge_boundary(S)| / |S|.
double pinching_ratio(const LatticeSpec& lattice, std::span<const Site> subset);

/// Frequency-weighted valence over the tabulated kinds.
Rational average_valence(const LatticeSpec& lattice);

/// Edge resistance implied by the average-resistance theorem for smallish
/// edge-transitive lattices: 2 / valence with one vertex kind, and
/// (v1 + v2) / (v1 v2) with two. Throws UnsupportedKindError otherwise.
Rational theoretical_edge_resistance(const LatticeSpec& lattice);

}  // namespace resnet

#endif
