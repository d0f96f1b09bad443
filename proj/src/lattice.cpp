#include "resnet/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <unordered_set>

#include "resnet/errors.hpp"

namespace resnet {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::int64_t kTreeWidthCap = std::int64_t{1} << 62;

// Number of tree vertices at `depth`, or -1 past the representable range.
std::int64_t tree_width(int degree, std::int64_t depth) {
  if (depth == 0) return 1;
  std::int64_t width = degree;
  for (std::int64_t k = 1; k < depth; ++k) {
    if (width > kTreeWidthCap / (degree - 1)) return -1;
    width *= degree - 1;
  }
  return width;
}

bool is_zero_vector(const Site& s, int dims) {
  for (int i = 0; i < dims; ++i)
    if (s.x[i] != 0) return false;
  return true;
}

}  // namespace

std::size_t SiteHash::operator()(const Site& s) const noexcept {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(s.tag));
  for (std::int64_t c : s.x) h = mix64(h ^ static_cast<std::uint64_t>(c));
  return static_cast<std::size_t>(h);
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

LatticeSpec LatticeSpec::grid(int dimension) {
  if (dimension < 1 || dimension > 4) throw ArgumentError("grid dimension must be 1..4");
  return LatticeSpec(LatticeKind::grid, dimension, 0, "grid" + std::to_string(dimension));
}

LatticeSpec LatticeSpec::triangular() { return LatticeSpec(LatticeKind::triangular, 2, 0, "tri"); }
LatticeSpec LatticeSpec::hexagonal() { return LatticeSpec(LatticeKind::hexagonal, 2, 0, "hex"); }
LatticeSpec LatticeSpec::subdivided_grid() { return LatticeSpec(LatticeKind::subdivided_grid, 2, 0, "subdiv"); }

LatticeSpec LatticeSpec::tree(int degree) {
  if (degree < 3) throw ArgumentError("tree degree must be at least 3");
  return LatticeSpec(LatticeKind::tree, 2, degree, "tree" + std::to_string(degree));
}

LatticeSpec LatticeSpec::dumbbell(int dimension) {
  if (dimension < 1 || dimension > 4) throw ArgumentError("dumbbell dimension must be 1..4");
  return LatticeSpec(LatticeKind::dumbbell, dimension, 0, "dumbbell" + std::to_string(dimension));
}

LatticeSpec LatticeSpec::embed(Network network) {
  LatticeSpec spec(LatticeKind::embedded, 1, 0, "embedded");
  spec.embedded_ = std::make_shared<const Network>(std::move(network));
  return spec;
}

LatticeSpec LatticeSpec::from_name(std::string_view name) {
  if (name == "grid1") return grid(1);
  if (name == "grid2") return grid(2);
  if (name == "grid3") return grid(3);
  if (name == "grid4") return grid(4);
  if (name == "tri") return triangular();
  if (name == "hex") return hexagonal();
  if (name == "subdiv") return subdivided_grid();
  if (name == "tree3") return tree(3);
  if (name == "dumbbell3") return dumbbell(3);
  throw ArgumentError("unknown lattice kind '" + std::string(name) +
                      "' (expected grid1|grid2|grid3|grid4|tri|hex|subdiv|tree3|dumbbell3)");
}

bool LatticeSpec::contains(const Site& s) const {
  for (int i = dimension_; i < 4; ++i)
    if (s.x[i] != 0) return false;
  switch (kind_) {
    case LatticeKind::grid:
    case LatticeKind::triangular:
      return s.tag == 0;
    case LatticeKind::hexagonal:
      return s.tag == 0 || s.tag == 1;
    case LatticeKind::subdivided_grid:
      return s.tag >= 0 && s.tag <= 2;
    case LatticeKind::dumbbell:
      return s.tag == 0 || s.tag == 1;
    case LatticeKind::tree: {
      if (s.tag != 0 || s.x[0] < 0) return false;
      std::int64_t width = tree_width(degree_, s.x[0]);
      return width > 0 && s.x[1] >= 0 && s.x[1] < width;
    }
    case LatticeKind::embedded:
      return s.tag == 0 && s.x[0] >= 0 && static_cast<std::size_t>(s.x[0]) < embedded_->vertex_count();
  }
  return false;
}

void LatticeSpec::check_site(const Site& s) const {
  if (!contains(s)) throw ArgumentError("site " + format_site(s) + " is not a vertex of " + name_);
}

void LatticeSpec::neighbors(const Site& s, std::vector<LatticeNeighbor>& out) const {
  check_site(s);
  out.clear();
  auto push = [&out](Site t, double c = 1.0) { out.push_back({t, c}); };
  auto shifted = [&s](int axis, std::int64_t delta, std::int32_t tag) {
    Site t = s;
    t.x[axis] += delta;
    t.tag = tag;
    return t;
  };
  switch (kind_) {
    case LatticeKind::grid:
    case LatticeKind::dumbbell:
      for (int i = 0; i < dimension_; ++i) {
        push(shifted(i, -1, s.tag));
        push(shifted(i, +1, s.tag));
      }
      if (kind_ == LatticeKind::dumbbell && is_zero_vector(s, dimension_)) {
        Site other = s;
        other.tag = 1 - s.tag;
        push(other);
      }
      return;
    case LatticeKind::triangular: {
      static constexpr std::array<std::array<int, 2>, 6> steps{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}, {1, -1}, {-1, 1}}};
      for (auto [dx, dy] : steps) {
        Site t = s;
        t.x[0] += dx;
        t.x[1] += dy;
        push(t);
      }
      return;
    }
    case LatticeKind::hexagonal:
      if (s.tag == 0) {
        push(shifted(0, 0, 1));
        push(shifted(0, -1, 1));
        push(shifted(1, -1, 1));
      } else {
        push(shifted(0, 0, 0));
        push(shifted(0, +1, 0));
        push(shifted(1, +1, 0));
      }
      return;
    case LatticeKind::subdivided_grid:
      if (s.tag == 0) {
        push(shifted(0, -1, 1));
        push(shifted(0, 0, 1));
        push(shifted(1, -1, 2));
        push(shifted(1, 0, 2));
      } else if (s.tag == 1) {
        push(shifted(0, 0, 0));
        push(shifted(0, +1, 0));
      } else {
        push(shifted(1, 0, 0));
        push(shifted(1, +1, 0));
      }
      return;
    case LatticeKind::tree: {
      const std::int64_t depth = s.x[0];
      const std::int64_t index = s.x[1];
      if (depth > 0) {
        Site parent{};
        parent.x[0] = depth - 1;
        parent.x[1] = depth == 1 ? 0 : index / (degree_ - 1);
        push(parent);
      }
      const std::int64_t branching = depth == 0 ? degree_ : degree_ - 1;
      if (tree_width(degree_, depth + 1) < 0)
        throw CapacityError("tree coordinates exceed representable depth at depth " + std::to_string(depth));
      for (std::int64_t j = 0; j < branching; ++j) {
        Site child{};
        child.x[0] = depth + 1;
        child.x[1] = index * branching + j;
        push(child);
      }
      return;
    }
    case LatticeKind::embedded: {
      const auto v = static_cast<VertexId>(s.x[0]);
      for (const Incidence& inc : embedded_->incident(v)) {
        Site t{};
        t.x[0] = static_cast<std::int64_t>(inc.other);
        push(t, embedded_->edge(inc.edge).conductance);
      }
      return;
    }
  }
}

std::vector<LatticeNeighbor> LatticeSpec::neighbors(const Site& s) const {
  std::vector<LatticeNeighbor> out;
  neighbors(s, out);
  return out;
}

std::size_t LatticeSpec::max_valence() const {
  switch (kind_) {
    case LatticeKind::grid:
      return 2 * dimension_;
    case LatticeKind::dumbbell:
      return 2 * dimension_ + 1;
    case LatticeKind::triangular:
      return 6;
    case LatticeKind::hexagonal:
      return 3;
    case LatticeKind::subdivided_grid:
      return 4;
    case LatticeKind::tree:
      return degree_;
    case LatticeKind::embedded: {
      std::size_t best = 0;
      for (VertexId v = 0; v < embedded_->vertex_count(); ++v) best = std::max(best, embedded_->degree(v));
      return best;
    }
  }
  return 0;
}

std::vector<SiteKind> LatticeSpec::site_kinds() const {
  switch (kind_) {
    case LatticeKind::grid:
      return {{"site", {1, 1}, 2 * dimension_}};
    case LatticeKind::dumbbell:
      // The two bridge endpoints have density zero.
      return {{"site", {1, 1}, 2 * dimension_}};
    case LatticeKind::triangular:
      return {{"site", {1, 1}, 6}};
    case LatticeKind::hexagonal:
      return {{"site", {1, 1}, 3}};
    case LatticeKind::subdivided_grid:
      return {{"corner", {1, 3}, 4}, {"midpoint", {2, 3}, 2}};
    case LatticeKind::tree:
      return {{"node", {1, 1}, degree_}};
    case LatticeKind::embedded:
      break;
  }
  throw UnsupportedKindError("no tabulated vertex kinds for " + name_);
}

std::size_t LatticeSpec::kind_of(const Site& s) const {
  check_site(s);
  if (kind_ == LatticeKind::embedded) throw UnsupportedKindError("no tabulated vertex kinds for " + name_);
  if (kind_ == LatticeKind::subdivided_grid) return s.tag == 0 ? 0 : 1;
  return 0;
}

bool LatticeSpec::edge_transitive() const {
  switch (kind_) {
    case LatticeKind::grid:
    case LatticeKind::triangular:
    case LatticeKind::hexagonal:
    case LatticeKind::subdivided_grid:
    case LatticeKind::tree:
      return true;
    default:
      return false;
  }
}

bool LatticeSpec::smallish() const {
  switch (kind_) {
    case LatticeKind::grid:
    case LatticeKind::triangular:
    case LatticeKind::hexagonal:
    case LatticeKind::subdivided_grid:
    case LatticeKind::dumbbell:
      return true;
    default:
      return false;
  }
}

Site LatticeSpec::parse_site(std::string_view text) const {
  if (text == "origin") return origin();
  Site s{};
  std::string_view coords = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    coords = text.substr(0, colon);
    std::string_view tag = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), s.tag);
    if (ec != std::errc() || ptr != tag.data() + tag.size())
      throw ArgumentError("bad sublattice tag in '" + std::string(text) + "'");
  }
  int count = 0;
  while (true) {
    auto comma = coords.find(',');
    std::string_view field = coords.substr(0, comma);
    if (count >= dimension_) throw ArgumentError("too many coordinates in '" + std::string(text) + "' for " + name_);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), s.x[count]);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
      throw ArgumentError("bad coordinate '" + std::string(field) + "' in '" + std::string(text) + "'");
    ++count;
    if (comma == std::string_view::npos) break;
    coords.remove_prefix(comma + 1);
  }
  if (count != dimension_)
    throw ArgumentError("'" + std::string(text) + "' has " + std::to_string(count) + " coordinates, " + name_ +
                        " needs " + std::to_string(dimension_));
  check_site(s);
  return s;
}

std::string LatticeSpec::format_site(const Site& s) const {
  std::string out;
  for (int i = 0; i < std::max(dimension_, 1); ++i) {
    if (i) out += ',';
    out += std::to_string(s.x[i]);
  }
  bool tagged = kind_ == LatticeKind::hexagonal || kind_ == LatticeKind::subdivided_grid ||
                kind_ == LatticeKind::dumbbell || s.tag != 0;
  if (tagged) out += ":" + std::to_string(s.tag);
  return out;
}

VertexSubset make_subset(std::vector<Site> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  return sites;
}

bool subset_contains(std::span<const Site> subset, const Site& s) {
  return std::binary_search(subset.begin(), subset.end(), s);
}

namespace {

// Appends the L-infinity box of `radius` around `center` in the first `dims` axes.
void append_box(const Site& center, int dims, int radius, std::vector<Site>& out) {
  Site cursor = center;
  for (int i = 0; i < dims; ++i) cursor.x[i] = center.x[i] - radius;
  while (true) {
    out.push_back(cursor);
    int axis = 0;
    while (axis < dims) {
      if (cursor.x[axis] < center.x[axis] + radius) {
        ++cursor.x[axis];
        break;
      }
      cursor.x[axis] = center.x[axis] - radius;
      ++axis;
    }
    if (axis == dims) return;
  }
}

std::int64_t linf_to_origin(const Site& s, int dims) {
  std::int64_t d = 0;
  for (int i = 0; i < dims; ++i) d = std::max(d, s.x[i] < 0 ? -s.x[i] : s.x[i]);
  return d;
}

}  // namespace

VertexSubset ball(const LatticeSpec& lattice, std::span<const Site> centers, int radius) {
  if (radius < 0) throw ArgumentError("ball radius must be non-negative");
  for (const Site& c : centers) {
    if (!lattice.contains(c)) throw ArgumentError("ball center " + lattice.format_site(c) + " not in lattice");
  }
  std::vector<Site> out;
  const int dims = lattice.dimension();
  if (lattice.kind() == LatticeKind::grid) {
    for (const Site& c : centers) append_box(c, dims, radius, out);
    return make_subset(std::move(out));
  }
  if (lattice.kind() == LatticeKind::dumbbell) {
    for (const Site& c : centers) {
      append_box(c, dims, radius, out);
      std::int64_t reach = radius - linf_to_origin(c, dims) - 1;
      if (reach >= 0) {
        Site far{};
        far.tag = 1 - c.tag;
        append_box(far, dims, static_cast<int>(reach), out);
      }
    }
    return make_subset(std::move(out));
  }
  std::unordered_set<Site, SiteHash> seen(centers.begin(), centers.end());
  std::vector<Site> frontier(centers.begin(), centers.end());
  std::vector<Site> next;
  std::vector<LatticeNeighbor> nbrs;
  out.assign(frontier.begin(), frontier.end());
  for (int step = 0; step < radius && !frontier.empty(); ++step) {
    next.clear();
    for (const Site& s : frontier) {
      lattice.neighbors(s, nbrs);
      for (const LatticeNeighbor& n : nbrs) {
        if (seen.insert(n.site).second) {
          next.push_back(n.site);
          out.push_back(n.site);
        }
      }
    }
    frontier.swap(next);
  }
  return make_subset(std::move(out));
}

VertexSubset ball(const LatticeSpec& lattice, const Site& center, int radius) {
  return ball(lattice, std::span<const Site>(&center, 1), radius);
}

std::vector<BoundaryEdge> edge_boundary(const LatticeSpec& lattice, std::span<const Site> subset) {
  std::vector<BoundaryEdge> out;
  std::vector<LatticeNeighbor> nbrs;
  for (const Site& s : subset) {
    lattice.neighbors(s, nbrs);
    for (const LatticeNeighbor& n : nbrs) {
      if (!subset_contains(subset, n.site)) out.push_back({s, n.site, n.conductance});
    }
  }
  return out;
}

VertexSubset boundary(const LatticeSpec& lattice, std::span<const Site> subset) {
  std::vector<Site> out;
  std::vector<LatticeNeighbor> nbrs;
  for (const Site& s : subset) {
    lattice.neighbors(s, nbrs);
    bool exposed = std::any_of(nbrs.begin(), nbrs.end(),
                               [&](const LatticeNeighbor& n) { return !subset_contains(subset, n.site); });
    if (exposed) out.push_back(s);
  }
  return out;
}

double pinching_ratio(const LatticeSpec& lattice, std::span<const Site> subset) {
  if (subset.empty()) throw ArgumentError("pinching ratio of an empty subset");
  return static_cast<double>(edge_boundary(lattice, subset).size()) / static_cast<double>(subset.size());
}

Rational average_valence(const LatticeSpec& lattice) {
  Rational sum{0, 1};
  for (const SiteKind& k : lattice.site_kinds()) sum = sum + k.frequency * Rational{k.valence, 1};
  return sum;
}

Rational theoretical_edge_resistance(const LatticeSpec& lattice) {
  if (!lattice.edge_transitive() || !lattice.smallish()) {
    throw UnsupportedKindError(lattice.name() + " is not a smallish edge-transitive lattice");
  }
  auto kinds = lattice.site_kinds();
  if (kinds.size() == 1) return Rational::make(2, kinds[0].valence);
  if (kinds.size() == 2) {
    std::int64_t v1 = kinds[0].valence, v2 = kinds[1].valence;
    return Rational::make(v1 + v2, v1 * v2);
  }
  throw UnsupportedKindError(lattice.name() + " has more than two vertex kinds");
}

}  // namespace resnet
