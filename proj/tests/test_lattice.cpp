#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "resnet/errors.hpp"
#include "resnet/lattice.hpp"

using namespace resnet;

namespace {

const char* kNames[] = {"grid1", "grid2", "grid3", "grid4", "tri", "hex", "subdiv", "tree3", "dumbbell3"};

Site random_site(const LatticeSpec& lattice, std::mt19937_64& rng) {
  Site s = lattice.origin();
  int steps = std::uniform_int_distribution<int>(0, 60)(rng);
  std::vector<LatticeNeighbor> nb;
  for (int i = 0; i < steps; ++i) {
    lattice.neighbors(s, nb);
    s = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)].site;
  }
  return s;
}

std::vector<double> conductances_to(const std::vector<LatticeNeighbor>& nb, const Site& s) {
  std::vector<double> out;
  for (const LatticeNeighbor& n : nb)
    if (n.site == s) out.push_back(n.conductance);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("grid neighbor order") {
  auto nb = LatticeSpec::grid(2).neighbors(Site{{3, 5, 0, 0}, 0});
  REQUIRE(nb.size() == 4);
  CHECK(nb[0].site == Site{{2, 5, 0, 0}, 0});
  CHECK(nb[1].site == Site{{4, 5, 0, 0}, 0});
  CHECK(nb[2].site == Site{{3, 4, 0, 0}, 0});
  CHECK(nb[3].site == Site{{3, 6, 0, 0}, 0});
  CHECK(LatticeSpec::grid(4).max_valence() == 8);
  CHECK(LatticeSpec::dumbbell(3).neighbors(Site{}).size() == 7);
  CHECK(LatticeSpec::dumbbell(3).neighbors(Site{}).back().site == Site{{0, 0, 0, 0}, 1});
  CHECK_THROWS_AS(LatticeSpec::grid(5), ArgumentError);
  CHECK_THROWS_AS(LatticeSpec::tree(2), ArgumentError);
  CHECK_THROWS_AS(LatticeSpec::from_name("grid9"), ArgumentError);
}

TEST_CASE("valences") {
  CHECK(LatticeSpec::triangular().neighbors(Site{{4, -2, 0, 0}, 0}).size() == 6);
  CHECK(LatticeSpec::hexagonal().neighbors(Site{{1, 1, 0, 0}, 0}).size() == 3);
  CHECK(LatticeSpec::hexagonal().neighbors(Site{{1, 1, 0, 0}, 1}).size() == 3);
  CHECK(LatticeSpec::subdivided_grid().neighbors(Site{}).size() == 4);
  CHECK(LatticeSpec::subdivided_grid().neighbors(Site{{0, 0, 0, 0}, 1}).size() == 2);
  CHECK(LatticeSpec::subdivided_grid().neighbors(Site{{0, 0, 0, 0}, 2}).size() == 2);
  CHECK(LatticeSpec::tree(3).neighbors(Site{}).size() == 3);
  CHECK(LatticeSpec::tree(3).neighbors(Site{{4, 7, 0, 0}, 0}).size() == 3);
  CHECK(LatticeSpec::tree(5).neighbors(Site{{2, 1, 0, 0}, 0}).size() == 5);
}

TEST_CASE("property: neighbor relation is symmetric with matching conductance") {
  std::mt19937_64 rng(21);
  std::vector<LatticeSpec> lattices;
  for (const char* name : kNames) lattices.push_back(LatticeSpec::from_name(name));
  std::mt19937_64 grng(22);
  lattices.push_back(LatticeSpec::embed(oracle::random_connected(grng, 12, 10, true)));
  for (const LatticeSpec& lattice : lattices) {
    CAPTURE(lattice.name());
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
      Site s = random_site(lattice, rng);
      auto nb = lattice.neighbors(s);
      for (const LatticeNeighbor& n : nb) {
        if (!lattice.contains(n.site)) ok = false;
        auto back = lattice.neighbors(n.site);
        if (conductances_to(back, s) != conductances_to(nb, n.site)) ok = false;
        if (n.site == s) ok = false;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("ball sizes") {
  CHECK(ball(LatticeSpec::grid(1), Site{}, 2).size() == 5);
  for (int r = 0; r <= 6; ++r) {
    CHECK(ball(LatticeSpec::grid(2), Site{}, r).size() == std::size_t((2 * r + 1) * (2 * r + 1)));
    CHECK(ball(LatticeSpec::grid(3), Site{}, r).size() == std::size_t((2 * r + 1) * (2 * r + 1) * (2 * r + 1)));
    CHECK(ball(LatticeSpec::tree(3), Site{}, r).size() == std::size_t(1 + 3 * ((1 << r) - 1)));
  }
  CHECK(ball(LatticeSpec::hexagonal(), Site{}, 1).size() == 4);
  CHECK(ball(LatticeSpec::triangular(), Site{}, 1).size() == 7);
  CHECK(ball(LatticeSpec::triangular(), Site{}, 2).size() == 19);
  CHECK(ball(LatticeSpec::subdivided_grid(), Site{}, 1).size() == 5);
  // Dumbbell: the far copy is entered through the bridge, one step spent.
  CHECK(ball(LatticeSpec::dumbbell(3), Site{}, 1).size() == 27 + 1);
  CHECK(ball(LatticeSpec::dumbbell(3), Site{}, 2).size() == 125 + 27);

  std::vector<Site> two{Site{}, Site{{1, 0, 0, 0}, 0}};
  CHECK(ball(LatticeSpec::grid(2), two, 1).size() == 12);
  CHECK_THROWS_AS(ball(LatticeSpec::grid(2), Site{}, -1), ArgumentError);
}

TEST_CASE("boundaries and pinching ratios") {
  const LatticeSpec g2 = LatticeSpec::grid(2);
  for (int r = 1; r <= 8; ++r) {
    auto b = ball(g2, Site{}, r);
    CHECK(boundary(g2, b).size() == std::size_t(8 * r));
    CHECK(edge_boundary(g2, b).size() == std::size_t(4 * (2 * r + 1)));
    CHECK(pinching_ratio(g2, b) == doctest::Approx(4.0 / (2 * r + 1)));
  }
  CHECK(pinching_ratio(g2, ball(g2, Site{}, 1)) == doctest::Approx(4.0 / 3.0));
  CHECK(pinching_ratio(g2, ball(g2, Site{}, 20)) < 0.2);
  CHECK(boundary(g2, ball(g2, Site{}, 0)).size() == 1);

  const LatticeSpec t3 = LatticeSpec::tree(3);
  for (int r = 0; r <= 6; ++r) {
    auto b = ball(t3, Site{}, r);
    CHECK(edge_boundary(t3, b).size() == std::size_t(3 << r));
    CHECK(pinching_ratio(t3, b) > 1.0);
  }

  auto eb = edge_boundary(g2, ball(g2, Site{}, 0));
  REQUIRE(eb.size() == 4);
  CHECK(eb[0].inside == Site{});
  CHECK(eb[0].outside == Site{{-1, 0, 0, 0}, 0});
}

TEST_CASE("property: observed kind frequencies approach the tabulated ones") {
  for (const char* name : {"grid2", "grid3", "tri", "hex", "subdiv"}) {
    CAPTURE(name);
    LatticeSpec lattice = LatticeSpec::from_name(name);
    auto kinds = lattice.site_kinds();
    double total = 0.0;
    for (const SiteKind& k : kinds) total += k.frequency.value();
    CHECK(total == doctest::Approx(1.0));
    const int r = std::string(name) == "grid3" ? 12 : 30;
    auto b = ball(lattice, Site{}, r);
    std::vector<double> counts(kinds.size(), 0.0);
    for (const Site& s : b) counts[lattice.kind_of(s)] += 1.0;
    for (std::size_t k = 0; k < kinds.size(); ++k)
      CHECK(std::abs(counts[k] / double(b.size()) - kinds[k].frequency.value()) <= 0.02);
  }
}

TEST_CASE("average valence and theoretical edge resistance") {
  for (int d = 1; d <= 4; ++d) {
    CHECK(average_valence(LatticeSpec::grid(d)) == Rational::make(2 * d, 1));
    CHECK(theoretical_edge_resistance(LatticeSpec::grid(d)) == Rational::make(1, d));
  }
  CHECK(average_valence(LatticeSpec::hexagonal()) == Rational::make(3, 1));
  CHECK(average_valence(LatticeSpec::triangular()) == Rational::make(6, 1));
  CHECK(average_valence(LatticeSpec::subdivided_grid()) == Rational::make(8, 3));
  CHECK(theoretical_edge_resistance(LatticeSpec::hexagonal()) == Rational::make(2, 3));
  CHECK(theoretical_edge_resistance(LatticeSpec::triangular()) == Rational::make(1, 3));
  CHECK(theoretical_edge_resistance(LatticeSpec::subdivided_grid()) == Rational::make(3, 4));
  CHECK_THROWS_AS(theoretical_edge_resistance(LatticeSpec::tree(3)), UnsupportedKindError);
  CHECK_THROWS_AS(theoretical_edge_resistance(LatticeSpec::dumbbell(3)), UnsupportedKindError);
  CHECK_THROWS_AS(LatticeSpec::embed(oracle::triangle()).site_kinds(), UnsupportedKindError);
}

TEST_CASE("rationals reduce") {
  CHECK(Rational::make(6, 8) == Rational{3, 4});
  CHECK(Rational::make(3, -6) == Rational{-1, 2});
  CHECK((Rational{1, 3} + Rational{1, 6}) == Rational{1, 2});
  CHECK_THROWS_AS(Rational::make(1, 0), ArgumentError);
}

TEST_CASE("site text round-trips") {
  std::mt19937_64 rng(23);
  for (const char* name : kNames) {
    CAPTURE(name);
    LatticeSpec lattice = LatticeSpec::from_name(name);
    CHECK(lattice.parse_site("origin") == lattice.origin());
    for (int i = 0; i < 500; ++i) {
      Site s = random_site(lattice, rng);
      CHECK(lattice.parse_site(lattice.format_site(s)) == s);
    }
  }
  const LatticeSpec g2 = LatticeSpec::grid(2);
  CHECK(g2.format_site(Site{{-3, 4, 0, 0}, 0}) == "-3,4");
  CHECK_THROWS_AS(g2.parse_site("1"), ArgumentError);
  CHECK_THROWS_AS(g2.parse_site("1,2,3"), ArgumentError);
  CHECK_THROWS_AS(g2.parse_site("1,x"), ArgumentError);
  CHECK_THROWS_AS(LatticeSpec::hexagonal().parse_site("0,0:5"), ArgumentError);
  CHECK(LatticeSpec::hexagonal().format_site(Site{{0, 0, 0, 0}, 1}) == "0,0:1");
  CHECK_FALSE(LatticeSpec::tree(3).contains(Site{{1, 3, 0, 0}, 0}));
  CHECK_THROWS_AS(LatticeSpec::tree(3).neighbors(Site{{1, 3, 0, 0}, 0}), ArgumentError);
}
