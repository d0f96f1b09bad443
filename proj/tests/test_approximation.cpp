#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracle.hpp"
#include "resnet/approximation.hpp"
#include "resnet/errors.hpp"

using namespace resnet;

namespace {

Site at(std::int64_t x, std::int64_t y = 0, std::int64_t z = 0) { return Site{{x, y, z, 0}, 0}; }

std::vector<EstimateRow> rows_of(double (*f)(double), int first, int last) {
  std::vector<EstimateRow> rows;
  for (int r = first; r <= last; ++r) rows.push_back({r, 0, 0, f(r)});
  return rows;
}

}  // namespace

TEST_CASE("cut and short networks of a single vertex") {
  const LatticeSpec g3 = LatticeSpec::grid(3);
  VertexSubset one{Site{}};
  CutResult cut = cut_network(g3, one);
  CHECK(cut.network.vertex_count() == 1);
  CHECK(cut.network.edge_count() == 0);
  CHECK_FALSE(cut.infinity.has_value());

  ShortResult star = short_network(g3, one);
  CHECK(star.network.vertex_count() == 2);
  CHECK(star.network.edge_count() == 6);  // parallel edges to infinity
  REQUIRE(star.infinity.has_value());
  CHECK(effective_resistance(star.network, 0, *star.infinity).resistance == doctest::Approx(1.0 / 6.0));
  CHECK(star.label(g3, *star.infinity) == "inf");
  CHECK_THROWS_AS(star.vertex(at(1)), PreconditionError);
}

TEST_CASE("cut and short edge counts on grid balls") {
  const LatticeSpec g2 = LatticeSpec::grid(2);
  for (int r = 0; r <= 5; ++r) {
    auto b = ball(g2, Site{}, r);
    const std::size_t side = 2 * r + 1;
    CutResult cut = cut_network(g2, b);
    ShortResult sh = short_network(g2, b);
    CHECK(cut.network.edge_count() == 2 * side * (side - 1));
    CHECK(cut.internal_edge_count == cut.network.edge_count());
    CHECK(sh.internal_edge_count == cut.network.edge_count());
    CHECK(sh.network.edge_count() == cut.network.edge_count() + 4 * side);
    CHECK(sh.network.vertex_count() == b.size() + 1);
    for (EdgeId e = 0; e < cut.internal_edge_count; ++e) CHECK(cut.network.edge(e) == sh.network.edge(e));
  }
}

TEST_CASE("one-dimensional segments") {
  // The ball of radius r around {0, 1} is the segment [-r, r + 1].
  const LatticeSpec g1 = LatticeSpec::grid(1);
  for (int r = 0; r <= 10; ++r) {
    auto seq = SwellingSequence::around(g1, at(0), at(1));
    auto s = seq.term(r);
    CHECK(s.size() == std::size_t(2 * r + 2));
    Bracket b = resistance_bracket(g1, at(0), at(1), s);
    const double n = double(s.size());
    CHECK(b.cut_resistance == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b.short_resistance == doctest::Approx(oracle::parallel(1.0, n)).epsilon(1e-10));
  }
}

TEST_CASE("short and cut resistances agree with dense elimination") {
  // grid2, ball of radius 1 around (0,0) and (1,0): a 4 x 3 block.
  const LatticeSpec g2 = LatticeSpec::grid(2);
  auto s = SwellingSequence::around(g2, at(0), at(1)).term(1);
  REQUIRE(s.size() == 12);
  Network block = oracle::grid(4, 3);
  std::vector<Edge> edges(block.edges().begin(), block.edges().end());
  for (VertexId v = 0; v < 12; ++v)
    for (std::size_t k = block.degree(v); k < 4; ++k) edges.push_back({v, 12, 1.0});
  Network shorted(13, edges);
  // (x, y) in [-1, 2] x [-1, 1] -> id (y + 1) * 4 + (x + 1).
  const VertexId p = 5, q = 6;
  Bracket b = resistance_bracket(g2, at(0), at(1), s);
  CHECK(b.cut_resistance == doctest::Approx(oracle::dense_resistance(block, p, q)).epsilon(1e-9));
  CHECK(b.short_resistance == doctest::Approx(oracle::dense_resistance(shorted, p, q)).epsilon(1e-9));
  CHECK(b.vertices == 12);
  CHECK(b.edges == 17);
}

TEST_CASE("embedded finite network: cut of everything is the network itself") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Network net = oracle::random_connected(rng, 9, 8, true);
    LatticeSpec lattice = LatticeSpec::embed(net);
    VertexSubset all;
    for (VertexId v = 0; v < 9; ++v) all.push_back(Site{{std::int64_t(v), 0, 0, 0}, 0});
    all = make_subset(all);
    CutResult cut = cut_network(lattice, all);
    auto key = [](const Network& n) {
      std::vector<std::tuple<VertexId, VertexId, double>> out;
      for (const Edge& e : n.edges()) out.emplace_back(e.tail, e.head, e.conductance);
      std::sort(out.begin(), out.end());
      return out;
    };
    CHECK(key(cut.network) == key(net));
    ShortResult sh = short_network(lattice, all);
    CHECK(sh.network.edge_count() == net.edge_count());
    CHECK(resistance_bracket(lattice, all[0], all[5], all).gap() == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }
}

TEST_CASE("bracket ordering and monotonicity") {
  for (const char* name : {"grid2", "grid3", "tri", "hex", "subdiv", "dumbbell3"}) {
    CAPTURE(name);
    LatticeSpec lattice = LatticeSpec::from_name(name);
    const Site p = lattice.origin();
    const Site q = lattice.neighbors(p).front().site;
    auto seq = SwellingSequence::around(lattice, p, q);
    std::vector<int> radii{1, 2, 3, 4, 5, 6};
    auto table = bracket_table(lattice, p, q, seq, radii);
    CHECK(bracket_violations(table).empty());
    for (const Bracket& b : table) CHECK(b.short_resistance <= b.cut_resistance + kBracketSlack);
  }
}

TEST_CASE("violations are reported") {
  std::vector<Bracket> bad(2);
  bad[0] = {1, 0, 0, 0.4, 0.6, true};
  bad[1] = {2, 0, 0, 0.3, 0.7, true};
  CHECK(bracket_violations(bad).size() == 2);
  bad[1] = {2, 0, 0, 0.8, 0.5, true};
  CHECK(bracket_violations(bad).size() == 1);
}

TEST_CASE("brackets contain the edge-transitive value") {
  for (const char* name : {"grid2", "grid3", "tri", "hex", "subdiv"}) {
    CAPTURE(name);
    LatticeSpec lattice = LatticeSpec::from_name(name);
    const Site p = lattice.origin();
    const Site q = lattice.neighbors(p).front().site;
    const double expected = theoretical_edge_resistance(lattice).value();
    Bracket b = resistance_bracket(lattice, p, q, SwellingSequence::around(lattice, p, q).term(6));
    CHECK(b.short_resistance <= expected);
    CHECK(expected <= b.cut_resistance);
  }
}

TEST_CASE("regression: grid brackets") {
  const LatticeSpec g3 = LatticeSpec::grid(3);
  auto seq3 = SwellingSequence::around(g3, at(0), at(1));
  struct Row {
    int r;
    double cut, sh;
  };
  for (Row row : {Row{2, 0.3397027698259229, 0.3317052175737585}, Row{4, 0.33437845406671185, 0.33297249503961057},
                  Row{10, 0.3334154495920768, 0.3332968468891205}}) {
    Bracket b = resistance_bracket(g3, at(0), at(1), seq3.term(row.r));
    CHECK(b.cut_resistance == doctest::Approx(row.cut).epsilon(1e-8));
    CHECK(b.short_resistance == doctest::Approx(row.sh).epsilon(1e-8));
  }
  const LatticeSpec g2 = LatticeSpec::grid(2);
  auto seq2 = SwellingSequence::around(g2, at(0), at(1));
  for (Row row : {Row{2, 0.5221664, 0.4876364}, Row{4, 0.5066960, 0.4952654}, Row{16, 0.5004992, 0.4995491}}) {
    Bracket b = resistance_bracket(g2, at(0), at(1), seq2.term(row.r));
    CHECK(b.cut_resistance == doctest::Approx(row.cut).epsilon(1e-6));
    CHECK(b.short_resistance == doctest::Approx(row.sh).epsilon(1e-6));
  }
}

TEST_CASE("disconnected cut gives an infinite upper bound") {
  // Dumbbell terminals in different copies: the bridge is the only link,
  // and a subset without both bridge ends cuts it.
  const LatticeSpec db = LatticeSpec::dumbbell(3);
  VertexSubset s = make_subset({Site{}, at(1), Site{{1, 0, 0, 0}, 1}});
  Bracket b = resistance_bracket(db, at(1), Site{{1, 0, 0, 0}, 1}, s);
  CHECK_FALSE(b.cut_connected);
  CHECK(std::isinf(b.cut_resistance));
  CHECK(std::isfinite(b.short_resistance));
  CHECK_THROWS_AS(resistance_bracket(db, at(1), at(5), s), PreconditionError);
}

TEST_CASE("even and odd estimates") {
  const LatticeSpec g2 = LatticeSpec::grid(2);
  auto seq = SwellingSequence::around(g2, at(0), at(1), 1);
  StopRule stop{8, 0.0};
  EstimateTable even = even_resistance_estimate(g2, at(0), at(1), seq, stop);
  EstimateTable odd = odd_resistance_estimate(g2, at(0), at(1), seq, stop);
  REQUIRE(even.rows.size() == 8);
  REQUIRE(odd.rows.size() == 8);
  CHECK(even.rows.front().radius == 1);
  for (std::size_t i = 1; i < even.rows.size(); ++i) {
    CHECK(even.rows[i].value <= even.rows[i - 1].value + kBracketSlack);
    CHECK(odd.rows[i].value >= odd.rows[i - 1].value - kBracketSlack);
  }
  CHECK(odd.final_value() < 0.5);
  CHECK(even.final_value() > 0.5);

  StopRule early{50, 1e-2};
  CHECK(even_resistance_estimate(g2, at(0), at(1), seq, early).rows.size() < 50);
  CHECK(std::isnan(EstimateTable{}.final_value()));
}

TEST_CASE("trend classification") {
  auto linear = rows_of([](double r) { return 0.5 * r + 0.5; }, 1, 12);
  CHECK(fit_trend(linear).trend == Trend::diverging_linear);
  auto logarithmic = rows_of([](double r) { return 0.3 + std::log(r) / M_PI; }, 1, 64);
  CHECK(fit_trend(logarithmic).trend == Trend::diverging_log);
  auto plateau = rows_of([](double r) { return 0.25 - 0.1 / r; }, 2, 16);
  TrendFit p = fit_trend(plateau);
  CHECK(p.trend == Trend::plateau);
  REQUIRE(p.limit.has_value());
  CHECK(*p.limit == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(fit_trend(rows_of([](double r) { return r; }, 1, 2)).trend == Trend::indeterminate);
  CHECK(to_string(Trend::diverging_log) == "diverging-log");
}

TEST_CASE("resistance to infinity") {
  const LatticeSpec g1 = LatticeSpec::grid(1);
  SwellingSequence seq(g1, {Site{}});
  std::vector<int> radii{1, 2, 5, 10};
  InfinityTable t = resistance_to_infinity(g1, Site{}, seq, radii);
  REQUIRE(t.table.rows.size() == 4);
  for (const EstimateRow& row : t.table.rows) CHECK(row.value == doctest::Approx((row.radius + 1) / 2.0));
  CHECK(t.fit.trend == Trend::diverging_linear);

  const LatticeSpec g3 = LatticeSpec::grid(3);
  std::vector<int> r3{2, 4, 8};
  InfinityTable t3 = resistance_to_infinity(g3, Site{}, SwellingSequence(g3, {Site{}}), r3);
  CHECK(t3.table.rows[0].value == doctest::Approx(0.228956).epsilon(1e-5));
  CHECK(t3.table.rows[1].value == doctest::Approx(0.238703).epsilon(1e-5));
  CHECK(t3.table.rows[2].value == doctest::Approx(0.244985).epsilon(1e-5));
}

TEST_CASE("CSV writers and parsing helpers") {
  const LatticeSpec g1 = LatticeSpec::grid(1);
  auto seq = SwellingSequence::around(g1, at(0), at(1));
  std::vector<int> radii{0, 1};
  auto table = bracket_table(g1, at(0), at(1), seq, radii);
  std::ostringstream out;
  write_bracket_csv(out, table);
  CHECK(out.str() == "radius,vertices,edges,short_R,cut_R,gap\n0,2,1,0.6666666666666666,1,0.33333333333333337\n"
                     "1,4,3,0.8,1,0.19999999999999996\n");

  CHECK(parse_radius_list("2..5") == std::vector<int>{2, 3, 4, 5});
  CHECK(parse_radius_list("1,4,16") == std::vector<int>{1, 4, 16});
  CHECK_THROWS_AS(parse_radius_list("5..2"), ArgumentError);
  CHECK_THROWS_AS(parse_radius_list("a"), ArgumentError);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}
