#include <doctest.h>

#include <cmath>

#include "ppadforge/games.hpp"

using namespace ppadforge;

namespace {

BimatrixGame coordination() {
  BimatrixGame g;
  g.R = Matrix(2, 2);
  g.C = Matrix(2, 2);
  g.R.at(0, 0) = 1.0;
  g.C.at(0, 0) = 1.0;
  return g;
}

BimatrixGame matching_pennies() {
  BimatrixGame g;
  g.R = Matrix(2, 2);
  g.C = Matrix(2, 2);
  g.R.at(0, 0) = g.R.at(1, 1) = 1.0;
  g.C.at(0, 1) = g.C.at(1, 0) = 1.0;
  return g;
}

PolymatrixGame pennies_edge() {
  PolymatrixGame p;
  p.players = 2;
  EdgeGame e;
  e.u = 0;
  e.v = 1;
  e.au[0][0] = e.au[1][1] = 1.0;  // u wants to match
  e.av[0][1] = e.av[1][0] = 1.0;  // v wants to mismatch
  p.edges.push_back(e);
  return p;
}

}  // namespace

TEST_CASE("expected_payoffs is the bilinear form") {
  auto g = coordination();
  MixedStrategy e1{1.0, 0.0};
  auto [ur, uc] = expected_payoffs(g, e1, e1);
  CHECK(ur == 1.0);
  CHECK(uc == 1.0);

  auto mp = matching_pennies();
  MixedStrategy u{0.5, 0.5};
  auto [mr, mc] = expected_payoffs(mp, u, u);
  CHECK(mr == doctest::Approx(0.5));
  CHECK(mc == doctest::Approx(0.5));

  BimatrixGame tiny;
  tiny.R = Matrix(1, 1, 0.2);
  tiny.C = Matrix(1, 1, 0.7);
  auto [tr, tc] = expected_payoffs(tiny, {1.0}, {1.0});
  CHECK(tr == 0.2);
  CHECK(tc == 0.7);
}

TEST_CASE("regrets against best responses") {
  auto g = coordination();
  MixedStrategy e1{1.0, 0.0};
  auto [rr, rc] = regrets(g, e1, e1);
  CHECK(rr == 0.0);
  CHECK(rc == 0.0);

  auto mp = matching_pennies();
  auto [mr, mc] = regrets(mp, e1, e1);
  CHECK(mr == 0.0);
  CHECK(mc == 1.0);

  MixedStrategy u{0.5, 0.5};
  auto [ur, uc] = regrets(mp, u, u);
  CHECK(ur == doctest::Approx(0.0));
  CHECK(uc == doctest::Approx(0.0));
}

TEST_CASE("is_eps_ne thresholds inclusively") {
  auto mp = matching_pennies();
  MixedStrategy u{0.5, 0.5}, e1{1.0, 0.0};
  CHECK(is_eps_ne(mp, u, u, 1e-12));
  CHECK_FALSE(is_eps_ne(mp, e1, e1, 0.5));
  CHECK(is_eps_ne(mp, e1, e1, 1.0));  // boundary inclusive
}

TEST_CASE("relative equilibrium uses multiplicative slack") {
  // row: u = 4 against best 5; |5-4| <= 0.2*5 passes, 0.19 fails
  BimatrixGame g;
  g.R = Matrix(2, 1);
  g.R.at(0, 0) = 4.0;
  g.R.at(1, 0) = 5.0;
  g.C = Matrix(2, 1, -1.0);
  MixedStrategy x{1.0, 0.0}, y{1.0};
  CHECK(is_relative_eps_ne(g, x, y, 0.2));
  CHECK_FALSE(is_relative_eps_ne(g, x, y, 0.19));

  // column: u = -6 against best -5; |{-5}-{-6}| = 1 > 0.1*5
  BimatrixGame k;
  k.R = Matrix(1, 2, 1.0);
  k.C = Matrix(1, 2);
  k.C.at(0, 0) = -6.0;
  k.C.at(0, 1) = -5.0;
  CHECK_FALSE(is_relative_eps_ne(k, {1.0}, {1.0, 0.0}, 0.1));
  CHECK(is_relative_eps_ne(k, {1.0}, {1.0, 0.0}, 0.2));

  auto cg = coordination();
  MixedStrategy e1{1.0, 0.0};
  CHECK(is_relative_eps_ne(cg, e1, e1, 0.0));
}

TEST_CASE("vertex regrets in a polymatrix game") {
  auto p = pennies_edge();
  MixedProfile u;
  u.p = {0.5, 0.5};
  CHECK(vertex_regret(p, u, 0) == doctest::Approx(0.0));
  CHECK(vertex_regret(p, u, 1) == doctest::Approx(0.0));

  MixedProfile zeros;
  zeros.p = {0.0, 0.0};
  // u matches (payoff 1), v wants to flip (regret 1)
  CHECK(vertex_regret(p, zeros, 0) == doctest::Approx(0.0));
  CHECK(vertex_regret(p, zeros, 1) == doctest::Approx(1.0));

  PolymatrixGame iso;
  iso.players = 1;
  MixedProfile single;
  single.p = {0.3};
  CHECK(vertex_regret(iso, single, 0) == 0.0);
}

TEST_CASE("weak equilibrium counts gainers") {
  auto p = pennies_edge();
  MixedProfile u;
  u.p = {0.5, 0.5};
  CHECK(is_weak_eps_delta_ne(p, u, 0.001, 0.0));

  MixedProfile zeros;
  zeros.p = {0.0, 0.0};
  CHECK(is_weak_eps_delta_ne(p, zeros, 0.1, 0.6));  // fraction 0.5 <= 0.6
  CHECK_FALSE(is_weak_eps_delta_ne(p, zeros, 0.1, 0.4));
}

TEST_CASE("well-supported check inspects the support only") {
  auto p = pennies_edge();
  MixedProfile pure;
  pure.p = {1.0, 1.0};
  // u matches: compliant; v plays its worst pure action
  CHECK(is_weak_eps_delta_wsne(p, pure, 0.2, 0.5));
  CHECK_FALSE(is_weak_eps_delta_wsne(p, pure, 0.2, 0.4));
  CHECK(is_weak_eps_delta_wsne(p, pure, 0.2, 1.0));

  // mixing against a pure matcher leaves a bad action in support
  MixedProfile mix;
  mix.p = {1.0, 0.5};
  CHECK_FALSE(is_weak_eps_delta_wsne(p, mix, 0.2, 0.0));

  // well-supported implies weak at the same parameters
  for (double pv : {0.0, 0.3, 0.7, 1.0}) {
    MixedProfile q;
    q.p = {pv, 1.0 - pv};
    if (is_weak_eps_delta_wsne(p, q, 0.3, 0.5))
      CHECK(is_weak_eps_delta_ne(p, q, 0.3, 0.5));
  }
}

TEST_CASE("hide-and-seek game shapes and value") {
  auto g2 = build_althofer(2);
  CHECK(g2.R.rows == 2);
  CHECK(g2.R.cols == 2);
  MixedStrategy u{0.5, 0.5};
  auto [ur, uc] = expected_payoffs(g2, u, u);
  CHECK(ur == doctest::Approx(0.5));
  CHECK(uc == doctest::Approx(0.5));
  CHECK(is_eps_ne(g2, u, u, 1e-12));

  auto g4 = build_althofer(4);
  CHECK(g4.R.cols == 6);
  // uniform hider gets exactly 1/2 against every seeker column
  MixedStrategy hider(4, 0.25);
  for (int j = 0; j < 6; ++j) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += hider[i] * g4.R.at(i, j);
    CHECK(v == doctest::Approx(0.5));
  }
  for (int i = 0; i < g4.R.rows; ++i)
    for (int j = 0; j < g4.R.cols; ++j)
      CHECK(g4.R.at(i, j) + g4.C.at(i, j) == 1.0);

  CHECK_THROWS_AS(build_althofer(3), InputError);
}

TEST_CASE("total variation to uniform") {
  CHECK(tv_to_uniform({0.5, 0.5}) == 0.0);
  CHECK(tv_to_uniform({1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(tv_to_uniform({0.3, 0.7}) == doctest::Approx(0.2));
  CHECK_THROWS_AS(tv_to_uniform({0.3, 0.3}), InputError);
}

TEST_CASE("polymatrix validation") {
  auto p = pennies_edge();
  CHECK(validate_polymatrix(p).empty());

  PolymatrixGame self;
  self.players = 1;
  EdgeGame e;
  e.u = 0;
  e.v = 0;
  self.edges.push_back(e);
  CHECK_FALSE(validate_polymatrix(self).empty());

  PolymatrixGame deg;
  deg.players = 5;
  for (int v = 1; v <= 4; ++v) {
    EdgeGame d;
    d.u = 0;
    d.v = v;
    deg.edges.push_back(d);
  }
  CHECK_FALSE(validate_polymatrix(deg).empty());  // degree 4 > 3

  auto biparted = pennies_edge();
  biparted.bipartition = {{0}, {1}};
  CHECK(validate_polymatrix(biparted).empty());
  biparted.bipartition = {{0, 1}, {}};
  CHECK_FALSE(validate_polymatrix(biparted).empty());
}
