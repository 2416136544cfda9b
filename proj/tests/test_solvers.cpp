#include <doctest.h>

#include <cmath>
#include <random>

#include "ppadforge/solvers.hpp"

using namespace ppadforge;

namespace {

BimatrixGame matching_pennies() {
  BimatrixGame g;
  g.R = Matrix(2, 2);
  g.C = Matrix(2, 2);
  g.R.at(0, 0) = g.R.at(1, 1) = 1.0;
  g.C.at(0, 1) = g.C.at(1, 0) = 1.0;
  return g;
}

// Closed-form equilibria of a nondegenerate 2x2 game: the pure cells plus
// the interior indifference point when it lies in (0,1)^2. Test oracle.
std::vector<std::pair<MixedStrategy, MixedStrategy>> solve_2x2(
    const BimatrixGame& g) {
  std::vector<std::pair<MixedStrategy, MixedStrategy>> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      bool row_ok = g.R.at(i, j) >= g.R.at(1 - i, j);
      bool col_ok = g.C.at(i, j) >= g.C.at(i, 1 - j);
      if (row_ok && col_ok) {
        MixedStrategy x{0.0, 0.0}, y{0.0, 0.0};
        x[i] = 1.0;
        y[j] = 1.0;
        out.push_back({x, y});
      }
    }
  double dc = g.C.at(0, 0) - g.C.at(0, 1) - g.C.at(1, 0) + g.C.at(1, 1);
  double dr = g.R.at(0, 0) - g.R.at(0, 1) - g.R.at(1, 0) + g.R.at(1, 1);
  if (std::abs(dc) > 1e-9 && std::abs(dr) > 1e-9) {
    double p = (g.C.at(1, 1) - g.C.at(1, 0)) / dc;  // row's prob of action 0
    double q = (g.R.at(1, 1) - g.R.at(0, 1)) / dr;  // col's prob of action 0
    if (p > 1e-9 && p < 1 - 1e-9 && q > 1e-9 && q < 1 - 1e-9)
      out.push_back({{p, 1 - p}, {q, 1 - q}});
  }
  return out;
}

bool contains_pair(
    const std::vector<std::pair<MixedStrategy, MixedStrategy>>& eqs,
    const MixedStrategy& x, const MixedStrategy& y, double tol = 1e-7) {
  for (const auto& [ex, ey] : eqs) {
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) d += std::abs(ex[i] - x[i]);
    for (size_t j = 0; j < y.size(); ++j) d += std::abs(ey[j] - y[j]);
    if (d < tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("support enumeration on the standard toys") {
  auto mp = matching_pennies();
  auto eqs = support_enumeration(mp);
  REQUIRE(eqs.size() == 1);
  CHECK(contains_pair(eqs, {0.5, 0.5}, {0.5, 0.5}));

  BimatrixGame coord;
  coord.R = Matrix(2, 2);
  coord.C = Matrix(2, 2);
  coord.R.at(0, 0) = coord.C.at(0, 0) = 1.0;
  auto ceqs = support_enumeration(coord);
  CHECK(contains_pair(ceqs, {1.0, 0.0}, {1.0, 0.0}));

  for (const auto& [x, y] : eqs) CHECK(is_eps_ne(mp, x, y, 1e-7));
}

TEST_CASE("support enumeration agrees with the closed 2x2 form") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SolverBudget budget;
  for (int trial = 0; trial < 500; ++trial) {
    BimatrixGame g;
    g.R = Matrix(2, 2);
    g.C = Matrix(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        g.R.at(i, j) = unif(rng);
        g.C.at(i, j) = unif(rng);
      }
    auto expect = solve_2x2(g);
    auto got = support_enumeration(g, budget);
    for (const auto& [x, y] : expect) CHECK(contains_pair(got, x, y, 1e-6));
    for (const auto& [x, y] : got) CHECK(is_eps_ne(g, x, y, 1e-7));
  }
}

TEST_CASE("grid search is exhaustive and order-stable") {
  auto mp = matching_pennies();
  auto eqs = grid_eps_ne(mp, 2, 0.5);
  CHECK(contains_pair(eqs, {0.5, 0.5}, {0.5, 0.5}, 1e-12));

  BimatrixGame coord;
  coord.R = Matrix(2, 2);
  coord.C = Matrix(2, 2);
  coord.R.at(0, 0) = coord.C.at(0, 0) = 1.0;
  auto pure = grid_eps_ne(coord, 1, 1e-9);
  CHECK(contains_pair(pure, {1.0, 0.0}, {1.0, 0.0}, 1e-12));

  // independent recount: same game, count matches a fresh enumeration
  auto again = grid_eps_ne(mp, 3, 0.4);
  auto again2 = grid_eps_ne(mp, 3, 0.4);
  CHECK(again.size() == again2.size());

  SolverBudget tiny;
  tiny.action_space_cap = 4;
  CHECK_THROWS_AS(grid_eps_ne(mp, 50, 0.1, tiny), BudgetError);
}

TEST_CASE("small-support search finds pure and uniform equilibria") {
  BimatrixGame coord;
  coord.R = Matrix(2, 2);
  coord.C = Matrix(2, 2);
  coord.R.at(0, 0) = coord.C.at(0, 0) = 1.0;
  auto res = small_support_search(coord, 0.5);
  REQUIRE(res.pair);
  CHECK(is_eps_ne(coord, res.pair->first, res.pair->second, 0.5));

  auto mp = matching_pennies();
  auto mres = small_support_search(mp, 0.1);
  REQUIRE(mres.pair);
  CHECK(mres.k >= 2);
  CHECK(is_eps_ne(mp, mres.pair->first, mres.pair->second, 0.1));

  SolverBudget starved;
  starved.max_support = 2;
  starved.action_space_cap = 1;
  auto capped = small_support_search(mp, 1e-6, starved);
  CHECK(capped.cap_hit);
  CHECK_FALSE(capped.pair);
}

TEST_CASE("fictitious play brackets the value") {
  // zero-sum pennies: R win/lose, C = -R
  BimatrixGame zs;
  zs.R = Matrix(2, 2);
  zs.C = Matrix(2, 2);
  zs.R.at(0, 0) = zs.R.at(1, 1) = 1.0;
  zs.C.at(0, 0) = zs.C.at(1, 1) = -1.0;
  auto b = fictitious_play_value(zs, 10000);
  CHECK(b.lower <= 0.5);
  CHECK(b.upper >= 0.5);
  CHECK(b.upper - b.lower <= 0.05);

  BimatrixGame constant;
  constant.R = Matrix(1, 1, 0.3);
  constant.C = Matrix(1, 1, -0.3);
  auto cb = fictitious_play_value(constant, 1);
  CHECK(cb.lower == 0.3);
  CHECK(cb.upper == 0.3);

  BimatrixGame not_zs;
  not_zs.R = Matrix(2, 2, 1.0);
  not_zs.C = Matrix(2, 2, 1.0);
  not_zs.C.at(0, 0) = 0.5;
  CHECK_THROWS_AS(fictitious_play_value(not_zs, 10), InputError);
}

TEST_CASE("best-response dynamics on a single mismatch edge") {
  PolymatrixGame p;
  p.players = 2;
  EdgeGame e;
  e.u = 0;
  e.v = 1;
  e.au[0][0] = e.au[1][1] = 1.0;
  e.av[0][1] = e.av[1][0] = 1.0;
  p.edges.push_back(e);

  MixedProfile init;
  init.p = {0.9, 0.2};
  auto res = polymatrix_brd(p, init, 10000);
  CHECK(res.max_regret < 0.05);
  for (double v : res.profile.p) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  PolymatrixGame iso;
  iso.players = 3;
  MixedProfile i3;
  i3.p = {0.1, 0.5, 0.9};
  auto r3 = polymatrix_brd(iso, i3, 5);
  CHECK(r3.max_regret == 0.0);
}
