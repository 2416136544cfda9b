#include "ppadforge/games.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ppadforge {

void check_game(const BimatrixGame& g) {
  if (g.R.rows != g.C.rows || g.R.cols != g.C.cols)
    throw InputError("bimatrix: R and C shapes differ");
  if (g.R.rows <= 0 || g.R.cols <= 0)
    throw InputError("bimatrix: empty payoff matrix");
  for (double v : g.R.a)
    if (!std::isfinite(v)) throw InputError("bimatrix: non-finite entry in R");
  for (double v : g.C.a)
    if (!std::isfinite(v)) throw InputError("bimatrix: non-finite entry in C");
}

void check_mixed(const MixedStrategy& x, int len, const char* who) {
  if (static_cast<int>(x.size()) != len)
    throw InputError(std::string(who) + ": wrong strategy length");
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0) throw InputError(std::string(who) + ": negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError(std::string(who) + ": probabilities sum to " +
                     std::to_string(sum));
}

std::vector<int> PolymatrixGame::degrees() const {
  std::vector<int> d(players, 0);
  for (const EdgeGame& e : edges) {
    ++d[e.u];
    ++d[e.v];
  }
  return d;
}

std::vector<std::string> validate_polymatrix(const PolymatrixGame& p,
                                             const PolyValidateOptions& opts) {
  std::vector<std::string> out;
  std::set<std::pair<int, int>> seen;
  for (const EdgeGame& e : p.edges) {
    if (e.u < 0 || e.u >= p.players || e.v < 0 || e.v >= p.players) {
      out.push_back("edge endpoint out of range");
      continue;
    }
    if (e.u == e.v) out.push_back("self-loop at player " + std::to_string(e.u));
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      out.push_back("duplicate edge {" + std::to_string(key.first) + "," +
                    std::to_string(key.second) + "}");
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (e.au[i][j] < opts.payoff_min || e.au[i][j] > opts.payoff_max ||
            e.av[i][j] < opts.payoff_min || e.av[i][j] > opts.payoff_max) {
          out.push_back("edge {" + std::to_string(e.u) + "," +
                        std::to_string(e.v) + "} payoff out of range");
          i = j = 2;
        }
  }
  for (int v = 0; v < p.players; ++v) {
    int d = 0;
    for (const EdgeGame& e : p.edges)
      if (e.u == v || e.v == v) ++d;
    if (d > opts.degree_cap)
      out.push_back("player " + std::to_string(v) + " has degree " +
                    std::to_string(d) + " > " + std::to_string(opts.degree_cap));
  }
  if (p.bipartition) {
    std::vector<int> side(p.players, -1);
    for (int v : p.bipartition->first) side.at(v) = 0;
    for (int v : p.bipartition->second) {
      if (side.at(v) == 0) out.push_back("player on both sides");
      side[v] = 1;
    }
    for (int v = 0; v < p.players; ++v)
      if (side[v] == -1) out.push_back("player " + std::to_string(v) + " on no side");
    for (const EdgeGame& e : p.edges)
      if (side[e.u] == side[e.v])
        out.push_back("edge {" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "} does not cross bipartition");
  }
  return out;
}

std::pair<double, double> expected_payoffs(const BimatrixGame& g,
                                           const MixedStrategy& x,
                                           const MixedStrategy& y) {
  check_game(g);
  check_mixed(x, g.R.rows, "row strategy");
  check_mixed(y, g.R.cols, "column strategy");
  double ur = 0.0, uc = 0.0;
  for (int i = 0; i < g.R.rows; ++i) {
    double ri = 0.0, ci = 0.0;
    for (int j = 0; j < g.R.cols; ++j) {
      ri += g.R.at(i, j) * y[j];
      ci += g.C.at(i, j) * y[j];
    }
    ur += x[i] * ri;
    uc += x[i] * ci;
  }
  return {ur, uc};
}

static std::vector<double> row_values(const Matrix& R, const MixedStrategy& y) {
  std::vector<double> v(R.rows, 0.0);
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < R.cols; ++j) v[i] += R.at(i, j) * y[j];
  return v;
}

static std::vector<double> col_values(const Matrix& C, const MixedStrategy& x) {
  std::vector<double> v(C.cols, 0.0);
  for (int j = 0; j < C.cols; ++j)
    for (int i = 0; i < C.rows; ++i) v[j] += C.at(i, j) * x[i];
  return v;
}

std::pair<double, double> regrets(const BimatrixGame& g, const MixedStrategy& x,
                                  const MixedStrategy& y) {
  check_game(g);
  check_mixed(x, g.R.rows, "row strategy");
  check_mixed(y, g.R.cols, "column strategy");
  auto rv = row_values(g.R, y);
  auto cv = col_values(g.C, x);
  double best_r = *std::max_element(rv.begin(), rv.end());
  double best_c = *std::max_element(cv.begin(), cv.end());
  double ur = 0.0, uc = 0.0;
  for (int i = 0; i < g.R.rows; ++i) ur += x[i] * rv[i];
  for (int j = 0; j < g.R.cols; ++j) uc += y[j] * cv[j];
  return {std::max(best_r - ur, 0.0), std::max(best_c - uc, 0.0)};
}

bool is_eps_ne(const BimatrixGame& g, const MixedStrategy& x,
               const MixedStrategy& y, double eps) {
  auto [rr, rc] = regrets(g, x, y);
  return std::max(rr, rc) <= eps;
}

bool is_relative_eps_ne(const BimatrixGame& g, const MixedStrategy& x,
                        const MixedStrategy& y, double eps) {
  check_game(g);
  check_mixed(x, g.R.rows, "row strategy");
  check_mixed(y, g.R.cols, "column strategy");
  auto rv = row_values(g.R, y);
  auto cv = col_values(g.C, x);
  double ur = 0.0, uc = 0.0;
  for (int i = 0; i < g.R.rows; ++i) ur += x[i] * rv[i];
  for (int j = 0; j < g.R.cols; ++j) uc += y[j] * cv[j];
  double best_r = *std::max_element(rv.begin(), rv.end());
  double best_c = *std::max_element(cv.begin(), cv.end());
  auto ok = [eps](double u, double best) {
    if (best == 0.0) {
      if (u != 0.0)
        throw InputError("relative check degenerate: best response 0, payoff nonzero");
      return true;
    }
    return std::abs(best - u) <= eps * std::abs(best);
  };
  return ok(ur, best_r) && ok(uc, best_c);
}

std::pair<double, double> vertex_action_payoffs(const PolymatrixGame& p,
                                                const MixedProfile& prof,
                                                int v) {
  if (v < 0 || v >= p.players) throw InputError("unknown player");
  if (static_cast<int>(prof.p.size()) != p.players)
    throw InputError("profile length mismatch");
  double u0 = 0.0, u1 = 0.0;
  for (const EdgeGame& e : p.edges) {
    if (e.u == v) {
      double q = prof.p[e.v];
      u0 += e.au[0][0] * (1 - q) + e.au[0][1] * q;
      u1 += e.au[1][0] * (1 - q) + e.au[1][1] * q;
    } else if (e.v == v) {
      double q = prof.p[e.u];
      u0 += e.av[0][0] * (1 - q) + e.av[0][1] * q;
      u1 += e.av[1][0] * (1 - q) + e.av[1][1] * q;
    }
  }
  return {u0, u1};
}

double vertex_regret(const PolymatrixGame& p, const MixedProfile& prof, int v) {
  auto [u0, u1] = vertex_action_payoffs(p, prof, v);
  double cur = (1 - prof.p[v]) * u0 + prof.p[v] * u1;
  return std::max(std::max(u0, u1) - cur, 0.0);
}

bool is_weak_eps_delta_ne(const PolymatrixGame& p, const MixedProfile& prof,
                          double eps, double delta) {
  int gainers = 0;
  for (int v = 0; v < p.players; ++v)
    if (vertex_regret(p, prof, v) > eps) ++gainers;
  return gainers <= delta * p.players;
}

bool is_weak_eps_delta_wsne(const PolymatrixGame& p, const MixedProfile& prof,
                            double eps, double delta) {
  int bad = 0;
  for (int v = 0; v < p.players; ++v) {
    auto [u0, u1] = vertex_action_payoffs(p, prof, v);
    double best = std::max(u0, u1);
    bool compliant = true;
    if (1.0 - prof.p[v] > kSupportThreshold && u0 < best - eps)
      compliant = false;
    if (prof.p[v] > kSupportThreshold && u1 < best - eps) compliant = false;
    if (!compliant) ++bad;
  }
  return bad <= delta * p.players;
}

BimatrixGame build_althofer(int l) {
  if (l < 2 || l % 2 != 0)
    throw InputError("althofer: location count must be even and >= 2");
  auto sets = subsets_of_size(l, l / 2);
  BimatrixGame g;
  g.R = Matrix(l, static_cast<int>(sets.size()));
  g.C = Matrix(l, static_cast<int>(sets.size()));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < static_cast<int>(sets.size()); ++j) {
      bool hit = (sets[j] >> i) & 1;
      g.R.at(i, j) = hit ? 0.0 : 1.0;
      g.C.at(i, j) = 1.0 - g.R.at(i, j);
    }
  return g;
}

double tv_to_uniform(const std::vector<double>& marginals) {
  if (marginals.empty()) throw InputError("tv_to_uniform: empty vector");
  check_mixed(marginals, static_cast<int>(marginals.size()), "marginals");
  double u = 1.0 / static_cast<double>(marginals.size());
  double s = 0.0;
  for (double m : marginals) s += std::abs(m - u);
  return 0.5 * s;
}

}  // namespace ppadforge
