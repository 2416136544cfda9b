#include "ppadforge/relative.hpp"

#include <algorithm>
#include <cmath>

namespace ppadforge {

RelativeParams RelativeParams::defaults(double eps, double delta) {
  RelativeParams p;
  p.eta = delta * delta / 16.0;
  p.lambda = 10.0 * p.eta;
  p.eps_prime = eps * delta * delta * delta / 256.0;
  return p;
}

RelativeGame build_relative(const PolymatrixGame& p, const RelativeParams& params) {
  if (!p.bipartition)
    throw InputError("build_relative: source game must carry a bipartition");
  auto errs = validate_polymatrix(p);
  if (!errs.empty()) throw InputError("build_relative: " + errs.front());
  if (!(params.eta > 0) || !(params.eps_prime > 0) ||
      !(params.eps_prime < params.eta))
    throw InputError("build_relative: need 0 < eps_prime < eta");
  const auto& [u_side, v_side] = *p.bipartition;
  if (u_side.size() != v_side.size())
    throw InputError("build_relative: sides must have equal size (pad first)");

  RelativeGame g;
  g.params = params;
  g.n = static_cast<int>(u_side.size());
  g.row_players = u_side;
  g.col_players = v_side;

  // Edge table per adjacent (row node, col node), from each side's view.
  std::vector<int> u_local(p.players, -1), v_local(p.players, -1);
  for (int i = 0; i < g.n; ++i) u_local[u_side[i]] = i;
  for (int j = 0; j < g.n; ++j) v_local[v_side[j]] = j;
  struct Tables {
    bool adjacent = false;
    double row[2][2] = {{0, 0}, {0, 0}};  // [row action][col action]
    double col[2][2] = {{0, 0}, {0, 0}};
  };
  std::vector<std::vector<Tables>> edge(g.n, std::vector<Tables>(g.n));
  for (const EdgeGame& e : p.edges) {
    bool u_is_row = u_local[e.u] >= 0;
    int i = u_is_row ? u_local[e.u] : u_local[e.v];
    int j = u_is_row ? v_local[e.v] : v_local[e.u];
    if (i < 0 || j < 0)
      throw InputError("build_relative: edge does not cross the bipartition");
    Tables& t = edge[i][j];
    t.adjacent = true;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        t.row[a][b] = u_is_row ? e.au[a][b] : e.av[a][b];
        t.col[a][b] = u_is_row ? e.av[b][a] : e.au[b][a];
      }
  }

  const int N = g.action_count();
  g.game.R = Matrix(N, N);
  g.game.C = Matrix(N, N);
  for (int ra = 0; ra < N; ++ra) {
    RelativeAction a = g.decode(ra);
    for (int ca = 0; ca < N; ++ca) {
      RelativeAction b = g.decode(ca);
      double r = 0.0, c = 0.0;
      const Tables& t = edge[a.node][b.node];
      if (t.adjacent) {
        r += 1.0 + params.eta * t.row[a.action][b.action];
        c += -1.0 - params.eta * (1.0 - t.col[b.action][a.action]);
      }
      if (a.node == b.extra) {  // column hides where the row player sits
        r += 1.0;
        c += -1.0;
      }
      if (a.extra == b.node) {  // row player guesses the column's node
        r += 1.0;
        c += -1.0;
      }
      g.game.R.at(ra, ca) = r;
      g.game.C.at(ra, ca) = c;
    }
  }
  return g;
}

bool approx_zero_sum_check(const RelativeGame& g, const MixedStrategy& x,
                           const MixedStrategy& y) {
  auto [ur, uc] = expected_payoffs(g.game, x, y);
  return std::abs(ur + uc) <= g.params.eta * std::min(ur, -uc) + 1e-12;
}

double node_marginal(const RelativeGame& g, const MixedStrategy& x, int node) {
  if (node < 0 || node >= g.n) throw InputError("node_marginal: bad node");
  check_mixed(x, g.action_count(), "strategy");
  double s = 0.0;
  for (int idx = 0; idx < g.action_count(); ++idx)
    if (g.decode(idx).node == node) s += x[idx];
  return s;
}

double node_action_conditional(const RelativeGame& g, const MixedStrategy& x,
                               int node) {
  double mass = node_marginal(g, x, node);
  if (mass <= 0.0) return 1.0;
  double hit = 0.0;
  for (int idx = 0; idx < g.action_count(); ++idx) {
    RelativeAction a = g.decode(idx);
    if (a.node == node && a.action == 1) hit += x[idx];
  }
  return hit / mass;
}

StructureCheck structure_check(const RelativeGame& g, const MixedStrategy& x,
                               const MixedStrategy& y) {
  StructureCheck out;
  for (int i = 0; i < g.n; ++i) {
    out.row_deviation += std::abs(node_marginal(g, x, i) - 1.0 / g.n);
    out.col_deviation += std::abs(node_marginal(g, y, i) - 1.0 / g.n);
  }
  out.pass = out.row_deviation <= g.params.lambda &&
             out.col_deviation <= g.params.lambda;
  return out;
}

MixedProfile decode_relative(const RelativeGame& g, const MixedStrategy& x,
                             const MixedStrategy& y) {
  int players = 0;
  for (int v : g.row_players) players = std::max(players, v + 1);
  for (int v : g.col_players) players = std::max(players, v + 1);
  MixedProfile prof;
  prof.p.assign(players, 0.0);
  for (int i = 0; i < g.n; ++i) {
    prof.p[g.row_players[i]] = node_action_conditional(g, x, i);
    prof.p[g.col_players[i]] = node_action_conditional(g, y, i);
  }
  return prof;
}

std::pair<MixedStrategy, MixedStrategy> encode_relative(const RelativeGame& g,
                                                        const MixedProfile& q) {
  MixedStrategy x(g.action_count(), 0.0), y(g.action_count(), 0.0);
  for (int idx = 0; idx < g.action_count(); ++idx) {
    RelativeAction a = g.decode(idx);
    double base = 1.0 / (g.n * static_cast<double>(g.n));
    double pr = q.p[g.row_players[a.node]];
    double pc = q.p[g.col_players[a.node]];
    x[idx] = base * (a.action ? pr : 1.0 - pr);
    y[idx] = base * (a.action ? pc : 1.0 - pc);
  }
  return {x, y};
}

UtilityBoundsReport utility_bounds_check(const RelativeGame& g,
                                         const MixedStrategy& x,
                                         const MixedStrategy& y) {
  UtilityBoundsReport rep;
  auto [ur, uc] = expected_payoffs(g.game, x, y);
  rep.u_row = ur;
  rep.u_col = uc;
  const double n = g.n, eta = g.params.eta, ep = g.params.eps_prime;
  rep.row_lower = (1 - ep) * 5.0 / n <= ur + 1e-12;
  rep.row_upper = ur <= (1 + eta) * (1 + ep) * (5 + 3 * eta) / n + 1e-12;
  rep.col_upper = -(1 - ep) * (1 - eta) * 5.0 / n >= uc - 1e-12;
  rep.col_lower = uc >= -(1 + ep) * (5 + 3 * eta) / n - 1e-12;
  return rep;
}

}  // namespace ppadforge
