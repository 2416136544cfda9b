#include "ppadforge/birthday.hpp"

#include <algorithm>
#include <cmath>

namespace ppadforge {

BirthdayParams BirthdayParams::defaults(double eps, double delta, int n) {
  BirthdayParams p;
  p.eps = eps;
  p.delta = delta;
  p.lambda = delta * delta / 16.0;
  p.eps_prime = eps * delta * p.lambda / 64.0;
  p.k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  return p;
}

std::uint64_t BirthdayCodec::action_count() const {
  return static_cast<std::uint64_t>(blocks) * (std::uint64_t{1} << alpha_bits) *
         seeker_sets.size();
}

std::uint64_t BirthdayCodec::encode(const BirthdayAction& a) const {
  return (static_cast<std::uint64_t>(a.block) << alpha_bits | a.alpha) *
             seeker_sets.size() +
         a.seeker;
}

BirthdayAction BirthdayCodec::decode(std::uint64_t index) const {
  BirthdayAction a;
  a.seeker = static_cast<int>(index % seeker_sets.size());
  std::uint64_t rest = index / seeker_sets.size();
  a.alpha = rest & ((std::uint64_t{1} << alpha_bits) - 1);
  a.block = static_cast<int>(rest >> alpha_bits);
  return a;
}

PolymatrixGame pad_to_equal_sides(const PolymatrixGame& p) {
  if (!p.bipartition) throw InputError("pad_to_equal_sides: bipartition required");
  PolymatrixGame out = p;
  auto& [u_side, v_side] = *out.bipartition;
  while (u_side.size() < v_side.size()) u_side.push_back(out.players++);
  while (v_side.size() < u_side.size()) v_side.push_back(out.players++);
  return out;
}

namespace {

struct SideLayout {
  // side-local vertex index -> (block, position inside block)
  std::vector<std::pair<int, int>> slot_of;
};

SideLayout layout_of(const std::vector<std::vector<int>>& parts, int n) {
  SideLayout s;
  s.slot_of.assign(n, {-1, -1});
  for (int b = 0; b < static_cast<int>(parts.size()); ++b)
    for (int pos = 0; pos < static_cast<int>(parts[b].size()); ++pos)
      s.slot_of[parts[b][pos]] = {b, pos};
  return s;
}

}  // namespace

BirthdayGame build_birthday(const PolymatrixGame& p, const BirthdayParams& params,
                            std::uint64_t max_actions) {
  if (!p.bipartition)
    throw InputError("build_birthday: source game must carry a bipartition");
  auto errs = validate_polymatrix(p);
  if (!errs.empty()) throw InputError("build_birthday: " + errs.front());
  const auto& [u_side, v_side] = *p.bipartition;
  if (u_side.size() != v_side.size())
    throw InputError("build_birthday: sides must have equal size (pad first)");
  const int n = static_cast<int>(u_side.size());
  if (!(params.lambda > params.eps_prime) || !(params.eps_prime > 0))
    throw InputError("build_birthday: need lambda > eps_prime > 0");

  BirthdayGame bg;
  bg.params = params;
  bg.row_players = u_side;
  bg.col_players = v_side;

  // Side-local reindexing, then the greedy block partition of the
  // interaction graph.
  std::vector<int> u_local(p.players, -1), v_local(p.players, -1);
  for (int i = 0; i < n; ++i) u_local[u_side[i]] = i;
  for (int j = 0; j < n; ++j) v_local[v_side[j]] = j;
  BipartiteGraph graph;
  graph.n = n;
  graph.d = 3;
  for (const EdgeGame& e : p.edges) {
    int u = u_local[e.u] >= 0 ? u_local[e.u] : u_local[e.v];
    int v = v_local[e.v] >= 0 ? v_local[e.v] : v_local[e.u];
    if (u < 0 || v < 0)
      throw InputError("build_birthday: edge does not cross the bipartition");
    graph.edges.push_back({u, v});
  }
  bg.partition = greedy_partition(graph, params.k);

  const int blocks = static_cast<int>(bg.partition.S_parts.size());
  bg.codec.blocks = blocks;
  bg.codec.alpha_bits = 2 * params.k;
  bg.codec.seeker_sets = subsets_of_size(blocks, (blocks + 1) / 2);
  const std::uint64_t actions = bg.codec.action_count();
  if (actions > max_actions)
    throw BudgetError("build_birthday: " + std::to_string(actions) +
                      " actions per side exceeds cap " +
                      std::to_string(max_actions));

  SideLayout su = layout_of(bg.partition.S_parts, n);
  SideLayout sv = layout_of(bg.partition.T_parts, n);

  // Edges grouped by block pair, with endpoint bit positions.
  struct LocalEdge {
    int pos_u, pos_v;
    const EdgeGame* e;
    bool u_is_row;  // true when e->u lies on the row side
  };
  std::vector<std::vector<std::vector<LocalEdge>>> by_pair(
      blocks, std::vector<std::vector<LocalEdge>>(blocks));
  for (const EdgeGame& e : p.edges) {
    bool u_is_row = u_local[e.u] >= 0;
    int lu = u_is_row ? u_local[e.u] : u_local[e.v];
    int lv = u_is_row ? v_local[e.v] : v_local[e.u];
    auto [bu, pu] = su.slot_of[lu];
    auto [bv, pv] = sv.slot_of[lv];
    by_pair[bu][bv].push_back({pu, pv, &e, u_is_row});
  }

  const double scale = params.lambda / 18.0;
  const int N = static_cast<int>(actions);
  bg.game.R = Matrix(N, N);
  bg.game.C = Matrix(N, N);
  for (int ra = 0; ra < N; ++ra) {
    BirthdayAction a = bg.codec.decode(ra);
    std::uint64_t b_row = bg.codec.seeker_sets[a.seeker];
    for (int ca = 0; ca < N; ++ca) {
      BirthdayAction b = bg.codec.decode(ca);
      std::uint64_t b_col = bg.codec.seeker_sets[b.seeker];
      double main_r = 0.0, main_c = 0.0;
      for (const LocalEdge& le : by_pair[a.block][b.block]) {
        int au_act = (a.alpha >> le.pos_u) & 1;
        int av_act = (b.alpha >> le.pos_v) & 1;
        if (le.u_is_row) {
          main_r += le.e->au[au_act][av_act];
          main_c += le.e->av[av_act][au_act];
        } else {
          main_r += le.e->av[au_act][av_act];
          main_c += le.e->au[av_act][au_act];
        }
      }
      main_r *= scale;
      main_c *= scale;
      double hide_r = ((b_col >> a.block) & 1) ? 0.0 : 1.0;
      double seek_r = ((b_row >> b.block) & 1) ? 1.0 : 0.0;
      double hide_c = ((b_row >> b.block) & 1) ? 0.0 : 1.0;
      double seek_c = ((b_col >> a.block) & 1) ? 1.0 : 0.0;
      bg.game.R.at(ra, ca) = (main_r + hide_r + seek_r) / 3.0;
      bg.game.C.at(ra, ca) = (main_c + hide_c + seek_c) / 3.0;
      if (bg.game.R.at(ra, ca) < 0.0 || bg.game.R.at(ra, ca) > 1.0 ||
          bg.game.C.at(ra, ca) < 0.0 || bg.game.C.at(ra, ca) > 1.0)
        throw InternalError("build_birthday: payoff left [0,1]");
    }
  }
  return bg;
}

double subset_marginal(const BirthdayGame& bg, const MixedStrategy& x, int side,
                       int block) {
  (void)side;  // both sides share the codec
  if (block < 0 || block >= bg.codec.blocks)
    throw InputError("subset_marginal: block index out of range");
  check_mixed(x, static_cast<int>(bg.codec.action_count()), "strategy");
  double s = 0.0;
  for (std::uint64_t idx = 0; idx < x.size(); ++idx)
    if (bg.codec.decode(idx).block == block) s += x[idx];
  return s;
}

UniformityCheck uniformity_check(const BirthdayGame& bg, const MixedStrategy& x,
                                 int side) {
  UniformityCheck out;
  const int n = static_cast<int>(bg.row_players.size());
  const double target = static_cast<double>(bg.params.k) / n;
  for (int b = 0; b < bg.codec.blocks; ++b)
    out.value += std::abs(subset_marginal(bg, x, side, b) - target);
  out.pass = out.value <= 12.0 * bg.params.lambda;
  return out;
}

namespace {

// Conditional probability of action 1 per vertex of one side.
void decode_side(const BirthdayGame& bg, const MixedStrategy& x,
                 const std::vector<std::vector<int>>& parts,
                 const std::vector<int>& players, MixedProfile& prof) {
  for (int b = 0; b < static_cast<int>(parts.size()); ++b) {
    double mass = 0.0;
    std::vector<double> bit_mass(parts[b].size(), 0.0);
    for (std::uint64_t idx = 0; idx < x.size(); ++idx) {
      BirthdayAction a = bg.codec.decode(idx);
      if (a.block != b) continue;
      mass += x[idx];
      for (size_t pos = 0; pos < parts[b].size(); ++pos)
        if ((a.alpha >> pos) & 1) bit_mass[pos] += x[idx];
    }
    for (size_t pos = 0; pos < parts[b].size(); ++pos) {
      int player = players[parts[b][pos]];
      prof.p[player] = mass > 0.0 ? bit_mass[pos] / mass : 1.0;
    }
  }
}

}  // namespace

MixedProfile decode_mixed(const BirthdayGame& bg, const MixedStrategy& x,
                          const MixedStrategy& y) {
  int players = 0;
  for (int v : bg.row_players) players = std::max(players, v + 1);
  for (int v : bg.col_players) players = std::max(players, v + 1);
  MixedProfile prof;
  prof.p.assign(players, 0.0);
  decode_side(bg, x, bg.partition.S_parts, bg.row_players, prof);
  decode_side(bg, y, bg.partition.T_parts, bg.col_players, prof);
  return prof;
}

namespace {

MixedStrategy encode_side(const BirthdayGame& bg,
                          const std::vector<std::vector<int>>& parts,
                          const std::vector<int>& players,
                          const MixedProfile& q) {
  const std::uint64_t count = bg.codec.action_count();
  MixedStrategy x(count, 0.0);
  const double base =
      1.0 / (bg.codec.blocks * static_cast<double>(bg.codec.seeker_sets.size()));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    BirthdayAction a = bg.codec.decode(idx);
    const auto& part = parts[a.block];
    double w = base;
    for (int pos = 0; pos < bg.codec.alpha_bits && w > 0.0; ++pos) {
      bool bit = (a.alpha >> pos) & 1;
      if (pos < static_cast<int>(part.size())) {
        double pv = q.p[players[part[pos]]];
        w *= bit ? pv : 1.0 - pv;
      } else if (bit) {
        w = 0.0;  // pad bits carry no mass
      }
    }
    x[idx] = w;
  }
  return x;
}

}  // namespace

std::pair<MixedStrategy, MixedStrategy> encode_profile(const BirthdayGame& bg,
                                                       const MixedProfile& q) {
  return {encode_side(bg, bg.partition.S_parts, bg.row_players, q),
          encode_side(bg, bg.partition.T_parts, bg.col_players, q)};
}

WeakNeReport weak_ne_report(const PolymatrixGame& p, const BirthdayGame& bg,
                            const MixedStrategy& x, const MixedStrategy& y,
                            double eps, double delta) {
  WeakNeReport rep;
  rep.decoded = decode_mixed(bg, x, y);
  if (static_cast<int>(rep.decoded.p.size()) < p.players)
    rep.decoded.p.resize(p.players, 1.0);

  const int n = static_cast<int>(bg.row_players.size());
  const double target = static_cast<double>(bg.params.k) / n;
  const double slack = 8.0 * std::sqrt(bg.params.lambda) * target;
  std::vector<bool> row_good(bg.codec.blocks), col_good(bg.codec.blocks);
  for (int b = 0; b < bg.codec.blocks; ++b) {
    row_good[b] = std::abs(subset_marginal(bg, x, 0, b) - target) <= slack;
    col_good[b] = std::abs(subset_marginal(bg, y, 1, b) - target) <= slack;
    rep.row_uniformity += std::abs(subset_marginal(bg, x, 0, b) - target);
    rep.col_uniformity += std::abs(subset_marginal(bg, y, 1, b) - target);
  }

  // Vertex -> its side/block, for the goodness classification.
  std::vector<int> block_of(p.players, -1), side_of(p.players, -1);
  for (int b = 0; b < bg.codec.blocks; ++b) {
    for (int lu : bg.partition.S_parts[b]) {
      block_of[bg.row_players[lu]] = b;
      side_of[bg.row_players[lu]] = 0;
    }
    for (int lv : bg.partition.T_parts[b]) {
      block_of[bg.col_players[lv]] = b;
      side_of[bg.col_players[lv]] = 1;
    }
  }
  auto good_block = [&](int player) {
    return side_of[player] == 0 ? row_good[block_of[player]]
                                : col_good[block_of[player]];
  };
  rep.vertex_good.assign(p.players, true);
  for (int v = 0; v < p.players; ++v) {
    if (block_of[v] < 0 || !good_block(v)) {
      rep.vertex_good[v] = false;
      continue;
    }
    for (const EdgeGame& e : p.edges) {
      int other = e.u == v ? e.v : (e.v == v ? e.u : -1);
      if (other >= 0 && (block_of[other] < 0 || !good_block(other)))
        rep.vertex_good[v] = false;
    }
  }

  int gainers = 0, good = 0;
  rep.vertex_regrets.resize(p.players);
  for (int v = 0; v < p.players; ++v) {
    rep.vertex_regrets[v] = vertex_regret(p, rep.decoded, v);
    if (rep.vertex_regrets[v] > eps) ++gainers;
    if (rep.vertex_good[v]) ++good;
  }
  rep.gainer_fraction = static_cast<double>(gainers) / p.players;
  rep.good_fraction = static_cast<double>(good) / p.players;
  rep.not_good_fraction = 1.0 - rep.good_fraction;
  rep.verdict = is_weak_eps_delta_ne(p, rep.decoded, eps, delta);
  return rep;
}

}  // namespace ppadforge
