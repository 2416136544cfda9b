#pragma once

#include <vector>

#include "ppadforge/games.hpp"

namespace ppadforge {

struct RelativeParams {
  double eta = 0.0;        // default delta^2/16
  double lambda = 0.0;     // always 10*eta
  double eps_prime = 0.0;  // default eps*delta^3/256

  static RelativeParams defaults(double eps, double delta);
};

// Action triple of one side: a node, an action for that node, and a
// chase/hide index for the side game. index = (node*2 + action)*n + extra.
struct RelativeAction {
  int node = 0;
  int action = 0;
  int extra = 0;  // row: guess of the column's node; column: hiding spot
};

struct RelativeGame {
  BimatrixGame game;
  RelativeParams params;
  int n = 0;                     // nodes per side
  std::vector<int> row_players;  // node index -> polymatrix player id
  std::vector<int> col_players;

  int action_count() const { return 2 * n * n; }
  int encode(const RelativeAction& a) const { return (a.node * 2 + a.action) * n + a.extra; }
  RelativeAction decode(int idx) const {
    return {idx / (2 * n), (idx / n) % 2, idx % n};
  }
};

// Adjacent node pairs play their edge game scaled into [1, 1+eta] for the
// row player and [-(1+eta), -1] for the column player; non-adjacent pairs
// score zero. Two chasing side games add +1/-1 when the row player's node is
// guessed (extra of the column) or the row player guesses the column's node.
RelativeGame build_relative(const PolymatrixGame& p, const RelativeParams& params);

// |U_R + U_C| <= eta * min(U_R, -U_C) at the given mixed pair.
bool approx_zero_sum_check(const RelativeGame& g, const MixedStrategy& x,
                           const MixedStrategy& y);

// Total probability the side assigns to a node, and the conditional
// probability of action 1 given the node (1 when the node has mass zero).
double node_marginal(const RelativeGame& g, const MixedStrategy& x, int node);
double node_action_conditional(const RelativeGame& g, const MixedStrategy& x,
                               int node);

struct StructureCheck {
  double row_deviation = 0.0;  // sum_i |x(i) - 1/n|
  double col_deviation = 0.0;
  bool pass = false;           // both <= lambda
};

StructureCheck structure_check(const RelativeGame& g, const MixedStrategy& x,
                               const MixedStrategy& y);

MixedProfile decode_relative(const RelativeGame& g, const MixedStrategy& x,
                             const MixedStrategy& y);

// Honest encoder used by round-trip tests: uniform nodes and extras, action
// per q.
std::pair<MixedStrategy, MixedStrategy> encode_relative(const RelativeGame& g,
                                                        const MixedProfile& q);

struct UtilityBoundsReport {
  double u_row = 0.0, u_col = 0.0;
  bool row_lower = false, row_upper = false;  // (1-e')5/n <= U_R <= (1+eta)(1+e')(5+3eta)/n
  bool col_lower = false, col_upper = false;  // -(1-e')(1-eta)5/n >= U_C >= -(1+e')(5+3eta)/n
};

UtilityBoundsReport utility_bounds_check(const RelativeGame& g,
                                         const MixedStrategy& x,
                                         const MixedStrategy& y);

}  // namespace ppadforge
