#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppadforge/util.hpp"

namespace ppadforge {

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}
  double& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double at(int i, int j) const {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

struct BimatrixGame {
  Matrix R, C;  // same shape; R for the row player, C for the column player
};

// Probability vector; entries >= 0 summing to 1 within 1e-9.
using MixedStrategy = std::vector<double>;

void check_game(const BimatrixGame& g);
void check_mixed(const MixedStrategy& x, int len, const char* who);

// Per-edge two-player game inside a polymatrix game. Payoff tables are
// indexed [own action][other's action].
struct EdgeGame {
  int u = 0, v = 0;
  double au[2][2] = {{0, 0}, {0, 0}};  // payoff to u
  double av[2][2] = {{0, 0}, {0, 0}};  // payoff to v
};

// Graphical game with 2 actions per player and payoffs summed over incident
// edges. The optional bipartition lists the two sides by player index.
struct PolymatrixGame {
  int players = 0;
  std::vector<EdgeGame> edges;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition;

  std::vector<int> degrees() const;
};

struct PolyValidateOptions {
  int degree_cap = 3;
  double payoff_min = 0.0;
  double payoff_max = 1.0;
};

std::vector<std::string> validate_polymatrix(const PolymatrixGame& p,
                                             const PolyValidateOptions& opts = {});

// p[v] = probability that player v plays action 1.
struct MixedProfile {
  std::vector<double> p;
};

// (u_R, u_C) = (x'Ry, x'Cy), fixed summation order.
std::pair<double, double> expected_payoffs(const BimatrixGame& g,
                                           const MixedStrategy& x,
                                           const MixedStrategy& y);

// (r_R, r_C): best-response value minus achieved payoff, per player.
std::pair<double, double> regrets(const BimatrixGame& g,
                                  const MixedStrategy& x,
                                  const MixedStrategy& y);

bool is_eps_ne(const BimatrixGame& g, const MixedStrategy& x,
               const MixedStrategy& y, double eps);

// Multiplicative notion: |u* - u| <= eps*|u*| for both players. Throws
// InputError when a player has u* = 0 but u != 0.
bool is_relative_eps_ne(const BimatrixGame& g, const MixedStrategy& x,
                        const MixedStrategy& y, double eps);

// Expected payoffs of player v's two actions under the profile.
std::pair<double, double> vertex_action_payoffs(const PolymatrixGame& p,
                                                const MixedProfile& prof,
                                                int v);

double vertex_regret(const PolymatrixGame& p, const MixedProfile& prof, int v);

// At most a delta-fraction of players may gain more than eps by deviating.
bool is_weak_eps_delta_ne(const PolymatrixGame& p, const MixedProfile& prof,
                          double eps, double delta);

inline constexpr double kSupportThreshold = 1e-9;

// Weak well-supported variant: a player complies when every action played
// with probability > 1e-9 is within eps of its best response.
bool is_weak_eps_delta_wsne(const PolymatrixGame& p, const MixedProfile& prof,
                            double eps, double delta);

// Hide-and-seek game over l locations: the hider picks i, the seeker picks a
// size-l/2 subset B (columns ordered by ascending bitmask); the hider wins
// iff i is outside B. Stored in the win-lose form u2 = 1 - u1.
BimatrixGame build_althofer(int l);

// Total variation distance from the uniform distribution over the support
// length of `marginals`.
double tv_to_uniform(const std::vector<double>& marginals);

}  // namespace ppadforge
