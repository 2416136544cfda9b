#pragma once

#include <cstdint>
#include <vector>

#include "ppadforge/games.hpp"
#include "ppadforge/partition.hpp"

namespace ppadforge {

struct BirthdayParams {
  double eps = 0.0;
  double delta = 0.0;
  double lambda = 0.0;     // default delta^2/16
  double eps_prime = 0.0;  // default eps*delta*lambda/64
  int k = 0;               // default ceil(sqrt(n))

  static BirthdayParams defaults(double eps, double delta, int n);
};

struct BirthdayAction {
  int block = 0;           // controlled subset index
  std::uint64_t alpha = 0; // 2k-bit action vector; bits beyond the block size are inert
  int seeker = 0;          // index into the codec's seeker-set list
};

// Both sides share one codec: action index = (block * 2^(2k) + alpha) * #B + seeker.
struct BirthdayCodec {
  int blocks = 0;
  int alpha_bits = 0;                      // 2k
  std::vector<std::uint64_t> seeker_sets;  // size-(blocks/2) block subsets, ascending masks

  std::uint64_t action_count() const;
  std::uint64_t encode(const BirthdayAction& a) const;
  BirthdayAction decode(std::uint64_t index) const;
};

struct BirthdayGame {
  BimatrixGame game;
  BirthdayParams params;
  BirthdayCodec codec;
  Partition partition;          // side-local vertex indices
  std::vector<int> row_players; // U side, polymatrix player ids in side order
  std::vector<int> col_players; // V side
};

// Adds isolated players to the smaller side until both sides match.
PolymatrixGame pad_to_equal_sides(const PolymatrixGame& p);

// The two-player simulation of a bipartite degree-<=3 polymatrix game: each
// side picks a block of vertices, an action per vertex in it, and a
// seeker set of blocks. Payoff = (main + hide + seek)/3 with the main game
// normalized by lambda/18.
BirthdayGame build_birthday(const PolymatrixGame& p, const BirthdayParams& params,
                            std::uint64_t max_actions = 65536);

// Total probability of actions controlling block i. side: 0 = row, 1 = col.
double subset_marginal(const BirthdayGame& bg, const MixedStrategy& x, int side,
                       int block);

struct UniformityCheck {
  double value = 0.0;  // sum_i |x(S_i) - k/n|
  bool pass = false;   // value <= 12*lambda
};

UniformityCheck uniformity_check(const BirthdayGame& bg, const MixedStrategy& x,
                                 int side);

// Conditional per-vertex mixed strategies; a block of probability zero
// decodes to p = 1 for its vertices.
MixedProfile decode_mixed(const BirthdayGame& bg, const MixedStrategy& x,
                          const MixedStrategy& y);

// Honest encoder: uniform over blocks and seeker sets, independent per-vertex
// actions drawn from q, pad bits pinned to zero. decode(encode(q)) == q.
std::pair<MixedStrategy, MixedStrategy> encode_profile(const BirthdayGame& bg,
                                                       const MixedProfile& q);

struct WeakNeReport {
  MixedProfile decoded;
  std::vector<double> vertex_regrets;
  std::vector<bool> vertex_good;  // own and all neighbor blocks near-uniform
  double good_fraction = 0.0;
  double not_good_fraction = 0.0;
  double gainer_fraction = 0.0;  // vertices with regret > eps
  double row_uniformity = 0.0, col_uniformity = 0.0;
  bool verdict = false;  // weak (eps, delta)-equilibrium of the source game
};

WeakNeReport weak_ne_report(const PolymatrixGame& p, const BirthdayGame& bg,
                            const MixedStrategy& x, const MixedStrategy& y,
                            double eps, double delta);

}  // namespace ppadforge
