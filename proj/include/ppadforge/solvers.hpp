#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ppadforge/games.hpp"

namespace ppadforge {

struct SolverBudget {
  int max_support = 4;                 // support-size cap for enumerations
  int grid_resolution = 2;             // default m for grid search
  long iteration_cap = 100000;         // dynamics iterations
  std::uint64_t action_space_cap = 20'000'000;  // candidate pairs examined
};

// Exact equilibria by support enumeration over equal-size supports up to the
// budget cap. Small systems are solved in exact rational arithmetic; larger
// ones in doubles with a residual check. Every returned pair passes
// is_eps_ne at 1e-7.
std::vector<std::pair<MixedStrategy, MixedStrategy>> support_enumeration(
    const BimatrixGame& g, const SolverBudget& budget = {});

// Exhaustive scan of the simplex grid at resolution m, in lexicographic
// order; returns all pairs passing is_eps_ne(eps).
std::vector<std::pair<MixedStrategy, MixedStrategy>> grid_eps_ne(
    const BimatrixGame& g, int m, double eps, const SolverBudget& budget = {});

struct SmallSupportResult {
  std::optional<std::pair<MixedStrategy, MixedStrategy>> pair;
  int k = 0;               // uniform-multiset size actually used
  bool cap_hit = false;    // enumeration stopped at the pair cap
  std::uint64_t examined = 0;
};

// First k-uniform strategy pair passing is_eps_ne(eps), with
// k = ceil(12*ln(#actions)/eps^2) capped by budget.max_support.
SmallSupportResult small_support_search(const BimatrixGame& g, double eps,
                                        const SolverBudget& budget = {});

struct ValueBracket {
  double lower = 0.0, upper = 0.0;
  long iterations = 0;
};

// Fictitious play on a game that is zero-sum up to an additive constant
// (R + C must be constant within 1e-12). The bracket always contains the
// value of R.
ValueBracket fictitious_play_value(const BimatrixGame& g, long iters);

struct BrdResult {
  MixedProfile profile;
  double max_regret = 0.0;
};

// Synchronous smoothed best-response dynamics with step 1/t.
BrdResult polymatrix_brd(const PolymatrixGame& p, const MixedProfile& init,
                         long iters);

}  // namespace ppadforge
