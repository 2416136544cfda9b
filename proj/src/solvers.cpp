#include "ppadforge/solvers.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppadforge {

namespace {

using Rational = boost::multiprecision::cpp_rational;

Rational rational_of(double d) {
  // Doubles are dyadic rationals; decompose exactly.
  if (d == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(d, &exp);  // d = m * 2^exp, |m| in [0.5, 1)
  long long mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0)
    r *= Rational(boost::multiprecision::cpp_int(1) << exp);
  else
    r /= Rational(boost::multiprecision::cpp_int(1) << -exp);
  return r;
}

// Solves A z = b by Gaussian elimination over rationals. Returns false when
// the system is singular.
bool solve_rational(std::vector<std::vector<Rational>> A,
                    std::vector<Rational> b, std::vector<Rational>& z) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      Rational f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  z.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) z[i] = b[i] / A[i][i];
  return true;
}

bool solve_double(std::vector<std::vector<double>> A, std::vector<double> b,
                  std::vector<double>& z) {
  const int n = static_cast<int>(A.size());
  std::vector<std::vector<double>> A0 = A;
  std::vector<double> b0 = b;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-14) return false;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  z.assign(n, 0.0);
  for (int i = 0; i < n; ++i) z[i] = b[i] / A[i][i];
  for (int i = 0; i < n; ++i) {  // residual check
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += A0[i][j] * z[j];
    if (std::abs(s - b0[i]) > 1e-9) return false;
  }
  return true;
}

// Mixed strategy on `support` making the opponent indifferent across
// `opp_support`, where value(i, j) is the opponent's payoff for action j
// against our action i. Returns empty on failure.
template <typename ValueFn>
std::optional<std::vector<double>> indifference_mix(
    const std::vector<int>& support, const std::vector<int>& opp_support,
    ValueFn value) {
  const int s = static_cast<int>(support.size());
  // Unknowns: probabilities on our support. Equations: payoffs of
  // consecutive opponent-support actions are equal, plus normalization.
  if (s <= 12) {
    std::vector<std::vector<Rational>> A(s, std::vector<Rational>(s, 0));
    std::vector<Rational> b(s, 0);
    for (int e = 0; e + 1 < s; ++e)
      for (int i = 0; i < s; ++i)
        A[e][i] = rational_of(value(support[i], opp_support[e])) -
                  rational_of(value(support[i], opp_support[e + 1]));
    for (int i = 0; i < s; ++i) A[s - 1][i] = 1;
    b[s - 1] = 1;
    std::vector<Rational> z;
    if (!solve_rational(A, b, z)) return std::nullopt;
    std::vector<double> out(s);
    for (int i = 0; i < s; ++i) {
      if (z[i] < 0) return std::nullopt;
      out[i] = static_cast<double>(z[i]);
    }
    return out;
  }
  std::vector<std::vector<double>> A(s, std::vector<double>(s, 0.0));
  std::vector<double> b(s, 0.0);
  for (int e = 0; e + 1 < s; ++e)
    for (int i = 0; i < s; ++i)
      A[e][i] =
          value(support[i], opp_support[e]) - value(support[i], opp_support[e + 1]);
  for (int i = 0; i < s; ++i) A[s - 1][i] = 1.0;
  b[s - 1] = 1.0;
  std::vector<double> z;
  if (!solve_double(A, b, z)) return std::nullopt;
  for (double v : z)
    if (v < -1e-12) return std::nullopt;
  for (double& v : z) v = std::max(v, 0.0);
  return z;
}

std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask : subsets_of_size(n, k)) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<std::pair<MixedStrategy, MixedStrategy>> support_enumeration(
    const BimatrixGame& g, const SolverBudget& budget) {
  check_game(g);
  const int rows = g.R.rows, cols = g.R.cols;
  const int cap = std::min({budget.max_support, rows, cols});
  std::vector<std::pair<MixedStrategy, MixedStrategy>> found;
  std::uint64_t examined = 0;
  for (int s = 1; s <= cap; ++s) {
    std::uint64_t pairs = choose(rows, s) * choose(cols, s);
    examined += pairs;
    if (examined > budget.action_space_cap)
      throw BudgetError("support_enumeration: support pairs exceed cap " +
                        std::to_string(budget.action_space_cap));
    auto row_supports = index_subsets(rows, s);
    auto col_supports = index_subsets(cols, s);
    for (const auto& sx : row_supports)
      for (const auto& sy : col_supports) {
        // y makes the row player indifferent over sx, x does the same for
        // the column player over sy.
        auto y = indifference_mix(
            sy, sx, [&](int j, int i) { return g.R.at(i, j); });
        if (!y) continue;
        auto x = indifference_mix(
            sx, sy, [&](int i, int j) { return g.C.at(i, j); });
        if (!x) continue;
        MixedStrategy xf(rows, 0.0), yf(cols, 0.0);
        for (int i = 0; i < s; ++i) xf[sx[i]] = (*x)[i];
        for (int j = 0; j < s; ++j) yf[sy[j]] = (*y)[j];
        if (!is_eps_ne(g, xf, yf, 1e-7)) continue;
        bool dup = false;
        for (const auto& [px, py] : found) {
          double d = 0.0;
          for (int i = 0; i < rows; ++i) d += std::abs(px[i] - xf[i]);
          for (int j = 0; j < cols; ++j) d += std::abs(py[j] - yf[j]);
          if (d < 1e-9) {
            dup = true;
            break;
          }
        }
        if (!dup) found.emplace_back(std::move(xf), std::move(yf));
      }
  }
  return found;
}

static std::vector<MixedStrategy> simplex_grid(int m, int dims) {
  std::vector<MixedStrategy> out;
  for (const auto& comp : compositions(m, dims)) {
    MixedStrategy x(dims);
    for (int i = 0; i < dims; ++i) x[i] = static_cast<double>(comp[i]) / m;
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<std::pair<MixedStrategy, MixedStrategy>> grid_eps_ne(
    const BimatrixGame& g, int m, double eps, const SolverBudget& budget) {
  check_game(g);
  if (m < 1) throw InputError("grid_eps_ne: resolution must be >= 1");
  std::uint64_t nx = choose(m + g.R.rows - 1, g.R.rows - 1);
  std::uint64_t ny = choose(m + g.R.cols - 1, g.R.cols - 1);
  if (nx > budget.action_space_cap / std::max<std::uint64_t>(ny, 1))
    throw BudgetError("grid_eps_ne: grid of " + std::to_string(nx) + "x" +
                      std::to_string(ny) + " pairs exceeds cap " +
                      std::to_string(budget.action_space_cap));
  auto xs = simplex_grid(m, g.R.rows);
  auto ys = simplex_grid(m, g.R.cols);
  std::vector<std::pair<MixedStrategy, MixedStrategy>> found;
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (is_eps_ne(g, x, y, eps)) found.emplace_back(x, y);
  return found;
}

SmallSupportResult small_support_search(const BimatrixGame& g, double eps,
                                        const SolverBudget& budget) {
  check_game(g);
  if (eps <= 0) throw InputError("small_support_search: eps must be positive");
  SmallSupportResult res;
  const int total = g.R.rows + g.R.cols;
  int k = static_cast<int>(
      std::ceil(12.0 * std::log(std::max(total, 2)) / (eps * eps)));
  k = std::max(1, std::min(k, budget.max_support));
  res.k = k;
  // k-uniform strategies are exactly the grid points at resolution k.
  auto xs = simplex_grid(k, g.R.rows);
  auto ys = simplex_grid(k, g.R.cols);
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (res.examined++ >= budget.action_space_cap) {
        res.cap_hit = true;
        return res;
      }
      if (is_eps_ne(g, x, y, eps)) {
        res.pair = {x, y};
        return res;
      }
    }
  }
  return res;
}

ValueBracket fictitious_play_value(const BimatrixGame& g, long iters) {
  check_game(g);
  if (iters < 1) throw InputError("fictitious_play_value: iters must be >= 1");
  const double k0 = g.R.at(0, 0) + g.C.at(0, 0);
  for (int i = 0; i < g.R.rows; ++i)
    for (int j = 0; j < g.R.cols; ++j)
      if (std::abs(g.R.at(i, j) + g.C.at(i, j) - k0) > 1e-12)
        throw InputError("fictitious_play_value: game is not zero-sum up to a constant");
  const int rows = g.R.rows, cols = g.R.cols;
  std::vector<double> xc(rows, 0.0), yc(cols, 0.0);  // play counts
  int xi = 0, yj = 0;  // current best responses, start at action 0
  ValueBracket out;
  out.lower = -1e300;
  out.upper = 1e300;
  for (long t = 1; t <= iters; ++t) {
    xc[xi] += 1.0;
    yc[yj] += 1.0;
    // Row best-responds to the column empirical average and vice versa.
    double best_r = -1e300;
    int arg_r = 0;
    for (int i = 0; i < rows; ++i) {
      double v = 0.0;
      for (int j = 0; j < cols; ++j) v += g.R.at(i, j) * yc[j];
      if (v > best_r + 1e-15) {
        best_r = v;
        arg_r = i;
      }
    }
    double best_c = 1e300;
    int arg_c = 0;
    for (int j = 0; j < cols; ++j) {
      double v = 0.0;
      for (int i = 0; i < rows; ++i) v += g.R.at(i, j) * xc[i];
      if (v < best_c - 1e-15) {
        best_c = v;
        arg_c = j;
      }
    }
    out.upper = std::min(out.upper, best_r / t);
    out.lower = std::max(out.lower, best_c / t);
    xi = arg_r;
    yj = arg_c;
  }
  out.iterations = iters;
  return out;
}

BrdResult polymatrix_brd(const PolymatrixGame& p, const MixedProfile& init,
                         long iters) {
  if (static_cast<int>(init.p.size()) != p.players)
    throw InputError("polymatrix_brd: profile length mismatch");
  MixedProfile prof = init;
  for (long t = 1; t <= iters; ++t) {
    std::vector<double> br(p.players);
    for (int v = 0; v < p.players; ++v) {
      auto [u0, u1] = vertex_action_payoffs(p, prof, v);
      br[v] = u1 > u0 ? 1.0 : (u1 < u0 ? 0.0 : prof.p[v]);
    }
    double step = 1.0 / static_cast<double>(t);
    for (int v = 0; v < p.players; ++v)
      prof.p[v] = std::clamp(prof.p[v] + step * (br[v] - prof.p[v]), 0.0, 1.0);
  }
  BrdResult res;
  res.profile = prof;
  for (int v = 0; v < p.players; ++v)
    res.max_regret = std::max(res.max_regret, vertex_regret(p, prof, v));
  return res;
}

}  // namespace ppadforge
