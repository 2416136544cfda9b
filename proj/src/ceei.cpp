#include "ppadforge/ceei.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ppadforge {

std::vector<std::string> validate_problem(const CourseAllocationProblem& p) {
  std::vector<std::string> out;
  const int m = static_cast<int>(p.capacities.size());
  for (int q : p.capacities)
    if (q < 0) out.push_back("negative capacity");
  for (size_t i = 0; i < p.students.size(); ++i) {
    const auto& s = p.students[i];
    for (const auto& b : s.bundles)
      for (int c : b)
        if (c < 0 || c >= m)
          out.push_back("student " + std::to_string(i) +
                        ": bundle course out of range");
    std::vector<int> seen(s.bundles.size(), 0);
    for (int idx : s.pref) {
      if (idx < 0 || idx >= static_cast<int>(s.bundles.size())) {
        out.push_back("student " + std::to_string(i) + ": pref index range");
        continue;
      }
      if (seen[idx]++)
        out.push_back("student " + std::to_string(i) + ": pref repeats bundle");
    }
    for (int c : seen)
      if (!c) {
        out.push_back("student " + std::to_string(i) +
                      ": pref does not order all bundles");
        break;
      }
  }
  return out;
}

std::optional<int> student_demand(const std::vector<double>& prices,
                                  double budget,
                                  const CourseAllocationProblem::Student& s) {
  for (int idx : s.pref) {
    double cost = 0.0;
    for (int c : s.bundles[idx]) cost += prices[c];
    if (cost <= budget) return idx;
  }
  return std::nullopt;
}

int clearing_error(const CourseAllocationProblem& p,
                   const AllocationSolution& sol) {
  if (sol.prices.size() != p.capacities.size() ||
      sol.budgets.size() != p.students.size())
    throw InputError("clearing_error: solution shape mismatch");
  std::vector<int> takers(p.capacities.size(), 0);
  for (size_t i = 0; i < p.students.size(); ++i) {
    auto d = student_demand(sol.prices, sol.budgets[i], p.students[i]);
    if (d)
      for (int c : p.students[i].bundles[*d]) ++takers[c];
  }
  int err = 0;
  for (size_t j = 0; j < p.capacities.size(); ++j)
    err = std::max(err, std::abs(takers[j] - p.capacities[j]));
  return err;
}

static double lower_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

AllocationSolution normalize_budgets(const CourseAllocationProblem& p,
                                     const AllocationSolution& sol,
                                     double eps_prime) {
  for (double b : sol.budgets)
    if (!(b > 0)) throw InputError("normalize_budgets: nonpositive budget");
  std::vector<std::optional<int>> before(p.students.size());
  for (size_t i = 0; i < p.students.size(); ++i)
    before[i] = student_demand(sol.prices, sol.budgets[i], p.students[i]);

  AllocationSolution out = sol;
  const double scale = (1.0 + eps_prime / 2.0) / lower_median(sol.budgets);
  for (double& x : out.prices) x *= scale;
  for (double& x : out.budgets) x *= scale;

  for (size_t i = 0; i < p.students.size(); ++i)
    if (student_demand(out.prices, out.budgets[i], p.students[i]) != before[i])
      throw InternalError("normalize_budgets: demand changed under scaling");
  return out;
}

static void check_distribution(const IncomeDistribution& d) {
  if (d.incomes.empty()) throw InputError("income distribution is empty");
  double total = 0.0;
  for (double y : d.incomes) {
    if (y < 0) throw InputError("negative income");
    total += y;
  }
  if (total <= 0.0) throw InputError("all incomes are zero");
}

double lorenz(const IncomeDistribution& d, double x) {
  check_distribution(d);
  if (x < 0.0 || x > 1.0) throw InputError("lorenz: x outside [0,1]");
  std::vector<double> y = d.incomes;
  std::sort(y.begin(), y.end());
  const int n = static_cast<int>(y.size());
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  double pos = x * n;
  int full = static_cast<int>(std::floor(pos));
  double prefix = 0.0;
  for (int i = 0; i < full && i < n; ++i) prefix += y[i];
  if (full < n) prefix += (pos - full) * y[full];
  return prefix / total;
}

double gini(const IncomeDistribution& d) {
  check_distribution(d);
  std::vector<double> y = d.incomes;
  std::sort(y.begin(), y.end());
  const int n = static_cast<int>(y.size());
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  double weighted = 0.0;
  for (int i = 0; i < n; ++i) weighted += (i + 1) * y[i];
  const double closed = 2.0 * weighted / (n * total) - (n + 1.0) / n;

  // Cross-check: exact trapezoid integral of the piecewise-linear Lorenz
  // curve through (i/n, prefix_i/total).
  double area = 0.0, prefix = 0.0;
  for (int i = 0; i < n; ++i) {
    double prev = prefix / total;
    prefix += y[i];
    area += (prev + prefix / total) / (2.0 * n);
  }
  const double trapezoid = 1.0 - 2.0 * area;
  if (std::abs(closed - trapezoid) > 1e-12)
    throw InternalError("gini: closed form and trapezoid disagree");
  return closed;
}

NotGadget build_not_gadget(int nx) {
  if (nx < 6 || nx % 6 != 0)
    throw InputError("build_not_gadget: nx must be a positive multiple of 6");
  NotGadget g;
  g.nx = nx;
  g.external_allowance = nx / 6;
  g.problem.capacities = {nx, 2 * nx / 3};  // input course capacity is nominal
  CourseAllocationProblem::Student s;
  s.bundles = {{g.input_course, g.output_course}};
  s.pref = {0};
  g.problem.students.assign(nx, s);
  return g;
}

const char* verdict_name(GadgetVerdict v) {
  switch (v) {
    case GadgetVerdict::GateSatisfied: return "GATE_SATISFIED";
    case GadgetVerdict::InequalityWitness: return "INEQUALITY_WITNESS";
    case GadgetVerdict::Violation: return "VIOLATION";
  }
  return "?";
}

GadgetVerdict verify_not_gadget(const NotGadget& gadget,
                                const AllocationSolution& sol, double eps_prime,
                                int alpha_star) {
  (void)alpha_star;  // context for the caller's clearing cross-check
  if (sol.prices.size() != gadget.problem.capacities.size() ||
      sol.budgets.size() != gadget.problem.students.size())
    throw InputError("verify_not_gadget: solution shape mismatch");
  const double median = lower_median(sol.budgets);
  if (std::abs(median - (1.0 + eps_prime / 2.0)) > 1e-9)
    throw InputError("verify_not_gadget: solution is not normalized");

  const double p_in = sol.prices[gadget.input_course];
  const double p_out = sol.prices[gadget.output_course];
  if (p_out >= 1.0 - p_in && p_out <= 1.0 - p_in + eps_prime)
    return GadgetVerdict::GateSatisfied;

  if (p_out < 1.0 - p_in) {
    int poor = 0;
    for (double b : sol.budgets)
      if (b <= 1.0) ++poor;
    if (poor >= gadget.nx / 6) return GadgetVerdict::InequalityWitness;
  } else {
    int rich = 0;
    for (double b : sol.budgets)
      if (b > 1.0 + eps_prime) ++rich;
    if (rich >= gadget.nx / 3) return GadgetVerdict::InequalityWitness;
  }
  return GadgetVerdict::Violation;
}

GiniWitness gini_lowerbound_witness(double eps_prime, double delta_prime,
                                    int n) {
  if (!(delta_prime > 0.0 && delta_prime < 0.5))
    throw InputError("gini_lowerbound_witness: delta' must lie in (0, 1/2)");
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw InputError("gini_lowerbound_witness: eps' must lie in (0, 1)");
  if (n < 2 || n % 2 != 0 || n < static_cast<int>(std::ceil(2.0 / delta_prime)))
    throw InputError("gini_lowerbound_witness: N must be even and >= 2/delta'");

  GiniWitness w;
  const int poor = static_cast<int>(std::ceil(delta_prime * n));
  w.distribution.incomes.assign(poor, 1.0);
  w.distribution.incomes.resize(n, 1.0 + eps_prime / 2.0);
  w.gini_value = gini(w.distribution);
  w.bound = (delta_prime * eps_prime / 4.0) / (2.0 + eps_prime / 2.0);
  w.pass = w.gini_value >= w.bound;
  return w;
}

}  // namespace ppadforge
