#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppadforge/util.hpp"

namespace ppadforge {

// Course allocation: M courses with capacities, N students with permissible
// bundles and a strict preference order over them (most preferred first).
struct CourseAllocationProblem {
  struct Student {
    std::vector<std::vector<int>> bundles;  // course index subsets
    std::vector<int> pref;                  // bundle indices, best first
  };
  std::vector<int> capacities;
  std::vector<Student> students;
};

std::vector<std::string> validate_problem(const CourseAllocationProblem& p);

struct AllocationSolution {
  std::vector<double> prices;   // one per course, >= 0
  std::vector<double> budgets;  // one per student, > 0
  std::vector<int> bundles;     // assigned bundle index per student, -1 = none
};

// The most preferred bundle the student can afford at the given prices;
// nullopt when nothing is affordable.
std::optional<int> student_demand(const std::vector<double>& prices,
                                  double budget,
                                  const CourseAllocationProblem::Student& s);

// Max over courses of |#demanders - capacity|, demands computed from prices
// and budgets.
int clearing_error(const CourseAllocationProblem& p,
                   const AllocationSolution& sol);

// Rescales prices and budgets so the (lower) median budget is 1 + eps'/2.
// Demands are scale-invariant; this is asserted by recomputation.
AllocationSolution normalize_budgets(const CourseAllocationProblem& p,
                                     const AllocationSolution& sol,
                                     double eps_prime);

struct IncomeDistribution {
  std::vector<double> incomes;  // nonempty, >= 0, not all zero
};

// Empirical Lorenz curve value at x in [0,1] (piecewise linear through the
// sorted prefix sums).
double lorenz(const IncomeDistribution& d, double x);

// Gini index via the closed form (2*sum i*y_(i))/(N*sum y) - (N+1)/N,
// cross-checked against the trapezoid integral of the Lorenz curve.
double gini(const IncomeDistribution& d);

// NOT-gate fragment: input course, output course of capacity 2*nx/3, and nx
// students wanting exactly the pair. The metadata allowance bounds how many
// outside students may touch the output course.
struct NotGadget {
  CourseAllocationProblem problem;
  int nx = 0;
  int input_course = 0;
  int output_course = 1;
  int external_allowance = 0;  // nx/6
};

NotGadget build_not_gadget(int nx);

enum class GadgetVerdict { GateSatisfied, InequalityWitness, Violation };

const char* verdict_name(GadgetVerdict v);

// Price-band check for the NOT fragment under a normalized solution:
// satisfied when p_out is within [1-p_in, 1-p_in+eps']; otherwise the lemma's
// budget-count witness must hold (>= nx/6 budgets <= 1 below the band,
// >= nx/3 budgets > 1+eps' above it); otherwise the allocation cannot clear
// within alpha_star and the verdict is Violation.
GadgetVerdict verify_not_gadget(const NotGadget& gadget,
                                const AllocationSolution& sol, double eps_prime,
                                int alpha_star);

struct GiniWitness {
  IncomeDistribution distribution;
  double gini_value = 0.0;
  double bound = 0.0;  // (delta'*eps'/4) / (2 + eps'/2)
  bool pass = false;
};

// Extremal two-level distribution: ceil(delta'*N) incomes at 1, the rest at
// 1+eps'/2. Its Gini index must clear the frozen lower bound.
GiniWitness gini_lowerbound_witness(double eps_prime, double delta_prime, int n);

}  // namespace ppadforge
