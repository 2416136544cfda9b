#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppadforge/util.hpp"

namespace ppadforge {

// The nine gate kinds of a generalized circuit. CONST and MULZ carry a real
// parameter zeta; all others do not.
enum class GateType { Const, Mulz, Copy, Add, Sub, Less, Or, And, Not };

const char* gate_type_name(GateType t);
std::optional<GateType> gate_type_from_name(const std::string& name);
int gate_arity(GateType t);
bool gate_has_zeta(GateType t);
bool gate_is_logical(GateType t);  // LESS / OR / AND / NOT

struct Gate {
  GateType kind = GateType::Const;
  std::optional<double> zeta;
  std::vector<std::string> inputs;  // size = arity
  std::string output;
};

// A set of nodes plus a gate list. Cycles are allowed; what is not allowed is
// two gates driving the same output node.
struct GeneralizedCircuit {
  std::vector<std::string> nodes;
  std::vector<Gate> gates;

  bool has_node(const std::string& id) const;
};

// Total map node -> value in [0,1].
using Assignment = std::map<std::string, double>;

struct Tolerance {
  double eps = 0.0;    // per-gate additive slack, in (0,1)
  double delta = 0.0;  // tolerated fraction of violated gates, in [0,1]
};

struct Violation {
  int gate_index = -1;  // -1 for node-set level problems
  std::string message;
};

struct ValidateOptions {
  double const_zeta_max = 1.0;
  double mulz_zeta_max = 100.0;  // cap standing in for 1/eps_min
};

// Structural validation. Violations are data, not failures: an empty result
// means the circuit is well formed.
std::vector<Violation> validate_circuit(const GeneralizedCircuit& c,
                                        const ValidateOptions& opts = {});

// Truth of the per-gate constraint at additive slack eps. Rows that list no
// applicable case (LESS inside its dead band, OR/AND/NOT with mid-range
// inputs) are treated as satisfied.
bool gate_satisfied(const Gate& g, const Assignment& a, double eps);

// (#unsatisfied gates) / |gates|. Throws InputError on an empty gate list.
double violated_fraction(const GeneralizedCircuit& c, const Assignment& a,
                         double eps);

bool is_satisfied(const GeneralizedCircuit& c, const Assignment& a,
                  const Tolerance& tol);

// Noise-free center of a gate's constraint: CONST -> zeta,
// MULZ -> min(zeta*x,1), ADD -> min(x+y,1), SUB -> max(x-y,0),
// LESS -> [x<y], OR -> [max>=1/2], AND -> [min>=1/2], NOT -> 1-[x>1/2].
double ideal_gate_value(const Gate& g, const Assignment& a);

// Applies ideal_gate_value to every gate output, in gate order, for the
// requested number of sweeps. Nodes absent from init start at 0.
Assignment iterate_fixed_point(const GeneralizedCircuit& c,
                               const Assignment& init, int rounds);

inline constexpr std::uint64_t kDefaultBruteForceCap = 5'000'000;

// First assignment on the grid {0, 1/m, ..., 1}, ordered lexicographically
// over node values in node order, that satisfies the circuit; nullopt if the
// grid holds none. Refuses with BudgetError when (m+1)^|V| exceeds cap.
std::optional<Assignment> brute_force_search(
    const GeneralizedCircuit& c, int m, const Tolerance& tol,
    std::uint64_t cap = kDefaultBruteForceCap);

// Maximum number of gate input slots reading any single node.
int max_fanout(const GeneralizedCircuit& c);

}  // namespace ppadforge
