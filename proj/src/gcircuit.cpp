#include "ppadforge/gcircuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ppadforge {

const char* gate_type_name(GateType t) {
  switch (t) {
    case GateType::Const: return "CONST";
    case GateType::Mulz: return "MULZ";
    case GateType::Copy: return "COPY";
    case GateType::Add: return "ADD";
    case GateType::Sub: return "SUB";
    case GateType::Less: return "LESS";
    case GateType::Or: return "OR";
    case GateType::And: return "AND";
    case GateType::Not: return "NOT";
  }
  return "?";
}

std::optional<GateType> gate_type_from_name(const std::string& name) {
  static const std::pair<const char*, GateType> table[] = {
      {"CONST", GateType::Const}, {"MULZ", GateType::Mulz},
      {"COPY", GateType::Copy},   {"ADD", GateType::Add},
      {"SUB", GateType::Sub},     {"LESS", GateType::Less},
      {"OR", GateType::Or},       {"AND", GateType::And},
      {"NOT", GateType::Not}};
  for (const auto& [n, t] : table)
    if (name == n) return t;
  return std::nullopt;
}

int gate_arity(GateType t) {
  switch (t) {
    case GateType::Const: return 0;
    case GateType::Mulz:
    case GateType::Copy:
    case GateType::Not: return 1;
    default: return 2;
  }
}

bool gate_has_zeta(GateType t) {
  return t == GateType::Const || t == GateType::Mulz;
}

bool gate_is_logical(GateType t) {
  return t == GateType::Less || t == GateType::Or || t == GateType::And ||
         t == GateType::Not;
}

bool GeneralizedCircuit::has_node(const std::string& id) const {
  return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

std::vector<Violation> validate_circuit(const GeneralizedCircuit& c,
                                        const ValidateOptions& opts) {
  std::vector<Violation> out;
  std::set<std::string> node_set;
  for (const auto& n : c.nodes) {
    if (!node_set.insert(n).second)
      out.push_back({-1, "duplicate node id: " + n});
  }
  std::set<std::string> outputs;
  for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
    const Gate& g = c.gates[i];
    std::ostringstream at;
    at << gate_type_name(g.kind) << " gate #" << i;
    if (static_cast<int>(g.inputs.size()) != gate_arity(g.kind))
      out.push_back({i, at.str() + ": arity " +
                            std::to_string(g.inputs.size()) + ", expected " +
                            std::to_string(gate_arity(g.kind))});
    if (gate_has_zeta(g.kind)) {
      if (!g.zeta) {
        out.push_back({i, at.str() + ": missing zeta"});
      } else {
        double cap = g.kind == GateType::Const ? opts.const_zeta_max
                                               : opts.mulz_zeta_max;
        if (*g.zeta < 0.0 || *g.zeta > cap)
          out.push_back({i, at.str() + ": zeta out of [0," +
                                std::to_string(cap) + "]"});
      }
    } else if (g.zeta) {
      out.push_back({i, at.str() + ": unexpected zeta"});
    }
    for (const auto& in : g.inputs)
      if (!node_set.count(in))
        out.push_back({i, at.str() + ": unknown input node " + in});
    if (!node_set.count(g.output))
      out.push_back({i, at.str() + ": unknown output node " + g.output});
    if (!outputs.insert(g.output).second)
      out.push_back({i, at.str() + ": duplicate output node " + g.output});
  }
  return out;
}

static double value_of(const Assignment& a, const std::string& id) {
  auto it = a.find(id);
  if (it == a.end()) throw InputError("assignment missing node: " + id);
  return it->second;
}

bool gate_satisfied(const Gate& g, const Assignment& a, double eps) {
  const double out = value_of(a, g.output);
  auto near = [eps](double v, double target) {
    return std::abs(v - target) <= eps;
  };
  switch (g.kind) {
    case GateType::Const:
      return near(out, *g.zeta);
    case GateType::Mulz:
      return near(out, *g.zeta * value_of(a, g.inputs[0]));
    case GateType::Copy:
      return near(out, value_of(a, g.inputs[0]));
    case GateType::Add: {
      double x = value_of(a, g.inputs[0]), y = value_of(a, g.inputs[1]);
      return near(out, std::min(x + y, 1.0));
    }
    case GateType::Sub: {
      double x = value_of(a, g.inputs[0]), y = value_of(a, g.inputs[1]);
      return near(out, std::max(x - y, 0.0));
    }
    case GateType::Less: {
      double x = value_of(a, g.inputs[0]), y = value_of(a, g.inputs[1]);
      if (x < y - eps) return near(out, 1.0);
      if (x > y + eps) return near(out, 0.0);
      return true;  // dead band: nothing required
    }
    case GateType::Or: {
      double x = value_of(a, g.inputs[0]), y = value_of(a, g.inputs[1]);
      bool ok = true;
      if (near(x, 1.0) || near(y, 1.0)) ok = ok && near(out, 1.0);
      if (near(x, 0.0) && near(y, 0.0)) ok = ok && near(out, 0.0);
      return ok;
    }
    case GateType::And: {
      double x = value_of(a, g.inputs[0]), y = value_of(a, g.inputs[1]);
      bool ok = true;
      if (near(x, 1.0) && near(y, 1.0)) ok = ok && near(out, 1.0);
      if (near(x, 0.0) || near(y, 0.0)) ok = ok && near(out, 0.0);
      return ok;
    }
    case GateType::Not: {
      double x = value_of(a, g.inputs[0]);
      bool ok = true;
      if (near(x, 0.0)) ok = ok && near(out, 1.0);
      if (near(x, 1.0)) ok = ok && near(out, 0.0);
      return ok;
    }
  }
  throw InternalError("unreachable gate kind");
}

double violated_fraction(const GeneralizedCircuit& c, const Assignment& a,
                         double eps) {
  if (c.gates.empty())
    throw InputError("violated_fraction: circuit has no gates");
  int bad = 0;
  for (const Gate& g : c.gates)
    if (!gate_satisfied(g, a, eps)) ++bad;
  return static_cast<double>(bad) / static_cast<double>(c.gates.size());
}

bool is_satisfied(const GeneralizedCircuit& c, const Assignment& a,
                  const Tolerance& tol) {
  return violated_fraction(c, a, tol.eps) <= tol.delta;
}

double ideal_gate_value(const Gate& g, const Assignment& a) {
  // Boolean rounding threshold 1/2, ties toward 0.
  auto round01 = [](double v) { return v > 0.5 ? 1.0 : 0.0; };
  switch (g.kind) {
    case GateType::Const:
      return *g.zeta;
    case GateType::Mulz:
      return std::min(*g.zeta * value_of(a, g.inputs[0]), 1.0);
    case GateType::Copy:
      return value_of(a, g.inputs[0]);
    case GateType::Add:
      return std::min(value_of(a, g.inputs[0]) + value_of(a, g.inputs[1]),
                      1.0);
    case GateType::Sub:
      return std::max(value_of(a, g.inputs[0]) - value_of(a, g.inputs[1]),
                      0.0);
    case GateType::Less:
      return value_of(a, g.inputs[0]) < value_of(a, g.inputs[1]) ? 1.0 : 0.0;
    case GateType::Or:
      return std::max(value_of(a, g.inputs[0]), value_of(a, g.inputs[1])) >=
                     0.5
                 ? 1.0
                 : 0.0;
    case GateType::And:
      return std::min(value_of(a, g.inputs[0]), value_of(a, g.inputs[1])) >=
                     0.5
                 ? 1.0
                 : 0.0;
    case GateType::Not:
      return 1.0 - round01(value_of(a, g.inputs[0]));
  }
  throw InternalError("unreachable gate kind");
}

Assignment iterate_fixed_point(const GeneralizedCircuit& c,
                               const Assignment& init, int rounds) {
  Assignment a;
  for (const auto& n : c.nodes) {
    auto it = init.find(n);
    a[n] = it == init.end() ? 0.0 : it->second;
  }
  for (int r = 0; r < rounds; ++r)
    for (const Gate& g : c.gates) a[g.output] = ideal_gate_value(g, a);
  return a;
}

std::optional<Assignment> brute_force_search(const GeneralizedCircuit& c,
                                             int m, const Tolerance& tol,
                                             std::uint64_t cap) {
  if (m < 1) throw InputError("brute_force_search: grid resolution must be >= 1");
  const int n = static_cast<int>(c.nodes.size());
  unsigned __int128 total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<unsigned>(m + 1);
    if (total > cap)
      throw BudgetError("brute_force_search: grid of (m+1)^|V| = (" +
                        std::to_string(m + 1) + ")^" + std::to_string(n) +
                        " assignments exceeds cap " + std::to_string(cap));
  }
  std::vector<int> idx(n, 0);
  Assignment a;
  while (true) {
    for (int i = 0; i < n; ++i)
      a[c.nodes[i]] = static_cast<double>(idx[i]) / m;
    if (is_satisfied(c, a, tol)) return a;
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == m) idx[pos--] = 0;
    if (pos < 0) return std::nullopt;
    ++idx[pos];
  }
}

int max_fanout(const GeneralizedCircuit& c) {
  std::map<std::string, int> reads;
  for (const auto& n : c.nodes) reads[n] = 0;
  for (const Gate& g : c.gates)
    for (const auto& in : g.inputs) ++reads[in];
  int best = 0;
  for (const auto& [_, k] : reads) best = std::max(best, k);
  return best;
}

}  // namespace ppadforge
