#include "ppadforge/fanout.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ppadforge {

namespace {

struct Builder {
  GeneralizedCircuit c;           // being rewritten
  std::set<std::string> used;     // all node ids, for fresh-name checks
  NormalizationResult* res = nullptr;

  std::string fresh(const std::string& base) {
    std::string name = base;
    while (used.count(name)) name += "_";
    used.insert(name);
    c.nodes.push_back(name);
    return name;
  }

  void add_gate(GateType kind, std::optional<double> zeta,
                std::vector<std::string> in, const std::string& out,
                int* counter) {
    c.gates.push_back(Gate{kind, zeta, std::move(in), out});
    ++res->added_total;
    ++*counter;
  }

  // Complete binary tree of NOT gates of even depth under `source`, each
  // level doubling. Returns the depth-D leaves left to right; `leaf_name`
  // provides the id for each leaf index (internal nodes get generated ids).
  std::vector<std::string> not_tree(const std::string& source, int leaves_used,
                                    const std::string& base,
                                    const std::vector<std::string>& leaf_names) {
    int depth = 2;
    while ((1 << depth) < leaves_used) depth += 2;
    int tag = 0;
    std::vector<std::string> level{source};
    for (int d = 1; d <= depth; ++d) {
      std::vector<std::string> next;
      next.reserve(level.size() * 2);
      for (const auto& parent : level)
        for (int side = 0; side < 2; ++side) {
          int idx = static_cast<int>(next.size());
          std::string name;
          if (d == depth && idx < static_cast<int>(leaf_names.size()))
            name = fresh(leaf_names[idx]);
          else
            name = fresh(base + "t" + std::to_string(tag++));
          add_gate(GateType::Not, std::nullopt, {parent}, name,
                   &res->added_not_tree);
          next.push_back(name);
        }
      level = std::move(next);
    }
    return level;
  }
};

}  // namespace

NormalizationResult normalize_fanout(const GeneralizedCircuit& c, double eps) {
  if (!(eps > 0.0 && eps <= 0.25))
    throw InputError("normalize_fanout: eps must lie in (0, 1/4]");
  if (!validate_circuit(c).empty())
    throw InputError("normalize_fanout: circuit fails validation");

  NormalizationResult res;
  res.eps = eps;
  res.eps_hat = eps * eps / 16.0;
  res.original_gates = static_cast<int>(c.gates.size());
  res.original_nodes = c.nodes;

  Builder b;
  b.c = c;
  b.res = &res;
  b.used.insert(c.nodes.begin(), c.nodes.end());

  // Consumer slots per node, in gate order, and the producing gate kind.
  std::map<std::string, std::vector<std::pair<int, int>>> consumers;
  std::map<std::string, GateType> producer;
  for (int gi = 0; gi < static_cast<int>(c.gates.size()); ++gi) {
    const Gate& g = c.gates[gi];
    for (int slot = 0; slot < static_cast<int>(g.inputs.size()); ++slot)
      consumers[g.inputs[slot]].push_back({gi, slot});
    producer[g.output] = g.kind;
  }

  const int bits = static_cast<int>(std::ceil(1.0 / eps));

  for (const std::string& node : c.nodes) {
    auto it = consumers.find(node);
    if (it == consumers.end()) continue;
    const auto& slots = it->second;
    const int f = static_cast<int>(slots.size());
    if (f <= 2) continue;

    const std::string base = node + "#";
    std::vector<std::string> replicas(f);
    for (int j = 0; j < f; ++j) replicas[j] = base + std::to_string(j);

    auto prod = producer.find(node);
    const bool logical = prod != producer.end() && gate_is_logical(prod->second);

    if (logical) {
      // Even-depth double-negation tree; the first f leaves are the replicas.
      b.not_tree(node, f, base, replicas);
    } else {
      // Unary parse. The remainder chain subtracts eps per fired bit, so the
      // comparison threshold stays at eps/2 throughout; each bit's tree gets
      // one extra leaf that feeds the ladder's own subtraction.
      std::vector<std::string> thresholds;
      for (int j = 0; j < (bits + 1) / 2; ++j) {
        std::string z = b.fresh(base + "z" + std::to_string(j));
        b.add_gate(GateType::Const, eps / 2.0, {}, z, &res.added_parse);
        thresholds.push_back(z);
      }
      std::string remainder = node;
      std::vector<std::vector<std::string>> bit_leaves(bits);
      for (int i = 0; i < bits; ++i) {
        std::string bit = b.fresh(base + "b" + std::to_string(i + 1));
        b.add_gate(GateType::Less, std::nullopt, {thresholds[i / 2], remainder},
                   bit, &res.added_parse);
        bit_leaves[i] = b.not_tree(bit, f + 1, base, {});
        if (i + 1 < bits) {
          std::string m = b.fresh(base + "m" + std::to_string(i + 1));
          b.add_gate(GateType::Mulz, eps, {bit_leaves[i][0]}, m,
                     &res.added_parse);
          std::string r = b.fresh(base + "r" + std::to_string(i + 1));
          b.add_gate(GateType::Sub, std::nullopt, {remainder, m}, r,
                     &res.added_parse);
          remainder = r;
        }
      }
      for (int j = 0; j < f; ++j) {
        std::string cj = base + "c" + std::to_string(j);
        std::string acc =
            b.fresh(bits == 1 ? replicas[j] : cj + "a1");
        b.add_gate(GateType::Mulz, eps, {bit_leaves[0][j + 1]}, acc,
                   &res.added_reconstruct);
        for (int i = 1; i < bits; ++i) {
          std::string term = b.fresh(cj + "m" + std::to_string(i + 1));
          b.add_gate(GateType::Mulz, eps, {bit_leaves[i][j + 1]}, term,
                     &res.added_reconstruct);
          std::string next = b.fresh(i + 1 == bits ? replicas[j]
                                                   : cj + "a" + std::to_string(i + 1));
          b.add_gate(GateType::Add, std::nullopt, {acc, term}, next,
                     &res.added_reconstruct);
          acc = next;
        }
      }
    }

    for (int j = 0; j < f; ++j)
      b.c.gates[slots[j].first].inputs[slots[j].second] = replicas[j];
    res.node_map[node] = replicas;
  }

  res.circuit = std::move(b.c);
  if (res.original_gates > 0)
    res.c0 = res.added_total * eps / res.original_gates;
  if (max_fanout(res.circuit) > 2)
    throw InternalError("normalize_fanout: output still has fan-out > 2");
  return res;
}

Assignment lift_assignment(const NormalizationResult& res,
                           const Assignment& a) {
  Assignment out = a;
  for (size_t gi = res.original_gates; gi < res.circuit.gates.size(); ++gi) {
    const Gate& g = res.circuit.gates[gi];
    out[g.output] = ideal_gate_value(g, out);
  }
  return out;
}

Assignment restrict_assignment(const NormalizationResult& res,
                               const Assignment& a_norm) {
  Assignment out;
  for (const std::string& node : res.original_nodes) {
    auto it = a_norm.find(node);
    if (it == a_norm.end())
      throw InputError("restrict_assignment: missing original node " + node);
    out[node] = it->second;
  }
  return out;
}

}  // namespace ppadforge
