#include "ppadforge/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ppadforge {

namespace {

EdgeGame aux_edge(int other_slot) {
  EdgeGame e;
  e.u = GadgetInstance::kAux;
  e.v = other_slot;
  return e;
}

void set_anti_coordination(EdgeGame& e) {
  // Output player earns 1 for mismatching the auxiliary.
  e.av[0][1] = 1.0;
  e.av[1][0] = 1.0;
}

}  // namespace

GadgetInstance gadget_for(GateType kind, std::optional<double> zeta) {
  if (gate_has_zeta(kind) || kind == GateType::Copy) {
    double z = kind == GateType::Copy ? 1.0 : (zeta ? *zeta : -1.0);
    if (kind == GateType::Const && !(z >= 0.0 && z <= 1.0))
      throw InputError("gadget_for: CONST zeta must lie in [0,1]");
    if (kind != GateType::Const && !(z >= 0.0))
      throw InputError("gadget_for: MULZ zeta must be nonnegative");
    GadgetInstance g;
    g.kind = kind;
    g.zeta = z;
    if (kind == GateType::Const) {
      // aux action 0 earns zeta outright; action 1 earns the output's weight.
      EdgeGame out = aux_edge(GadgetInstance::kOut);
      out.au[0][0] = z;
      out.au[0][1] = z;
      out.au[1][1] = 1.0;
      set_anti_coordination(out);
      g.edges.push_back(out);
      return g;
    }
    g.uses_in1 = true;
    EdgeGame in = aux_edge(GadgetInstance::kIn1);
    in.au[0][1] = z;  // aux plays 0: earns zeta when the input plays 1
    EdgeGame out = aux_edge(GadgetInstance::kOut);
    out.au[1][1] = 1.0;  // aux plays 1: earns the output's weight
    set_anti_coordination(out);
    g.edges.push_back(in);
    g.edges.push_back(out);
    return g;
  }

  if (zeta) throw InputError("gadget_for: unexpected zeta");
  GadgetInstance g;
  g.kind = kind;
  g.uses_in1 = true;
  g.uses_in2 = gate_arity(kind) == 2;

  EdgeGame in1 = aux_edge(GadgetInstance::kIn1);
  EdgeGame in2 = aux_edge(GadgetInstance::kIn2);
  EdgeGame out = aux_edge(GadgetInstance::kOut);
  set_anti_coordination(out);

  switch (kind) {
    case GateType::Add:
      // aux: action 0 earns x+y, action 1 earns the output's weight.
      in1.au[0][1] = 1.0;
      in2.au[0][1] = 1.0;
      out.au[1][1] = 1.0;
      break;
    case GateType::Sub:
      // Balance point out = x - y: action 0 earns x, action 1 earns y + out.
      in1.au[0][1] = 1.0;
      in2.au[1][1] = 1.0;
      out.au[1][1] = 1.0;
      break;
    case GateType::Less:
      // action 0 earns y, action 1 earns x; anti-coordination flips the
      // auxiliary's verdict into the output.
      in1.au[1][1] = 1.0;
      in2.au[0][1] = 1.0;
      break;
    case GateType::Or:
      // action 0 earns x+y, action 1 earns the fixed threshold 1/2.
      in1.au[0][1] = 1.0;
      in2.au[0][1] = 1.0;
      in1.au[1][0] = in1.au[1][1] = 0.25;
      in2.au[1][0] = in2.au[1][1] = 0.25;
      break;
    case GateType::And:
      // action 0 earns x+y, action 1 earns the fixed threshold 3/2.
      in1.au[0][1] = 1.0;
      in2.au[0][1] = 1.0;
      in1.au[1][0] = in1.au[1][1] = 0.75;
      in2.au[1][0] = in2.au[1][1] = 0.75;
      break;
    case GateType::Not:
      // action 0 earns the fixed threshold 1/2, action 1 earns x.
      in1.au[1][1] = 1.0;
      in1.au[0][0] = in1.au[0][1] = 0.5;
      break;
    default:
      throw InternalError("gadget_for: unhandled kind");
  }
  g.edges.push_back(in1);
  if (g.uses_in2) g.edges.push_back(in2);
  g.edges.push_back(out);
  return g;
}

namespace {

struct CompileState {
  CompilationResult out;
  std::vector<int> side;  // 0 = node side, 1 = aux side

  int new_player(int player_side) {
    side.push_back(player_side);
    return out.game.players++;
  }

  // COPY gadget from `from` to a fresh node-side player; keeps every edge
  // pair of the calling gadget distinct.
  int split_copy(int from) {
    int mirror = new_player(0);
    int aux = new_player(1);
    out.aux_players.push_back(aux);
    ++out.copy_splits;
    GadgetInstance tpl = gadget_for(GateType::Copy, std::nullopt);
    for (EdgeGame e : tpl.edges) {
      e.u = aux;
      e.v = e.v == GadgetInstance::kIn1 ? from : mirror;
      out.game.edges.push_back(e);
    }
    return mirror;
  }
};

}  // namespace

CompilationResult compile_circuit(const GeneralizedCircuit& c, double eps) {
  (void)eps;  // recorded by callers; the tables themselves are eps-free
  if (!validate_circuit(c).empty())
    throw InputError("compile: circuit fails validation");
  if (max_fanout(c) > 2)
    throw InputError("compile: circuit has fan-out > 2; normalize first");
  for (const Gate& g : c.gates)
    if (g.kind == GateType::Mulz && *g.zeta > 1.0)
      throw InputError("compile: MULZ zeta > 1 would leave the payoff range");

  CompileState st;
  for (const std::string& node : c.nodes) {
    st.out.vertex_map[node] = st.new_player(0);
  }

  for (int gi = 0; gi < static_cast<int>(c.gates.size()); ++gi) {
    const Gate& g = c.gates[gi];
    GadgetInstance tpl = gadget_for(g.kind, g.zeta);
    tpl.gate_index = gi;
    int out_p = st.out.vertex_map.at(g.output);
    int in1_p = tpl.uses_in1 ? st.out.vertex_map.at(g.inputs[0]) : -1;
    int in2_p = tpl.uses_in2 ? st.out.vertex_map.at(g.inputs[1]) : -1;
    // Distinct endpoints per gadget; duplicated reads go through a copy.
    if (tpl.uses_in1 && in1_p == out_p) in1_p = st.split_copy(in1_p);
    if (tpl.uses_in2 && (in2_p == out_p || in2_p == in1_p))
      in2_p = st.split_copy(in2_p);
    int aux = st.new_player(1);
    st.out.aux_players.push_back(aux);
    auto global = [&](int slot) {
      switch (slot) {
        case GadgetInstance::kIn1: return in1_p;
        case GadgetInstance::kIn2: return in2_p;
        case GadgetInstance::kAux: return aux;
        case GadgetInstance::kOut: return out_p;
      }
      throw InternalError("compile: bad slot");
    };
    for (EdgeGame e : tpl.edges) {
      e.u = global(e.u);
      e.v = global(e.v);
      st.out.game.edges.push_back(e);
    }
    st.out.gadgets.push_back(std::move(tpl));
  }

  std::vector<int> u_side, v_side;
  for (int p = 0; p < st.out.game.players; ++p)
    (st.side[p] == 0 ? u_side : v_side).push_back(p);
  st.out.game.bipartition = {u_side, v_side};

  auto degs = st.out.game.degrees();
  for (int p = 0; p < st.out.game.players; ++p)
    if (degs[p] > 3)
      throw InternalError("compile: player " + std::to_string(p) +
                          " has degree " + std::to_string(degs[p]));
  for (const EdgeGame& e : st.out.game.edges)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (e.au[i][j] < 0.0 || e.au[i][j] > 1.0 || e.av[i][j] < 0.0 ||
            e.av[i][j] > 1.0)
          throw InternalError("compile: payoff outside [0,1]");
  if (!c.gates.empty())
    st.out.players_per_gate =
        static_cast<double>(st.out.game.players) / c.gates.size();
  return st.out;
}

Assignment decode_profile(const CompilationResult& res,
                          const MixedProfile& prof) {
  if (static_cast<int>(prof.p.size()) != res.game.players)
    throw InputError("decode_profile: profile length mismatch");
  Assignment a;
  for (const auto& [node, player] : res.vertex_map) a[node] = prof.p[player];
  return a;
}

MixedProfile strengthen_to_wsne(const PolymatrixGame& p,
                                const MixedProfile& prof, double eps_prime) {
  if (eps_prime < 0) throw InputError("strengthen_to_wsne: negative eps");
  const double gap_cap = std::sqrt(eps_prime);
  MixedProfile out = prof;
  for (int v = 0; v < p.players; ++v) {
    auto [u0, u1] = vertex_action_payoffs(p, prof, v);
    if (u1 > u0 + gap_cap)
      out.p[v] = 1.0;
    else if (u0 > u1 + gap_cap)
      out.p[v] = 0.0;
  }
  return out;
}

BestResponseCircuit best_response_circuit(const PolymatrixGame& p, double eps,
                                          int degree_cap) {
  (void)eps;  // precision is the caller's satisfaction tolerance
  auto degs = p.degrees();
  for (int v = 0; v < p.players; ++v)
    if (degs[v] > degree_cap)
      throw InputError("best_response_circuit: degree above cap at player " +
                       std::to_string(v));

  BestResponseCircuit br;
  GeneralizedCircuit& c = br.circuit;
  for (int v = 0; v < p.players; ++v) {
    br.node_of_player.push_back("p" + std::to_string(v));
    c.nodes.push_back(br.node_of_player.back());
  }

  auto add_node = [&c](const std::string& id) {
    c.nodes.push_back(id);
    return id;
  };

  for (int v = 0; v < p.players; ++v) {
    const std::string pv = br.node_of_player[v];
    const int d = std::max(degs[v], 1);
    const double scale = 1.0 / (2.0 * d);
    br.payoff_scale = scale;
    int gates_before = static_cast<int>(c.gates.size());

    // payoff_a = const_a + sum coef_a[u] * p[u]; negative coefficients move
    // to the other side so both comparison sides are positive prefix sums.
    double consts[2] = {0.0, 0.0};
    std::vector<std::pair<std::string, double>> terms[2];
    for (const EdgeGame& e : p.edges) {
      const double(*t)[2] = nullptr;
      int other = -1;
      if (e.u == v) {
        t = e.au;
        other = e.v;
      } else if (e.v == v) {
        t = e.av;
        other = e.u;
      } else {
        continue;
      }
      for (int a = 0; a < 2; ++a) {
        consts[a] += t[a][0];
        double coef = t[a][1] - t[a][0];
        if (coef > 0) {
          terms[a].push_back({br.node_of_player[other], coef});
        } else if (coef < 0) {
          // Adding |coef|*p[u] to BOTH sides cancels the negative term here
          // and appears as a positive term on the other side.
          terms[1 - a].push_back({br.node_of_player[other], -coef});
        }
      }
    }

    std::string side_node[2];
    for (int a = 0; a < 2; ++a) {
      std::string acc = add_node(pv + ".k" + std::to_string(a));
      c.gates.push_back(
          Gate{GateType::Const, consts[a] * scale, {}, acc});
      for (size_t ti = 0; ti < terms[a].size(); ++ti) {
        std::string term =
            add_node(pv + ".m" + std::to_string(a) + "_" + std::to_string(ti));
        c.gates.push_back(Gate{GateType::Mulz, terms[a][ti].second * scale,
                               {terms[a][ti].first}, term});
        std::string next =
            add_node(pv + ".s" + std::to_string(a) + "_" + std::to_string(ti));
        c.gates.push_back(Gate{GateType::Add, std::nullopt, {acc, term}, next});
        acc = next;
      }
      side_node[a] = acc;
    }
    c.gates.push_back(
        Gate{GateType::Less, std::nullopt, {side_node[0], side_node[1]}, pv});
    br.max_block_gates =
        std::max(br.max_block_gates,
                 static_cast<int>(c.gates.size()) - gates_before);
  }

  if (!validate_circuit(br.circuit).empty())
    throw InternalError("best_response_circuit: invalid output circuit");
  return br;
}

GadgetCertificate certify_gadget(GateType kind, std::optional<double> zeta,
                                 const std::vector<double>& pinned_values,
                                 int resolution, double eps, double tol) {
  GadgetCertificate cert;
  cert.kind = kind;
  cert.zeta = zeta;
  GadgetInstance tpl = gadget_for(kind, zeta);

  // Isolated gadget as a 4-player polymatrix game; unused slots are inert.
  PolymatrixGame game;
  game.players = 4;
  game.edges = tpl.edges;

  const int arity = gate_arity(kind);
  std::vector<std::vector<double>> pins;
  if (arity == 0) {
    pins.push_back({});
  } else if (arity == 1) {
    for (double v : pinned_values) pins.push_back({v});
  } else {
    for (double v1 : pinned_values)
      for (double v2 : pinned_values) pins.push_back({v1, v2});
  }

  const double effective_zeta =
      kind == GateType::Copy ? 1.0 : (zeta ? *zeta : 0.0);
  for (const auto& pin : pins) {
    for (int wi = 0; wi <= resolution; ++wi) {
      for (int oi = 0; oi <= resolution; ++oi) {
        MixedProfile prof;
        prof.p.assign(4, 0.0);
        if (arity >= 1) prof.p[GadgetInstance::kIn1] = pin[0];
        if (arity >= 2) prof.p[GadgetInstance::kIn2] = pin[1];
        prof.p[GadgetInstance::kAux] = static_cast<double>(wi) / resolution;
        prof.p[GadgetInstance::kOut] = static_cast<double>(oi) / resolution;
        ++cert.profiles_checked;
        if (vertex_regret(game, prof, GadgetInstance::kAux) > eps) continue;
        if (vertex_regret(game, prof, GadgetInstance::kOut) > eps) continue;
        ++cert.equilibria_found;

        const double out = prof.p[GadgetInstance::kOut];
        bool ok = true;
        if (kind == GateType::Mulz || kind == GateType::Copy) {
          ok = std::abs(out - std::min(effective_zeta * pin[0], 1.0)) <= tol;
        } else {
          Gate g;
          g.kind = kind;
          g.zeta = kind == GateType::Const ? zeta : std::nullopt;
          g.output = "out";
          Assignment a{{"out", out}};
          if (arity >= 1) {
            g.inputs.push_back("a");
            a["a"] = pin[0];
          }
          if (arity >= 2) {
            g.inputs.push_back("b");
            a["b"] = pin[1];
          }
          ok = gate_satisfied(g, a, tol);
        }
        if (!ok) {
          cert.pass = false;
          if (cert.failures.size() < 8) {
            std::ostringstream os;
            os << "pins=(";
            for (size_t i = 0; i < pin.size(); ++i)
              os << (i ? "," : "") << pin[i];
            os << ") aux=" << prof.p[GadgetInstance::kAux] << " out=" << out;
            cert.failures.push_back(os.str());
          }
        }
      }
    }
  }
  return cert;
}

}  // namespace ppadforge
