#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppadforge/games.hpp"
#include "ppadforge/gcircuit.hpp"

namespace ppadforge {

// One per-gate game fragment. Players are local slots; edges always have the
// auxiliary player as endpoint u, which keeps compiled games bipartite
// (node players on one side, auxiliaries on the other).
struct GadgetInstance {
  static constexpr int kIn1 = 0, kIn2 = 1, kAux = 2, kOut = 3;

  GateType kind = GateType::Const;
  std::optional<double> zeta;
  int gate_index = -1;
  std::vector<EdgeGame> edges;  // endpoints are local slot ids
  bool uses_in1 = false, uses_in2 = false;
};

// Payoff tables for one gate kind. The output player anti-coordinates with
// the auxiliary; the auxiliary's two actions weigh the gate's value against
// the output's current probability (or against a fixed threshold for the
// logical gates).
GadgetInstance gadget_for(GateType kind, std::optional<double> zeta);

struct CompilationResult {
  PolymatrixGame game;
  std::map<std::string, int> vertex_map;  // circuit node -> player id
  std::vector<GadgetInstance> gadgets;
  std::vector<int> aux_players;
  int copy_splits = 0;  // COPY gadgets inserted to keep edge pairs distinct
  double players_per_gate = 0.0;
};

// Turns a fan-out-<=2 circuit into a bipartite degree-<=3 polymatrix game by
// concatenating gadgets: the output player of a gate's gadget is the node
// player of its output node, input players are the node players of its input
// nodes. Requires MULZ zeta <= 1 so payoffs stay in [0,1].
CompilationResult compile_circuit(const GeneralizedCircuit& c, double eps);

// x[node] = prof.p[vertex_map[node]].
Assignment decode_profile(const CompilationResult& res,
                          const MixedProfile& prof);

// Per player, drops actions more than sqrt(eps_prime) below the best
// response and renormalizes (for two actions: snaps to the pure best
// response when the gap exceeds the threshold).
MixedProfile strengthen_to_wsne(const PolymatrixGame& p,
                                const MixedProfile& prof, double eps_prime);

struct BestResponseCircuit {
  GeneralizedCircuit circuit;
  std::vector<std::string> node_of_player;  // player id -> node id
  int max_block_gates = 0;
  double payoff_scale = 0.0;  // both comparison sides are scaled by this
};

// Circuit with one node per player holding the probability of action 1.
// Each player's block compares the two action payoffs (as scaled positive
// prefix sums) with a LESS gate whose output is the player's node.
BestResponseCircuit best_response_circuit(const PolymatrixGame& p, double eps,
                                          int degree_cap = 3);

struct GadgetCertificate {
  GateType kind = GateType::Const;
  std::optional<double> zeta;
  bool pass = true;
  long profiles_checked = 0;
  long equilibria_found = 0;
  std::vector<std::string> failures;  // first few offending profiles
};

// Enumerates all free-player profiles of the isolated gadget on a grid,
// pinning the inputs to each value in `pinned_values`; every profile whose
// free players have regret <= eps must place the output within `tol` of the
// gate's constraint (MULZ checked against the clipped form min(zeta*x, 1)).
GadgetCertificate certify_gadget(GateType kind, std::optional<double> zeta,
                                 const std::vector<double>& pinned_values,
                                 int resolution, double eps, double tol);

}  // namespace ppadforge
