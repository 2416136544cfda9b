#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppadforge/gcircuit.hpp"

namespace ppadforge {

struct NormalizationResult {
  GeneralizedCircuit circuit;  // max fan-out <= 2
  std::vector<std::string> original_nodes;
  // Original high-fanout node -> replacement nodes, one per consumer slot in
  // gate order. Only treated nodes appear.
  std::map<std::string, std::vector<std::string>> node_map;
  double eps = 0.0;
  double eps_hat = 0.0;  // tightened per-gate tolerance eps^2/16

  int original_gates = 0;
  int added_total = 0;
  int added_not_tree = 0;     // copy trees (double negation)
  int added_parse = 0;        // unary-parse ladder incl. threshold consts
  int added_reconstruct = 0;  // per-consumer prefix sums
  double c0 = 0.0;            // observed constant in added <= |T| * c0 / eps
};

// Rewrites the circuit so no node is read by more than two gate input slots.
//
// Outputs of LESS/OR/AND/NOT are replicated through complete binary trees of
// NOT gates of even depth; their noise does not accumulate. Outputs of
// CONST/MULZ/COPY/ADD/SUB, and nodes with no producing gate, are first parsed
// into a unary representation by a chained subtract-compare ladder (step eps,
// thresholds eps/2, so every intermediate node is read at most twice), each
// unary bit is replicated through a NOT tree, and every consumer receives its
// own prefix-sum reconstruction accurate to eps/2.
NormalizationResult normalize_fanout(const GeneralizedCircuit& c, double eps);

// Extends an assignment on the original nodes to the normalized circuit by
// ideal forward evaluation of the added scaffolding. The restriction to
// original nodes is preserved exactly, and every added gate is exactly
// satisfied.
Assignment lift_assignment(const NormalizationResult& res, const Assignment& a);

// Projection onto the original node set.
Assignment restrict_assignment(const NormalizationResult& res,
                               const Assignment& a_norm);

}  // namespace ppadforge
