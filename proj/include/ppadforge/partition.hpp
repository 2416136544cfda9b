#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppadforge/util.hpp"

namespace ppadforge {

// Bipartite graph with n vertices per side; vertices are 0..n-1 on each side
// independently. `d` is the (nominal) regular degree.
struct BipartiteGraph {
  int n = 0;
  int d = 0;
  std::vector<std::pair<int, int>> edges;  // (u in U, v in V)
};

// Checks index ranges and, when `require_regular`, that every vertex has
// degree exactly d.
std::vector<std::string> validate_graph(const BipartiteGraph& g,
                                        bool require_regular = true);

struct Partition {
  int k = 0;
  std::vector<std::vector<int>> S_parts;  // U side, consecutive index blocks
  std::vector<std::vector<int>> T_parts;  // V side, greedy placement
};

// Splits U into consecutive blocks of size k (the last absorbs any
// remainder) and places V vertices in index order into the lowest-indexed
// part that respects both the size bound (< 2k before insertion) and, for
// every adjacent S-part, the pairwise edge bound (< 2 d^2 k^2 / n after
// insertion). Raises InternalError when no part fits, which the counting
// argument rules out for d-regular inputs with k >= sqrt(n).
Partition greedy_partition(const BipartiteGraph& g, int k);

struct PartitionReport {
  bool ok = true;
  std::vector<std::string> violations;
  double edge_bound = 0.0;  // 2 d^2 k^2 / n
  int max_pair_edges = 0;
};

// Independent recount of disjointness, coverage, size bounds (<= 2k on both
// sides) and all pairwise edge counts.
PartitionReport verify_partition(const BipartiteGraph& g, const Partition& p);

// d-regular bipartite graph from d superposed random permutations, resampled
// until simple. Deterministic for a fixed seed.
BipartiteGraph random_regular_bipartite(int n, int d, std::uint64_t seed);

}  // namespace ppadforge
