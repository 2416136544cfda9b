#include "ppadforge/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ppadforge {

std::vector<std::string> validate_graph(const BipartiteGraph& g,
                                        bool require_regular) {
  std::vector<std::string> out;
  if (g.n <= 0) out.push_back("side size must be positive");
  std::vector<int> du(g.n, 0), dv(g.n, 0);
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n) {
      out.push_back("edge endpoint out of range");
      continue;
    }
    if (!seen.insert({u, v}).second) out.push_back("duplicate edge");
    ++du[u];
    ++dv[v];
  }
  if (require_regular)
    for (int i = 0; i < g.n; ++i)
      if (du[i] != g.d || dv[i] != g.d) {
        out.push_back("graph is not " + std::to_string(g.d) + "-regular");
        break;
      }
  return out;
}

Partition greedy_partition(const BipartiteGraph& g, int k) {
  if (k < 1 || k > g.n) throw InputError("greedy_partition: bad block size");
  Partition p;
  p.k = k;
  const int parts = std::max(g.n / k, 1);

  // U side: consecutive blocks of size k; the last absorbs the remainder.
  p.S_parts.assign(parts, {});
  std::vector<int> s_part_of(g.n);
  for (int u = 0; u < g.n; ++u) {
    int i = std::min(u / k, parts - 1);
    p.S_parts[i].push_back(u);
    s_part_of[u] = i;
  }

  const double bound = 2.0 * g.d * g.d * k * k / g.n;
  std::vector<std::vector<int>> adj(g.n);  // V vertex -> incident U vertices
  for (const auto& [u, v] : g.edges) adj[v].push_back(u);

  p.T_parts.assign(parts, {});
  // pair_edges[i][j] = current |(S_i x T_j) ∩ E|
  std::vector<std::vector<int>> pair_edges(parts, std::vector<int>(parts, 0));
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> new_edges(parts, 0);  // edges from v into each S-part
    for (int u : adj[v]) ++new_edges[s_part_of[u]];
    int placed = -1;
    for (int j = 0; j < parts && placed < 0; ++j) {
      if (static_cast<int>(p.T_parts[j].size()) >= 2 * k) continue;
      bool fits = true;
      for (int i = 0; i < parts && fits; ++i)
        if (new_edges[i] > 0 &&
            pair_edges[i][j] + new_edges[i] >= bound)
          fits = false;
      if (fits) placed = j;
    }
    if (placed < 0)
      throw InternalError("greedy_partition: no feasible part for vertex " +
                          std::to_string(v));
    p.T_parts[placed].push_back(v);
    for (int i = 0; i < parts; ++i) pair_edges[i][placed] += new_edges[i];
  }
  return p;
}

PartitionReport verify_partition(const BipartiteGraph& g, const Partition& p) {
  PartitionReport rep;
  rep.edge_bound = 2.0 * g.d * g.d * p.k * p.k / g.n;
  auto check_side = [&](const std::vector<std::vector<int>>& parts,
                        const char* name) {
    std::vector<int> seen(g.n, 0);
    for (const auto& part : parts) {
      if (static_cast<int>(part.size()) > 2 * p.k)
        rep.violations.push_back(std::string(name) + " size: part of size " +
                                 std::to_string(part.size()) + " > 2k");
      for (int v : part) {
        if (v < 0 || v >= g.n) {
          rep.violations.push_back(std::string(name) + " coverage: index out of range");
          continue;
        }
        if (seen[v]++)
          rep.violations.push_back(std::string(name) +
                                   " disjointness: vertex appears twice");
      }
    }
    for (int v = 0; v < g.n; ++v)
      if (!seen[v])
        rep.violations.push_back(std::string(name) + " coverage: vertex " +
                                 std::to_string(v) + " missing");
  };
  check_side(p.S_parts, "S");
  check_side(p.T_parts, "T");

  std::vector<int> s_of(g.n, -1), t_of(g.n, -1);
  for (int i = 0; i < static_cast<int>(p.S_parts.size()); ++i)
    for (int u : p.S_parts[i])
      if (u >= 0 && u < g.n) s_of[u] = i;
  for (int j = 0; j < static_cast<int>(p.T_parts.size()); ++j)
    for (int v : p.T_parts[j])
      if (v >= 0 && v < g.n) t_of[v] = j;
  std::vector<std::vector<int>> cnt(p.S_parts.size(),
                                    std::vector<int>(p.T_parts.size(), 0));
  for (const auto& [u, v] : g.edges)
    if (s_of[u] >= 0 && t_of[v] >= 0) ++cnt[s_of[u]][t_of[v]];
  for (const auto& row : cnt)
    for (int c : row) {
      rep.max_pair_edges = std::max(rep.max_pair_edges, c);
      if (!(c < rep.edge_bound))
        rep.violations.push_back("edges: pair count " + std::to_string(c) +
                                 " reaches bound");
    }
  rep.ok = rep.violations.empty();
  return rep;
}

BipartiteGraph random_regular_bipartite(int n, int d, std::uint64_t seed) {
  if (n < d || d < 1)
    throw InputError("random_regular_bipartite: need n >= d >= 1");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::set<std::pair<int, int>> used;
    bool simple = true;
    for (int s = 0; s < d && simple; ++s) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int u = 0; u < n; ++u)
        if (!used.insert({u, perm[u]}).second) {
          simple = false;
          break;
        }
    }
    if (simple) {
      BipartiteGraph g;
      g.n = n;
      g.d = d;
      g.edges.assign(used.begin(), used.end());
      return g;
    }
  }
  throw InternalError("random_regular_bipartite: no simple graph after 1000 tries");
}

}  // namespace ppadforge
