#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/rng.hpp"

namespace qaoa2 {

/// Disjoint cover of the node set by nonempty blocks of size <= cap.
struct Partition {
  std::vector<std::uint32_t> block_of;  // node -> block index, blocks dense 0..n_blocks-1
  std::uint32_t n_blocks = 0;
  std::uint32_t cap = 0;

  /// Block members, ascending node id within each block.
  std::vector<std::vector<NodeId>> blocks() const {
    std::vector<std::vector<NodeId>> out(n_blocks);
    for (NodeId u = 0; u < block_of.size(); ++u) out[block_of[u]].push_back(u);
    return out;
  }

  void validate(std::size_t n_nodes) const {
    if (block_of.size() != n_nodes)
      throw std::invalid_argument("partition: node count mismatch");
    if (cap == 0) throw std::invalid_argument("partition: cap must be >= 1");
    std::vector<std::uint32_t> sizes(n_blocks, 0);
    for (std::uint32_t b : block_of) {
      if (b >= n_blocks) throw std::invalid_argument("partition: block index out of range");
      ++sizes[b];
    }
    for (std::uint32_t s : sizes) {
      if (s == 0) throw std::invalid_argument("partition: empty block");
      if (s > cap) throw std::invalid_argument("partition: block exceeds cap");
    }
  }
};

/// Shuffles the node order with the partition stream of `seed`, then chunks
/// into ceil(n/cap) blocks; every block has exactly cap nodes except possibly
/// the last.
inline Partition random_partition(const Graph& g, std::uint32_t cap, std::uint64_t seed) {
  if (cap == 0) throw std::invalid_argument("random_partition: cap must be >= 1");
  const std::size_t n = g.n_nodes();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId(0));
  auto gen = make_stream(seed, "partition");
  shuffle_vec(order, gen);
  Partition p;
  p.cap = cap;
  p.n_blocks = std::uint32_t((n + cap - 1) / cap);
  p.block_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.block_of[order[i]] = std::uint32_t(i / cap);
  return p;
}

/// Newman modularity of the partition: sum over blocks of
/// W_b/m - (K_b/2m)^2, where W_b is intra-block weight, K_b the summed
/// weighted degrees, m the total weight. Requires m > 0.
inline double modularity(const Graph& g, const Partition& p) {
  p.validate(g.n_nodes());
  const double m = g.total_weight();
  if (!(m > 0.0)) throw std::invalid_argument("modularity: total weight must be positive");
  std::vector<double> intra(p.n_blocks, 0.0), degsum(p.n_blocks, 0.0);
  for (const Edge& e : g.edges()) {
    const std::uint32_t bu = p.block_of[e.u], bv = p.block_of[e.v];
    if (bu == bv) intra[bu] += e.w;
    degsum[bu] += e.w;
    degsum[bv] += e.w;
  }
  double q = 0.0;
  for (std::uint32_t b = 0; b < p.n_blocks; ++b) {
    const double frac = degsum[b] / (2.0 * m);
    q += intra[b] / m - frac * frac;
  }
  return q;
}

/// Agglomerative modularity maximization (CNM-style) with a hard size cap:
/// start from singletons, repeatedly take the admissible merge with the
/// largest positive gain dQ = E_ab/m - K_a*K_b/(2m^2); ties go to the
/// lexicographically smallest pair of community labels (a label is the
/// smallest node id in the community). Deterministic, no randomness.
inline Partition greedy_modularity_partition(const Graph& g, std::uint32_t cap) {
  if (cap == 0) throw std::invalid_argument("greedy_modularity_partition: cap must be >= 1");
  const std::size_t n = g.n_nodes();
  Partition out;
  out.cap = cap;
  out.block_of.assign(n, 0);
  if (n == 0) return out;

  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId(0));
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  const double m = g.total_weight();
  std::vector<std::uint32_t> csize(n, 1);
  std::vector<double> degsum(n, 0.0);
  // inter-community weight sums, keyed by the partner's current root
  std::vector<std::unordered_map<NodeId, double>> nbr(n);
  for (const Edge& e : g.edges()) {
    degsum[e.u] += e.w;
    degsum[e.v] += e.w;
    nbr[e.u][e.v] += e.w;
    nbr[e.v][e.u] += e.w;
  }

  if (m > 0.0) {
    for (;;) {
      double best_dq = 0.0;
      NodeId best_a = 0, best_b = 0;
      bool found = false;
      for (NodeId a = 0; a < n; ++a) {
        if (parent[a] != a) continue;
        for (const auto& [b, w] : nbr[a]) {
          if (b <= a) continue;
          if (csize[a] + csize[b] > cap) continue;
          const double dq = w / m - degsum[a] * degsum[b] / (2.0 * m * m);
          if (dq <= 0.0) continue;
          if (!found || dq > best_dq ||
              (dq == best_dq && (a < best_a || (a == best_a && b < best_b)))) {
            found = true;
            best_dq = dq;
            best_a = a;
            best_b = b;
          }
        }
      }
      if (!found) break;
      // absorb b into a; a stays the root since a < b
      const NodeId a = best_a, b = best_b;
      parent[b] = a;
      csize[a] += csize[b];
      degsum[a] += degsum[b];
      for (const auto& [c, w] : nbr[b]) {
        if (c == a) continue;
        nbr[a][c] += w;
        nbr[c].erase(b);
        nbr[c][a] += w;
      }
      nbr[a].erase(b);
      nbr[b].clear();
    }
  }

  // dense block labels in root order
  std::vector<std::uint32_t> label(n, 0);
  std::uint32_t next = 0;
  for (NodeId u = 0; u < n; ++u)
    if (parent[u] == u) label[u] = next++;
  for (NodeId u = 0; u < n; ++u) out.block_of[u] = label[find(u)];
  out.n_blocks = next;
  return out;
}

/// Induced subgraph of one block plus the local-to-parent node map.
struct Subgraph {
  Graph graph;
  std::vector<NodeId> nodes;  // local index -> parent node id, ascending
};

/// One induced subgraph per block. Node ids are re-indexed to 0..|block|-1
/// following the ascending member order; only intra-block edges survive.
inline std::vector<Subgraph> induced_subgraphs(const Graph& g, const Partition& p) {
  p.validate(g.n_nodes());
  auto blocks = p.blocks();
  std::vector<std::uint32_t> local(g.n_nodes(), 0);
  for (const auto& members : blocks)
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = std::uint32_t(i);
  std::vector<std::vector<Edge>> bedges(p.n_blocks);
  for (const Edge& e : g.edges()) {
    const std::uint32_t bu = p.block_of[e.u];
    if (bu == p.block_of[e.v]) bedges[bu].push_back({local[e.u], local[e.v], e.w});
  }
  std::vector<Subgraph> out;
  out.reserve(p.n_blocks);
  for (std::uint32_t b = 0; b < p.n_blocks; ++b)
    out.push_back({Graph(blocks[b].size(), std::move(bedges[b])), std::move(blocks[b])});
  return out;
}

}  // namespace qaoa2
