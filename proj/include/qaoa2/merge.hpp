#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/oracle.hpp"
#include "qaoa2/partition.hpp"

namespace qaoa2 {

/// Reconciliation problem over block flip indicators s in {+1,-1}^h.
/// For blocks i != j, sync_weights is the inter-block weight already cut by
/// the local solutions and async_weights the inter-block weight not cut.
/// Flipping decisions trade one against the other, which is again MaxCut:
/// coarse_graph carries w'_ij = async_ij - sync_ij (exact zeros omitted), and
///   C'(s) = offset - (1/2) * sum_{i<j} w'_ij s_i s_j
/// equals the base-graph cut of the expanded assignment, exactly, for every s.
struct CoarseProblem {
  Graph coarse_graph;
  double offset = 0.0;  // sum of local cuts + half the total inter-block weight
  std::vector<std::vector<double>> sync_weights;
  std::vector<std::vector<double>> async_weights;
  std::vector<Assignment> local_solutions;
  std::vector<double> local_cuts;
  Partition partition;
  const Graph* base = nullptr;
};

inline CoarseProblem build_coarse(const Graph& g, const Partition& p,
                                  std::vector<Assignment> locals) {
  p.validate(g.n_nodes());
  const std::uint32_t h = p.n_blocks;
  if (locals.size() != h)
    throw std::invalid_argument("build_coarse: need one local solution per block");
  auto blocks = p.blocks();
  std::vector<std::uint32_t> local_idx(g.n_nodes(), 0);
  for (std::uint32_t b = 0; b < h; ++b) {
    if (locals[b].size() != blocks[b].size())
      throw std::invalid_argument("build_coarse: local solution length mismatch in block " +
                                  std::to_string(b));
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      if (locals[b][i] != 1 && locals[b][i] != -1)
        throw std::invalid_argument("build_coarse: local solution entries must be +1/-1");
      local_idx[blocks[b][i]] = std::uint32_t(i);
    }
  }

  CoarseProblem cp;
  cp.sync_weights.assign(h, std::vector<double>(h, 0.0));
  cp.async_weights.assign(h, std::vector<double>(h, 0.0));
  double inter_total = 0.0;
  for (const Edge& e : g.edges()) {
    const std::uint32_t bu = p.block_of[e.u], bv = p.block_of[e.v];
    if (bu == bv) continue;
    const int xu = locals[bu][local_idx[e.u]], xv = locals[bv][local_idx[e.v]];
    auto& m = xu != xv ? cp.sync_weights : cp.async_weights;
    m[bu][bv] += e.w;
    m[bv][bu] += e.w;
    inter_total += e.w;
  }

  const auto subs = induced_subgraphs(g, p);
  cp.local_cuts.resize(h);
  double local_total = 0.0;
  for (std::uint32_t b = 0; b < h; ++b) {
    cp.local_cuts[b] = cut_value(subs[b].graph, locals[b]);
    local_total += cp.local_cuts[b];
  }
  cp.offset = local_total + 0.5 * inter_total;

  std::vector<Edge> cedges;
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = i + 1; j < h; ++j) {
      const double wp = cp.async_weights[i][j] - cp.sync_weights[i][j];
      if (wp != 0.0) cedges.push_back({i, j, wp});
    }
  cp.coarse_graph = Graph(h, std::move(cedges));
  cp.local_solutions = std::move(locals);
  cp.partition = p;
  cp.base = &g;
  return cp;
}

inline double coarse_objective(const CoarseProblem& cp, const Assignment& s) {
  const std::uint32_t h = cp.partition.n_blocks;
  if (s.size() != h)
    throw std::invalid_argument("coarse_objective: assignment length mismatch");
  double acc = 0.0;
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = i + 1; j < h; ++j)
      acc += (cp.async_weights[i][j] - cp.sync_weights[i][j]) * double(s[i] * s[j]);
  return cp.offset - 0.5 * acc;
}

/// Base-graph assignment obtained by flipping each block's local solution by
/// its indicator: z_node = s_block * x_block,local.
inline Assignment expand(const CoarseProblem& cp, const Assignment& s) {
  const std::uint32_t h = cp.partition.n_blocks;
  if (s.size() != h) throw std::invalid_argument("expand: assignment length mismatch");
  auto blocks = cp.partition.blocks();
  Assignment z(cp.partition.block_of.size());
  for (std::uint32_t b = 0; b < h; ++b)
    for (std::size_t i = 0; i < blocks[b].size(); ++i)
      z[blocks[b][i]] = s[b] * cp.local_solutions[b][i];
  return z;
}

using MergeSolver = std::function<Assignment(const Graph&)>;

/// Runs `solver` on the coarse graph, 1-flip polishes its output there, and
/// keeps the better of that and the identity merge s = all +1. The polish
/// makes the coarse cut 1-flip optimal, hence >= half the coarse graph's
/// total weight; combined with half-certified locals that pushes the merged
/// value to at least half the base graph's total weight. The identity
/// candidate guarantees the value never drops below what the local solutions
/// already achieved on their own.
inline std::pair<Assignment, double> solve_merge(const CoarseProblem& cp,
                                                 const MergeSolver& solver) {
  Assignment s = solver(cp.coarse_graph);
  s = local_search_polish(cp.coarse_graph, std::move(s));
  const double val = coarse_objective(cp, s);
  Assignment ones = all_plus(cp.partition.n_blocks);
  const double naive = coarse_objective(cp, ones);
  if (naive > val) return {std::move(ones), naive};
  return {std::move(s), val};
}

/// Writes the coarse problem as an edge list plus a small JSON sidecar with
/// the objective offset and the per-block local cuts.
inline void dump_coarse(const CoarseProblem& cp, std::ostream& graph_out,
                        std::ostream& meta_out) {
  write_edge_list(cp.coarse_graph, graph_out);
  meta_out << "{\n  \"offset\": " << detail::format_weight(cp.offset)
           << ",\n  \"local_cuts\": [";
  for (std::size_t b = 0; b < cp.local_cuts.size(); ++b)
    meta_out << (b ? ", " : "") << detail::format_weight(cp.local_cuts[b]);
  meta_out << "]\n}\n";
}

}  // namespace qaoa2
