#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/rng.hpp"

namespace qaoa2 {

inline constexpr std::size_t kBruteForceMaxNodes = 22;

/// Exhaustive MaxCut. Node 0 is pinned to +1 (global spin flip preserves the
/// cut), the remaining nodes are enumerated in Gray-code order so each step
/// flips one spin and updates the cut in O(degree). Ties keep the first
/// maximizer in enumeration order.
inline std::pair<Assignment, double> brute_force(const Graph& g) {
  const std::size_t n = g.n_nodes();
  if (n > kBruteForceMaxNodes)
    throw std::invalid_argument("brute_force: graph exceeds " +
                                std::to_string(kBruteForceMaxNodes) + " nodes");
  Assignment a = all_plus(n);
  Assignment best_a = a;
  double cur = 0.0, best = 0.0;
  if (n >= 2) {
    const std::uint64_t steps = 1ULL << (n - 1);
    for (std::uint64_t t = 1; t < steps; ++t) {
      const std::size_t k = std::size_t(std::countr_zero(t)) + 1;  // Gray-code flip
      double gain = 0.0;
      for (const auto& [v, w] : g.neighbors(NodeId(k))) gain += a[k] == a[v] ? w : -w;
      a[k] = -a[k];
      cur += gain;
      if (cur > best) {
        best = cur;
        best_a = a;
      }
    }
  }
  return {std::move(best_a), best};
}

/// First-improvement 1-flip local search: sweep nodes in index order, flip
/// whenever the flip strictly increases the cut, repeat until a full sweep
/// makes no flip. The result is 1-flip optimal, which certifies
/// cut >= total_weight/2 (summing the per-node optimality conditions), and
/// that bound holds for signed weights too.
inline Assignment local_search_polish(const Graph& g, Assignment a) {
  if (a.size() != g.n_nodes())
    throw std::invalid_argument("local_search_polish: assignment length mismatch");
  bool improved = true;
  while (improved) {
    improved = false;
    for (NodeId u = 0; u < g.n_nodes(); ++u) {
      double gain = 0.0;
      for (const auto& [v, w] : g.neighbors(u)) gain += a[u] == a[v] ? w : -w;
      if (gain > 0.0) {
        a[u] = -a[u];
        improved = true;
      }
    }
  }
  return a;
}

/// Polishes `restarts` uniformly random starting assignments and keeps the
/// best final cut; ties keep the lowest restart index. Restart r draws from
/// the stream (seed, "multistart", r), so the result does not depend on
/// evaluation order.
inline std::pair<Assignment, double> multistart_local_search(const Graph& g,
                                                             std::size_t restarts,
                                                             std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("multistart_local_search: need restarts >= 1");
  Assignment best_a;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    auto gen = make_stream(seed, "multistart", r);
    Assignment start(g.n_nodes());
    for (int& s : start) s = (gen() & 1) ? -1 : +1;
    Assignment a = local_search_polish(g, std::move(start));
    const double v = cut_value(g, a);
    if (v > best) {
      best = v;
      best_a = std::move(a);
    }
  }
  return {std::move(best_a), best};
}

inline constexpr double kParisiConstant = 0.7632;

/// Asymptotic optimum cut of a random unweighted d-regular graph:
/// (d/4 + P*sqrt(d/4)) * n with the Parisi constant P.
inline double asymptotic_optimum(double n, double d) {
  return (d / 4.0 + kParisiConstant * std::sqrt(d / 4.0)) * n;
}

}  // namespace qaoa2
