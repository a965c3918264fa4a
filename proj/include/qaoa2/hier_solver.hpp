#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/merge.hpp"
#include "qaoa2/oracle.hpp"
#include "qaoa2/parallel.hpp"
#include "qaoa2/partition.hpp"
#include "qaoa2/qaoa.hpp"

namespace qaoa2 {

enum class PartitionStrategy { random, greedy };
enum class SolverKind { qaoa, brute_force, local_search };
enum class MergeMode { optimized, naive };
enum class DenominatorKind { none, exact, asymptotic, best_known };

struct SolverChoice {
  SolverKind kind = SolverKind::qaoa;
  QaoaConfig qaoa_cfg;  // seed field is overwritten per block
};

struct PhaseTimes {
  double partition_ms = 0.0;
  double local_ms = 0.0;
  double merge_ms = 0.0;  // reported as total minus the measured phases
  double polish_ms = 0.0;
  double total_ms = 0.0;
};

struct SolveReport {
  Assignment assignment;
  double cut = 0.0;
  double cut_before_polish = 0.0;
  int depth = 0;                             // number of partition/merge rounds
  std::vector<std::size_t> blocks_per_level;
  std::optional<double> partition_modularity;  // top-level partition only
  PhaseTimes wall;
  std::uint64_t seed = 0;
  DenominatorKind denominator_kind = DenominatorKind::none;
  double denominator = 0.0;
  double ratio = 0.0;
};

struct SolveOptions {
  std::uint32_t budget = 10;
  PartitionStrategy partition = PartitionStrategy::random;
  SolverChoice solver;
  MergeMode merge = MergeMode::optimized;
  std::uint64_t seed = 0;
  DenominatorKind denominator = DenominatorKind::none;
  std::optional<double> nominal_degree;  // required by the asymptotic denominator
  std::size_t best_known_restarts = 100;
  // observation hook, called once per level with the coarse problem
  std::function<void(int level, const CoarseProblem&)> on_coarse;
};

/// Reference value the final cut is compared against. `exact` enumerates
/// (node-count capped), `asymptotic` applies the d-regular formula and
/// requires an unweighted graph plus the nominal degree, `best_known` is a
/// multistart local-search champion.
inline double select_denominator(const Graph& g, DenominatorKind kind,
                                 std::optional<double> nominal_degree = {},
                                 std::size_t restarts = 100, std::uint64_t seed = 0) {
  switch (kind) {
    case DenominatorKind::none:
      return 0.0;
    case DenominatorKind::exact:
      return brute_force(g).second;
    case DenominatorKind::asymptotic: {
      if (!nominal_degree)
        throw std::invalid_argument("select_denominator: asymptotic needs the nominal degree");
      for (const Edge& e : g.edges())
        if (e.w != 1.0)
          throw std::invalid_argument("select_denominator: asymptotic applies to unweighted graphs only");
      return asymptotic_optimum(double(g.n_nodes()), *nominal_degree);
    }
    case DenominatorKind::best_known:
      return multistart_local_search(g, restarts, derive_seed(seed, "denominator")).second;
  }
  throw std::logic_error("select_denominator: unreachable");
}

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline Assignment run_block_solver(const Graph& g, const SolverChoice& sc, std::uint64_t seed) {
  if (g.n_edges() == 0) return all_plus(g.n_nodes());  // nothing to cut
  switch (sc.kind) {
    case SolverKind::qaoa: {
      QaoaConfig cfg = sc.qaoa_cfg;
      cfg.seed = seed;
      return qaoa_solve(g, cfg);
    }
    case SolverKind::brute_force:
      return brute_force(g).first;
    case SolverKind::local_search: {
      auto gen = make_stream(seed, "local-search");
      Assignment start(g.n_nodes());
      for (int& s : start) s = (gen() & 1) ? -1 : +1;
      return local_search_polish(g, std::move(start));
    }
  }
  throw std::logic_error("run_block_solver: unreachable");
}

}  // namespace detail

/// Hierarchical MaxCut. Graphs within the budget are solved directly.
/// Larger graphs are partitioned into blocks of at most `budget` nodes
/// (greedy strategy applies at the top level when the graph is unsigned;
/// coarse levels always partition randomly), the blocks are solved
/// concurrently with per-(level, block) seed streams, and the signed coarse
/// reconciliation problem is solved by the same procedure one level up.
/// The final assignment gets one more 1-flip polish on the base graph, so
/// every returned cut is 1-flip optimal and at least half the total weight.
inline SolveReport solve(const Graph& g, const SolveOptions& opt) {
  if (opt.budget < 2) throw std::invalid_argument("solve: need budget >= 2");
  if (opt.budget > kMaxQubits && opt.solver.kind == SolverKind::qaoa)
    throw std::invalid_argument("solve: budget exceeds the simulator qubit cap " +
                                std::to_string(kMaxQubits));
  if (opt.solver.kind == SolverKind::brute_force && opt.budget > kBruteForceMaxNodes)
    throw std::invalid_argument("solve: budget exceeds the enumeration cap");
  if (opt.solver.kind == SolverKind::qaoa) opt.solver.qaoa_cfg.validate();

  SolveReport rep;
  rep.seed = opt.seed;
  rep.denominator_kind = opt.denominator;
  PhaseTimes wall;
  std::vector<std::size_t> blocks_log;
  std::optional<double> top_modularity;

  const auto t_start = std::chrono::steady_clock::now();

  std::function<Assignment(const Graph&, int)> solve_rec = [&](const Graph& gg,
                                                               int level) -> Assignment {
    if (gg.n_nodes() <= opt.budget) {
      const auto t0 = std::chrono::steady_clock::now();
      Assignment a =
          detail::run_block_solver(gg, opt.solver, derive_seed(opt.seed, "direct", level));
      wall.local_ms += detail::ms_since(t0);
      return a;
    }

    const auto t_part = std::chrono::steady_clock::now();
    bool unsigned_weights = true;
    for (const Edge& e : gg.edges())
      if (e.w < 0.0) {
        unsigned_weights = false;
        break;
      }
    Partition part;
    if (opt.partition == PartitionStrategy::greedy && level == 0 && unsigned_weights &&
        gg.total_weight() > 0.0)
      part = greedy_modularity_partition(gg, opt.budget);
    else
      part = random_partition(gg, opt.budget, derive_seed(opt.seed, "partition", level));
    wall.partition_ms += detail::ms_since(t_part);
    if (level == 0 && unsigned_weights && gg.total_weight() > 0.0)
      top_modularity = modularity(gg, part);
    blocks_log.push_back(part.n_blocks);

    const auto subs = induced_subgraphs(gg, part);
    std::vector<Assignment> locals(subs.size());
    const auto t_local = std::chrono::steady_clock::now();
    parallel_for(subs.size(), [&](std::size_t b) {
      try {
        locals[b] = detail::run_block_solver(subs[b].graph, opt.solver,
                                             derive_seed(opt.seed, "local", level, b));
      } catch (const std::exception& e) {
        throw std::runtime_error("block " + std::to_string(b) + " at level " +
                                 std::to_string(level) + ": " + e.what());
      }
    });
    wall.local_ms += detail::ms_since(t_local);

    const CoarseProblem cp = build_coarse(gg, part, std::move(locals));
    if (opt.on_coarse) opt.on_coarse(level, cp);
    Assignment s;
    if (opt.merge == MergeMode::naive)
      s = all_plus(part.n_blocks);
    else
      s = solve_merge(cp, [&](const Graph& cg) { return solve_rec(cg, level + 1); }).first;
    return expand(cp, s);
  };

  Assignment z = solve_rec(g, 0);
  rep.cut_before_polish = cut_value(g, z);
  const auto t_polish = std::chrono::steady_clock::now();
  z = local_search_polish(g, std::move(z));
  wall.polish_ms = detail::ms_since(t_polish);

  rep.assignment = std::move(z);
  rep.cut = cut_value(g, rep.assignment);
  rep.depth = int(blocks_log.size());
  rep.blocks_per_level = std::move(blocks_log);
  rep.partition_modularity = top_modularity;

  if (opt.denominator != DenominatorKind::none) {
    rep.denominator = select_denominator(g, opt.denominator, opt.nominal_degree,
                                         opt.best_known_restarts, opt.seed);
    rep.ratio = rep.denominator != 0.0 ? rep.cut / rep.denominator : 0.0;
  }

  wall.total_ms = detail::ms_since(t_start);
  wall.merge_ms = wall.total_ms - wall.partition_ms - wall.local_ms - wall.polish_ms;
  if (wall.merge_ms < 0.0) wall.merge_ms = 0.0;
  rep.wall = wall;
  return rep;
}

}  // namespace qaoa2
