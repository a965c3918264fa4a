#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qaoa2/merge.hpp"
#include "qaoa2/oracle.hpp"

using namespace qaoa2;

namespace {

Graph ring(std::size_t n, double w = 1.0) {
  std::vector<Edge> es;
  for (NodeId u = 0; u < n; ++u) es.push_back({u, NodeId((u + 1) % n), w});
  return Graph(n, std::move(es));
}

Partition make_partition(std::vector<std::uint32_t> block_of, std::uint32_t cap) {
  Partition p;
  p.block_of = std::move(block_of);
  p.n_blocks = *std::max_element(p.block_of.begin(), p.block_of.end()) + 1;
  p.cap = cap;
  return p;
}

// every coarse assignment, exhaustively
std::vector<Assignment> all_signs(std::uint32_t h) {
  std::vector<Assignment> out;
  for (std::uint64_t mask = 0; mask < (1ULL << h); ++mask) {
    Assignment s(h);
    for (std::uint32_t b = 0; b < h; ++b) s[b] = (mask >> b) & 1 ? -1 : +1;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("ring with adjacent blocks: frozen coarse numbers") {
  const Graph g = ring(4);
  const Partition p = make_partition({0, 0, 1, 1}, 2);
  // both blocks solve their single internal edge: locals cut 1 each
  const CoarseProblem cp = build_coarse(g, p, {{+1, -1}, {+1, -1}});

  CHECK(cp.local_cuts == std::vector<double>{1.0, 1.0});
  // inter edges 1-2 (x=-1 vs x=+1, differs -> sync) and 3-0 (x=-1 vs x=+1, sync)
  CHECK(cp.sync_weights[0][1] == 2.0);
  CHECK(cp.async_weights[0][1] == 0.0);
  CHECK(cp.offset == 3.0);  // 2 local cuts + half of 2 inter weight
  REQUIRE(cp.coarse_graph.n_edges() == 1);
  CHECK(cp.coarse_graph.edges()[0].w == -2.0);  // w' = async - sync

  CHECK(coarse_objective(cp, {+1, +1}) == 4.0);
  CHECK(coarse_objective(cp, {-1, -1}) == 4.0);
  CHECK(coarse_objective(cp, {+1, -1}) == 2.0);
  CHECK(expand(cp, {+1, -1}) == Assignment{+1, -1, -1, +1});
  CHECK(expand(cp, {+1, +1}) == Assignment{+1, -1, +1, -1});

  for (const Assignment& s : all_signs(2))
    CHECK(coarse_objective(cp, s) == cut_value(g, expand(cp, s)));
}

TEST_CASE("ring with diagonal blocks: flip-indifferent coarse problem") {
  const Graph g = ring(4);
  const Partition p = make_partition({0, 1, 0, 1}, 2);
  const CoarseProblem cp = build_coarse(g, p, {{+1, -1}, {+1, -1}});

  CHECK(cp.local_cuts == std::vector<double>{0.0, 0.0});  // no internal edges
  CHECK(cp.sync_weights[0][1] == 2.0);
  CHECK(cp.async_weights[0][1] == 2.0);
  CHECK(cp.offset == 2.0);
  CHECK(cp.coarse_graph.n_edges() == 0);  // w' = 0 edges are omitted

  for (const Assignment& s : all_signs(2)) {
    CHECK(coarse_objective(cp, s) == 2.0);
    CHECK(cut_value(g, expand(cp, s)) == 2.0);
  }
}

TEST_CASE("offsetting inter edges cancel out of the coarse graph but not the offset") {
  const Graph g(4, {{0, 2, 1.0}, {0, 3, 1.0}});
  const Partition p = make_partition({0, 0, 1, 1}, 2);
  const CoarseProblem cp = build_coarse(g, p, {{+1, -1}, {+1, -1}});
  CHECK(cp.sync_weights[0][1] == 1.0);   // edge 0-3 joins opposite local spins
  CHECK(cp.async_weights[0][1] == 1.0);  // edge 0-2 joins equal local spins
  CHECK(cp.coarse_graph.n_edges() == 0);
  CHECK(cp.offset == 1.0);
  for (const Assignment& s : all_signs(2))
    CHECK(coarse_objective(cp, s) == cut_value(g, expand(cp, s)));
}

TEST_CASE("coarse objective equals the expanded cut on random instances") {
  auto gen = make_stream(321, "test");
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 6 + trial % 7;
    const Graph g = generate(GraphKind::erdos_renyi, n, 3 + trial % 3, trial % 2, gen(), 0);
    const std::uint32_t cap = 2 + trial % 3;
    const Partition p = random_partition(g, cap, gen());
    const auto subs = induced_subgraphs(g, p);
    std::vector<Assignment> locals;
    for (const auto& s : subs) {
      Assignment a(s.graph.n_nodes());
      for (int& x : a) x = (gen() & 1) ? -1 : +1;
      locals.push_back(std::move(a));
    }
    const CoarseProblem cp = build_coarse(g, p, locals);

    double inter = 0.0, pair_sum = 0.0;
    for (const Edge& e : g.edges())
      if (p.block_of[e.u] != p.block_of[e.v]) inter += e.w;
    double local_sum = 0.0;
    for (std::uint32_t b = 0; b < p.n_blocks; ++b) {
      local_sum += cp.local_cuts[b];
      for (std::uint32_t c = b + 1; c < p.n_blocks; ++c)
        pair_sum += cp.sync_weights[b][c] + cp.async_weights[b][c];
    }
    CHECK(pair_sum == inter);  // sync/async split conserves inter-block weight
    CHECK(cp.offset == local_sum + 0.5 * inter);

    double best_coarse = -1e300;
    for (const Assignment& s : all_signs(p.n_blocks)) {
      const double obj = coarse_objective(cp, s);
      CHECK(obj == cut_value(g, expand(cp, s)));
      best_coarse = std::max(best_coarse, obj);
    }
    // the coarse optimum found by enumeration never beats the true optimum
    if (n <= 12) CHECK(best_coarse <= brute_force(g).second);
  }
}

TEST_CASE("solve merge recovers the ring optimum through the coarse graph") {
  const Graph g = ring(4);
  const CoarseProblem cp =
      build_coarse(g, make_partition({0, 0, 1, 1}, 2), {{+1, -1}, {+1, -1}});
  const auto [s, value] = solve_merge(cp, [](const Graph& cg) { return brute_force(cg).first; });
  CHECK(value == 4.0);
  CHECK(coarse_objective(cp, s) == 4.0);
  CHECK(cut_value(g, expand(cp, s)) == 4.0);
}

TEST_CASE("the all-plus candidate rescues a stalled coarse local optimum") {
  // blocks {2k, 2k+1} chained in a ring so every adjacent pair has one
  // synchronized inter edge: the coarse graph is a 4-ring of weight -1
  const Graph g(8, {{1, 2, 1.0}, {3, 4, 1.0}, {5, 6, 1.0}, {7, 0, 1.0}});
  const Partition p = make_partition({0, 0, 1, 1, 2, 2, 3, 3}, 2);
  const std::vector<Assignment> locals(4, Assignment{+1, -1});
  const CoarseProblem cp = build_coarse(g, p, locals);
  REQUIRE(cp.coarse_graph.n_edges() == 4);
  for (const Edge& e : cp.coarse_graph.edges()) CHECK(e.w == -1.0);

  // (+,+,-,-) is 1-flip optimal on that signed ring (all flip gains are 0)
  // yet scores only 2; the identity merge scores 4 and must win
  const Assignment stall{+1, +1, -1, -1};
  CHECK(local_search_polish(cp.coarse_graph, stall) == stall);
  CHECK(coarse_objective(cp, stall) == 2.0);
  const auto [s, value] = solve_merge(cp, [&](const Graph&) { return stall; });
  CHECK(s == Assignment{+1, +1, +1, +1});
  CHECK(value == 4.0);
  CHECK(cut_value(g, expand(cp, s)) == 4.0);
}

TEST_CASE("merged value never drops below the identity merge") {
  auto gen = make_stream(654, "test");
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = generate(GraphKind::erdos_renyi, 12, 4, true, gen(), 0);
    const Partition p = random_partition(g, 3, gen());
    const auto subs = induced_subgraphs(g, p);
    std::vector<Assignment> locals;
    for (const auto& s : subs) {
      Assignment a(s.graph.n_nodes());
      for (int& x : a) x = (gen() & 1) ? -1 : +1;
      locals.push_back(std::move(a));
    }
    const CoarseProblem cp = build_coarse(g, p, locals);
    // a hostile solver hands back random signs
    const auto [s, value] = solve_merge(cp, [&](const Graph& cg) {
      Assignment r(cg.n_nodes());
      for (int& x : r) x = (gen() & 1) ? -1 : +1;
      return r;
    });
    CHECK(value >= coarse_objective(cp, all_plus(p.n_blocks)));
    CHECK(value == cut_value(g, expand(cp, s)));
  }
}

TEST_CASE("single-block coarse problem degenerates cleanly") {
  const Graph g(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  const CoarseProblem cp = build_coarse(g, make_partition({0, 0, 0}, 3), {{+1, -1, +1}});
  CHECK(cp.offset == 3.0);  // the local cut is the whole objective
  CHECK(cp.coarse_graph.n_nodes() == 1);
  const auto [s, value] = solve_merge(cp, [](const Graph& cg) { return all_plus(cg.n_nodes()); });
  CHECK(value == 3.0);
  CHECK(expand(cp, s) == Assignment{+1, -1, +1});
}

TEST_CASE("build coarse validates local solutions") {
  const Graph g = ring(4);
  const Partition p = make_partition({0, 0, 1, 1}, 2);
  CHECK_THROWS_AS(build_coarse(g, p, {{+1, -1}}), std::invalid_argument);            // count
  CHECK_THROWS_AS(build_coarse(g, p, {{+1}, {+1, -1}}), std::invalid_argument);      // length
  CHECK_THROWS_AS(build_coarse(g, p, {{+1, 0}, {+1, -1}}), std::invalid_argument);   // entries
  const CoarseProblem cp = build_coarse(g, p, {{+1, -1}, {+1, -1}});
  CHECK_THROWS_AS(coarse_objective(cp, {+1}), std::invalid_argument);
  CHECK_THROWS_AS(expand(cp, {+1, -1, +1}), std::invalid_argument);
}

TEST_CASE("coarse dump carries the graph, the offset, and the local cuts") {
  const Graph g = ring(4);
  const CoarseProblem cp =
      build_coarse(g, make_partition({0, 0, 1, 1}, 2), {{+1, -1}, {+1, -1}});
  std::ostringstream gtext, mtext;
  dump_coarse(cp, gtext, mtext);
  const Graph back = parse_edge_list(gtext.str());
  CHECK(back.n_nodes() == 2);
  REQUIRE(back.n_edges() == 1);
  CHECK(back.edges()[0].w == -2.0);
  CHECK(mtext.str().find("\"offset\": 3") != std::string::npos);
  CHECK(mtext.str().find("\"local_cuts\": [1, 1]") != std::string::npos);
}
