#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qaoa2/rng.hpp"

namespace qaoa2 {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;
};

/// Spin assignment over nodes; entries are +1 or -1.
using Assignment = std::vector<int>;

inline Assignment all_plus(std::size_t n) { return Assignment(n, +1); }

/// Weighted undirected simple graph. Each unordered pair appears at most
/// once; no self-loops. Weights may be negative (coarse problems are signed);
/// base instances use nonnegative weights. Zero-weight edges are kept as
/// structural edges.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n_nodes, std::vector<Edge> edges)
      : n_nodes_(n_nodes), edges_(std::move(edges)), adj_(n_nodes) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
      if (e.u >= n_nodes_ || e.v >= n_nodes_)
        throw std::invalid_argument("graph: edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
      if (!std::isfinite(e.w)) throw std::invalid_argument("graph: non-finite edge weight");
      if (!seen.insert(pair_key(e.u, e.v)).second)
        throw std::invalid_argument("graph: duplicate edge");
      adj_[e.u].emplace_back(e.v, e.w);
      adj_[e.v].emplace_back(e.u, e.w);
      total_weight_ += e.w;
    }
  }

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<NodeId, double>>& neighbors(NodeId u) const { return adj_[u]; }
  double total_weight() const { return total_weight_; }

  static std::uint64_t pair_key(NodeId u, NodeId v) {
    const NodeId a = std::min(u, v), b = std::max(u, v);
    return (std::uint64_t(a) << 32) | std::uint64_t(b);
  }

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<NodeId, double>>> adj_;
  double total_weight_ = 0.0;
};

/// Total weight of edges whose endpoints get opposite spins.
inline double cut_value(const Graph& g, const Assignment& a) {
  if (a.size() != g.n_nodes())
    throw std::invalid_argument("cut_value: assignment length does not match node count");
  double cut = 0.0;
  for (const Edge& e : g.edges())
    if (a[e.u] != a[e.v]) cut += e.w;
  return cut;
}

// ---- edge-list interchange format ----------------------------------------
// header "N M", then M lines "u v [w]" with 1-based node ids; '#' lines are
// comments, blank lines ignored, missing weight means 1.

namespace detail {

inline bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error("edge list, line " + std::to_string(lineno) + ": " + msg);
  };

  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::blank_or_comment(line)) continue;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0) fail("expected header 'N M'");
      std::string junk;
      if (ls >> junk) fail("trailing tokens after header");
      continue;
    }
    if ((long long)edges.size() >= m) fail("more edge lines than the header's M");
    long long u = 0, v = 0;
    if (!(ls >> u >> v)) fail("expected 'u v [w]'");
    double w = 1.0;
    if (ls >> w) {
      if (!std::isfinite(w)) fail("non-finite weight");
      std::string junk;
      if (ls >> junk) fail("trailing tokens after weight");
    } else if (!ls.eof()) {
      fail("malformed weight");
    }
    if (u < 1 || u > n || v < 1 || v > n) fail("node id out of range 1..N");
    if (u == v) fail("self-loop");
    const NodeId a = NodeId(u - 1), b = NodeId(v - 1);
    if (!seen.insert(Graph::pair_key(a, b)).second) fail("duplicate edge");
    edges.push_back({a, b, w});
  }
  ++lineno;
  if (n < 0) fail("missing header 'N M'");
  if ((long long)edges.size() != m)
    fail("expected " + std::to_string(m) + " edges, got " + std::to_string(edges.size()));
  return Graph(std::size_t(n), std::move(edges));
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

namespace detail {

inline std::string format_weight(double w) {
  if (w == std::floor(w) && std::abs(w) < 9e15) return std::to_string((long long)w);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", w);
  return buf;
}

}  // namespace detail

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.n_nodes() << ' ' << g.n_edges() << '\n';
  for (const Edge& e : g.edges())
    out << (e.u + 1) << ' ' << (e.v + 1) << ' ' << detail::format_weight(e.w) << '\n';
}

inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(g, out);
  return out.str();
}

// ---- random instances ------------------------------------------------------

enum class GraphKind { regular, erdos_renyi };

namespace detail {

// Configuration-model pairing: shuffle the stub multiset, pair consecutive
// stubs, re-queue collisions, restart from scratch when a round stalls.
inline std::vector<Edge> regular_topology(std::size_t n, std::size_t d, std::mt19937_64& gen) {
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<NodeId> stubs;
    stubs.reserve(n * d);
    for (NodeId u = 0; u < n; ++u)
      for (std::size_t r = 0; r < d; ++r) stubs.push_back(u);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    bool stalled = false;
    while (!stubs.empty() && !stalled) {
      shuffle_vec(stubs, gen);
      std::vector<NodeId> leftover;
      for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        const NodeId u = stubs[k], v = stubs[k + 1];
        if (u == v || !seen.insert(Graph::pair_key(u, v)).second) {
          leftover.push_back(u);
          leftover.push_back(v);
        } else {
          edges.push_back({std::min(u, v), std::max(u, v), 1.0});
        }
      }
      if (leftover.empty()) return edges;
      stalled = leftover.size() == stubs.size();
      stubs = std::move(leftover);
    }
  }
  throw std::runtime_error("regular graph generation did not converge");
}

}  // namespace detail

/// Random d-regular or Erdos-Renyi (edge probability d/(n-1), so d is the
/// expected degree) topology; weighted draws integer weights uniformly from
/// {weight_min..5}, unweighted sets every weight to 1.
inline Graph generate(GraphKind kind, std::size_t n, std::size_t d, bool weighted,
                      std::uint64_t seed, int weight_min = 0) {
  if (n < 1) throw std::invalid_argument("generate: need n >= 1");
  if (d >= n) throw std::invalid_argument("generate: need d < n");
  if (weight_min < 0 || weight_min > 5)
    throw std::invalid_argument("generate: weight_min must be in 0..5");
  auto gen = make_stream(seed, "graph-gen");
  std::vector<Edge> edges;
  if (kind == GraphKind::regular) {
    if ((n * d) % 2 != 0) throw std::invalid_argument("generate: n*d must be even for a regular graph");
    if (d + 1 == n) {
      // complete graph is the unique (n-1)-regular simple graph
      for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    } else if (d > 0) {
      edges = detail::regular_topology(n, d, gen);
    }
  } else {
    const double p = n > 1 ? double(d) / double(n - 1) : 0.0;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (uniform_real(gen, 0.0, 1.0) < p) edges.push_back({u, v, 1.0});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  if (weighted)
    for (Edge& e : edges) e.w = double(weight_min + int(uniform_below(gen, std::uint64_t(6 - weight_min))));
  return Graph(n, std::move(edges));
}

}  // namespace qaoa2
