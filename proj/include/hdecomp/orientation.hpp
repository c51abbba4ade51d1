#pragma once

// Edge orientations of host graphs.
//
//   - eulerian_orientation: orient along an Eulerian circuit, so every
//     vertex ends up with in-degree == out-degree == deg/2
//   - two_sink_orientation_q3: orientation of Q_3 with two non-adjacent
//     sinks of in-degree 3; the other six vertices get out-degree 2
//   - parity_orientation: every edge from its even endpoint to its odd one

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdecomp/graph.hpp"

namespace hdecomp {

// Host graph plus one direction flag per canonical edge
// (forward[i] set means edges[i].a -> edges[i].b).
struct Orientation {
  Graph host;
  std::vector<std::uint8_t> forward;

  static Orientation from_flags(Graph g, std::vector<std::uint8_t> flags) {
    if (flags.size() != g.edges.size())
      throw std::invalid_argument("Orientation: flag count != edge count");
    Orientation o;
    o.host = std::move(g);
    o.forward = std::move(flags);
    o.rebuild();
    return o;
  }

  const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_adj_[v]; }
  std::size_t out_degree(Vertex v) const { return out_adj_[v].size(); }
  std::size_t in_degree(Vertex v) const { return deg_[v] - out_adj_[v].size(); }

  // Head of edge i under this orientation.
  Vertex head(std::size_t i) const { return forward[i] ? host.edges[i].b : host.edges[i].a; }
  Vertex tail(std::size_t i) const { return forward[i] ? host.edges[i].a : host.edges[i].b; }

 private:
  void rebuild() {
    out_adj_.assign(host.vertex_count, {});
    deg_.assign(host.vertex_count, 0);
    for (std::size_t i = 0; i < host.edges.size(); ++i) {
      out_adj_[tail(i)].push_back(head(i));
      ++deg_[host.edges[i].a];
      ++deg_[host.edges[i].b];
    }
    for (auto& row : out_adj_) std::sort(row.begin(), row.end());
  }

  std::vector<std::vector<Vertex>> out_adj_;
  std::vector<std::uint32_t> deg_;
};

// Neighbor lists of Q_n in dimension order (v^1, v^2, v^4, ...), the
// deterministic departure order used by eulerian_orientation on hypercubes.
inline std::vector<std::vector<Vertex>> dimension_order_adjacency(int n) {
  if (n < 1 || n > kMaxHypercubeDim) throw std::invalid_argument("dimension_order_adjacency: bad n");
  std::vector<std::vector<Vertex>> adj(std::size_t{1} << n);
  for (Vertex v = 0; v < adj.size(); ++v) {
    adj[v].reserve(n);
    for (int d = 0; d < n; ++d) adj[v].push_back(v ^ (Vertex{1} << d));
  }
  return adj;
}

// Hierholzer walk from vertex 0, always leaving along the first unused edge
// in `order` (defaults to ascending neighbor labels).  Requires a connected
// graph with all degrees even.
inline Orientation eulerian_orientation(const Graph& g,
                                        const std::vector<std::vector<Vertex>>* order = nullptr) {
  if (g.vertex_count == 0 || g.edges.empty())
    throw std::invalid_argument("eulerian_orientation: empty graph");
  for (std::uint32_t d : g.degrees())
    if (d % 2 != 0) throw std::invalid_argument("eulerian_orientation: odd-degree vertex");

  const std::vector<std::vector<Vertex>> sorted_adj = order == nullptr ? g.adjacency() : std::vector<std::vector<Vertex>>{};
  const std::vector<std::vector<Vertex>>& adj = order == nullptr ? sorted_adj : *order;
  if (adj.size() != g.vertex_count)
    throw std::invalid_argument("eulerian_orientation: adjacency size mismatch");

  std::vector<std::uint8_t> used(g.edges.size(), 0);
  std::vector<std::uint8_t> forward(g.edges.size(), 0);
  // next[v]: first position in adj[v] that may still have an unused edge.
  std::vector<std::size_t> next(g.vertex_count, 0);
  std::size_t remaining = g.edges.size();

  // Hierholzer with an explicit stack; each edge is oriented the way the
  // circuit first traverses it.
  std::vector<Vertex> stack{0};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    bool advanced = false;
    while (next[v] < adj[v].size()) {
      const Vertex w = adj[v][next[v]];
      const Edge e = make_edge(v, w);
      const std::size_t i = g.edge_index(e);
      if (i == Graph::npos) throw std::invalid_argument("eulerian_orientation: adjacency lists a non-edge");
      if (used[i]) {
        ++next[v];
        continue;
      }
      used[i] = 1;
      forward[i] = (v == e.a) ? 1 : 0;
      --remaining;
      stack.push_back(w);
      advanced = true;
      break;
    }
    if (!advanced) stack.pop_back();
  }
  if (remaining != 0)
    throw std::invalid_argument("eulerian_orientation: graph is not connected");
  return Orientation::from_flags(g, std::move(forward));
}

// Lexicographically smallest direction-flag vector (false before true, edge
// order) giving Q_3 sinks at 000 and 111 and out-degree 2 everywhere else.
inline Orientation two_sink_orientation_q3() {
  const Graph g = hypercube(3);
  const std::size_t m = g.edges.size();  // 12
  std::vector<int> out_target(8, 2), in_target(8, 1);
  out_target[0] = 0;
  in_target[0] = 3;
  out_target[7] = 0;
  in_target[7] = 3;

  std::vector<int> out_cnt(8, 0), in_cnt(8, 0), left(8, 0);
  for (const Edge& e : g.edges) {
    ++left[e.a];
    ++left[e.b];
  }
  std::vector<std::uint8_t> flags(m, 0);

  // Depth-first over edges in canonical order, trying tail->a first; the
  // first complete assignment is the lexicographic minimum.
  auto feasible = [&](Vertex v) {
    return out_cnt[v] <= out_target[v] && in_cnt[v] <= in_target[v] &&
           out_cnt[v] + left[v] >= out_target[v] && in_cnt[v] + left[v] >= in_target[v];
  };
  auto solve = [&](auto&& self, std::size_t i) -> bool {
    if (i == m) return true;
    const Edge e = g.edges[i];
    --left[e.a];
    --left[e.b];
    for (int dir = 0; dir < 2; ++dir) {
      const Vertex tail = dir ? e.a : e.b;
      const Vertex head = dir ? e.b : e.a;
      ++out_cnt[tail];
      ++in_cnt[head];
      if (feasible(e.a) && feasible(e.b)) {
        flags[i] = static_cast<std::uint8_t>(dir);
        if (self(self, i + 1)) return true;
      }
      --out_cnt[tail];
      --in_cnt[head];
    }
    ++left[e.a];
    ++left[e.b];
    return false;
  };
  // Try flag 0 (b->a) before flag 1 (a->b) for lexicographic order.
  // `dir` above encodes exactly the canonical flag value.
  if (!solve(solve, 0)) throw std::logic_error("two_sink_orientation_q3: no orientation found");
  return Orientation::from_flags(g, std::move(flags));
}

// Every Q_n edge directed from its even-parity endpoint to its odd one.
inline Orientation parity_orientation(int n) {
  Graph g = hypercube(n);
  std::vector<std::uint8_t> flags(g.edges.size(), 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    flags[i] = parity(g.edges[i].a) == Parity::even ? 1 : 0;
  return Orientation::from_flags(std::move(g), std::move(flags));
}

}  // namespace hdecomp
