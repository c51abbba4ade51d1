#pragma once

// Decomposition pieces.  Two shapes are supported:
//   - cycle(k): a k-cycle, stored as its vertex walk
//   - sunlet(2k): a k-cycle plus one pendant vertex per cycle vertex;
//     pendants[i] is the pendant attached to cycle[i], so the piece has
//     2k vertices and 2k edges

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdecomp/graph.hpp"

namespace hdecomp {

enum class PieceShape { cycle, sunlet };

struct PieceKind {
  PieceShape shape = PieceShape::cycle;
  int cycle_length = 0;  // k; a sunlet piece has 2k vertices

  int edges_per_piece() const {
    return shape == PieceShape::cycle ? cycle_length : 2 * cycle_length;
  }
  int vertices_per_piece() const { return edges_per_piece(); }

  friend bool operator==(const PieceKind&, const PieceKind&) = default;
};

inline PieceKind cycle_kind(int k) {
  if (k < 3) throw std::invalid_argument("cycle_kind: need k >= 3");
  return PieceKind{PieceShape::cycle, k};
}

// order = 2k = number of vertices of the sunlet.
inline PieceKind sunlet_kind(int order) {
  if (order < 6 || order % 2 != 0) throw std::invalid_argument("sunlet_kind: order must be even, >= 6");
  return PieceKind{PieceShape::sunlet, order / 2};
}

struct Piece {
  std::vector<Vertex> cycle;     // walk; consecutive entries and (last, first) are edges
  std::vector<Vertex> pendants;  // parallel to cycle for sunlets, empty for plain cycles

  friend bool operator==(const Piece&, const Piece&) = default;
};

inline void append_piece_edges(const Piece& p, std::vector<Edge>& out) {
  const std::size_t k = p.cycle.size();
  for (std::size_t i = 0; i < k; ++i) out.push_back(make_edge(p.cycle[i], p.cycle[(i + 1) % k]));
  for (std::size_t i = 0; i < p.pendants.size(); ++i) out.push_back(make_edge(p.cycle[i], p.pendants[i]));
}

inline std::vector<Edge> piece_edges(const Piece& p) {
  std::vector<Edge> out;
  out.reserve(p.cycle.size() + p.pendants.size());
  append_piece_edges(p, out);
  return out;
}

inline Edge piece_min_edge(const Piece& p) {
  std::vector<Edge> es = piece_edges(p);
  return *std::min_element(es.begin(), es.end());
}

// Rotates/reflects the cycle walk so cycle[0] is the smallest vertex and
// cycle[1] < cycle.back(); pendants follow their cycle vertices.
inline void canonicalize(Piece& p) {
  const std::size_t k = p.cycle.size();
  if (k == 0) return;
  const bool has_pendants = !p.pendants.empty();
  const std::size_t start =
      static_cast<std::size_t>(std::min_element(p.cycle.begin(), p.cycle.end()) - p.cycle.begin());
  const bool reverse = p.cycle[(start + k - 1) % k] < p.cycle[(start + 1) % k];
  Piece out;
  out.cycle.reserve(k);
  if (has_pendants) out.pendants.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = reverse ? (start + k - i) % k : (start + i) % k;
    out.cycle.push_back(p.cycle[j]);
    if (has_pendants) out.pendants.push_back(p.pendants[j]);
  }
  p = std::move(out);
}

inline Piece relabel_piece(const Piece& p, const std::function<Vertex(Vertex)>& f) {
  Piece out;
  out.cycle.reserve(p.cycle.size());
  out.pendants.reserve(p.pendants.size());
  for (Vertex v : p.cycle) out.cycle.push_back(f(v));
  for (Vertex v : p.pendants) out.pendants.push_back(f(v));
  return out;
}

struct Decomposition {
  GraphDescriptor graph;
  PieceKind kind;
  std::vector<Piece> pieces;
};

// Shape recognition for an arbitrary edge set.
struct Classification {
  enum class Type { cycle, sunlet, other };
  Type type = Type::other;
  int cycle_length = 0;  // k when type != other

  friend bool operator==(const Classification&, const Classification&) = default;
};

// Decides whether `edges` forms exactly one k-cycle or one sunlet on 2k
// vertices.  Tolerates duplicate edges (they disqualify both shapes).
inline Classification classify_piece(const std::vector<Edge>& edges) {
  const Classification other{};
  if (edges.size() < 3) return other;
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return other;

  std::unordered_map<Vertex, std::vector<Vertex>> adj;
  adj.reserve(edges.size() * 2);
  for (const Edge& e : sorted) {
    if (e.a == e.b) return other;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }

  std::size_t deg1 = 0, deg2 = 0, deg3 = 0;
  for (const auto& [v, nb] : adj) {
    switch (nb.size()) {
      case 1: ++deg1; break;
      case 2: ++deg2; break;
      case 3: ++deg3; break;
      default: return other;
    }
  }

  // Walks the cycle induced by vertices of degree `core_deg` (2 for a plain
  // cycle, 3 for a sunlet core).  Callers guarantee every core vertex has
  // exactly two core neighbors; the walk then visits one component, and the
  // step count equals the core size iff the core is a single cycle.
  auto core_cycle_size = [&](std::size_t core_deg) -> std::size_t {
    Vertex start = 0;
    bool found = false;
    for (const auto& [v, nb] : adj)
      if (nb.size() == core_deg && (!found || v < start)) {
        start = v;
        found = true;
      }
    if (!found) return 0;
    Vertex prev = start, cur = start;
    for (Vertex w : adj[start])
      if (adj[w].size() == core_deg) {
        cur = w;
        break;
      }
    if (cur == start) return 0;
    std::size_t steps = 1;
    while (cur != start) {
      Vertex next = 0;
      bool ok = false;
      for (Vertex w : adj[cur]) {
        if (w == prev || adj[w].size() != core_deg) continue;
        next = w;
        ok = true;
        break;
      }
      if (!ok || ++steps > edges.size()) return 0;
      prev = cur;
      cur = next;
    }
    return steps;
  };

  if (deg1 == 0 && deg3 == 0) {
    // Candidate plain cycle: every vertex degree 2, one component.
    if (deg2 != edges.size() || deg2 < 3) return other;
    if (core_cycle_size(2) != deg2) return other;
    return Classification{Classification::Type::cycle, static_cast<int>(deg2)};
  }

  // Candidate sunlet: k vertices of degree 3, k of degree 1, no degree 2.
  if (deg2 != 0 || deg1 != deg3 || deg3 < 3) return other;
  if (edges.size() != 2 * deg3) return other;
  // Each degree-1 vertex must hang off a degree-3 vertex, one per core vertex.
  std::size_t pendant_hosts = 0;
  for (const auto& [v, nb] : adj) {
    if (nb.size() != 3) continue;
    std::size_t leaves = 0;
    for (Vertex w : nb)
      if (adj[w].size() == 1) ++leaves;
    if (leaves != 1) return other;
    ++pendant_hosts;
  }
  if (pendant_hosts != deg3) return other;
  if (core_cycle_size(3) != deg3) return other;
  return Classification{Classification::Type::sunlet, static_cast<int>(deg3)};
}

inline Classification classify_piece(const Piece& p) { return classify_piece(piece_edges(p)); }

inline std::string to_string(const PieceKind& k) {
  return k.shape == PieceShape::cycle ? "cycle(" + std::to_string(k.cycle_length) + ")"
                                      : "sunlet(" + std::to_string(2 * k.cycle_length) + ")";
}

}  // namespace hdecomp
