#pragma once

// Sunlet-graph decompositions.  A sunlet(2k) is a k-cycle with one pendant
// vertex hanging off each cycle vertex.  Builders:
//   - torus_sunlet_pair: two spanning sunlets decomposing C_k x C_k
//   - spanning_sunlets_q4n: 2n spanning sunlets of Q_{4n} via torus copies
//     laid along Hamiltonian cycles of Q_{2n}
//   - sunlet16_q6 / _q7 / _q9 and the sunlet16(n) dispatcher for
//     sunlet(16) pieces, with impossibility certificates where no
//     decomposition exists
//   - sunlet_double / sunlet_triple / sunlet_multiple: from a C_k
//     decomposition of Q_n to sunlet(2k) decompositions of Q_{mn}

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "hdecomp/compose.hpp"
#include "hdecomp/cycles.hpp"
#include "hdecomp/graph.hpp"
#include "hdecomp/orientation.hpp"
#include "hdecomp/piece.hpp"
#include "hdecomp/verify.hpp"

namespace hdecomp {

namespace detail {

// Turns cycle pieces into sunlets: at every host vertex, the incident
// pieces (ordered by smallest canonical edge) are paired with that vertex's
// pendant targets (ordered by flipped hypercube dimension), and each piece
// gets the paired target as the pendant at that vertex.  Requires exactly
// as many targets as incident pieces at every covered vertex.
inline void attach_pendants(std::vector<Piece>& pieces,
                            const std::function<std::vector<Vertex>(Vertex)>& targets_of) {
  struct Slot {
    std::size_t piece;
    std::size_t pos;
  };
  std::unordered_map<Vertex, std::vector<Slot>> incident;
  std::vector<Edge> min_edge(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Piece& p = pieces[i];
    if (!p.pendants.empty()) throw std::logic_error("attach_pendants: piece already has pendants");
    min_edge[i] = piece_min_edge(p);  // cycle edges only, pendants are not placed yet
    p.pendants.assign(p.cycle.size(), 0);
    for (std::size_t pos = 0; pos < p.cycle.size(); ++pos)
      incident[p.cycle[pos]].push_back(Slot{i, pos});
  }
  for (auto& [v, slots] : incident) {
    std::sort(slots.begin(), slots.end(),
              [&](const Slot& x, const Slot& y) { return min_edge[x.piece] < min_edge[y.piece]; });
    std::vector<Vertex> targets = targets_of(v);
    std::sort(targets.begin(), targets.end(),
              [&](Vertex x, Vertex y) { return edge_dimension(v, x) < edge_dimension(v, y); });
    if (targets.size() != slots.size())
      throw std::logic_error("attach_pendants: pendant target count mismatch at vertex " +
                             std::to_string(v));
    for (std::size_t j = 0; j < slots.size(); ++j)
      pieces[slots[j].piece].pendants[slots[j].pos] = targets[j];
  }
}

inline std::vector<Piece> relabel_pieces(const std::vector<Piece>& pieces,
                                         const std::function<Vertex(Vertex)>& f) {
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (const Piece& p : pieces) out.push_back(relabel_piece(p, f));
  return out;
}

// Validates a cycle-decomposition input of an even hypercube and returns
// its dimension.
inline int require_even_hypercube_cycles(const Decomposition& cd, const char* who) {
  if (cd.graph.kind() != GraphDescriptor::Kind::hypercube)
    throw std::invalid_argument(std::string(who) + ": input host must be a hypercube");
  const int n = cd.graph.dim();
  if (n % 2 != 0) throw std::invalid_argument(std::string(who) + ": hypercube dimension must be even");
  if (cd.kind.shape != PieceShape::cycle)
    throw std::invalid_argument(std::string(who) + ": input must be a cycle decomposition");
  if (!verify_decomposition(hypercube(n), cd).valid)
    throw std::invalid_argument(std::string(who) + ": input fails verification");
  return n;
}

}  // namespace detail

// Two spanning sunlet(k^2) pieces decomposing the torus C_k x C_k, vertex
// (row, col) labeled row*k + col.  The first cycle Z_1 places row i on the
// k/2 consecutive columns starting at i*(k/2 - 1) mod k and steps to row
// i+1 at the last of them; Z_2 is Z_1 shifted k/2 columns.  The k^2 edges
// left over form disjoint even cycles alternating between V(Z_1) and
// V(Z_2); 2-coloring each alternately (color A at its smallest canonical
// edge) yields one pendant per cycle vertex for each piece.
inline Decomposition torus_sunlet_pair(int k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("torus_sunlet_pair: k must be even and >= 4");
  const Vertex K = static_cast<Vertex>(k);
  const int half = k / 2;
  const std::size_t vertex_count = static_cast<std::size_t>(k) * static_cast<std::size_t>(k);

  auto build_z = [&](int shift) {
    std::vector<Vertex> walk;
    walk.reserve(vertex_count / 2);
    for (int i = 0; i < k; ++i) {
      const int s = (i * (half - 1) + shift) % k;
      for (int c = 0; c < half; ++c)
        walk.push_back(static_cast<Vertex>(i) * K + static_cast<Vertex>((s + c) % k));
    }
    return walk;
  };
  const std::vector<Vertex> z1 = build_z(0);
  const std::vector<Vertex> z2 = build_z(half);

  const Graph host = cartesian_product(cycle_graph(k), cycle_graph(k));
  std::vector<std::uint8_t> on_cycle(host.edges.size(), 0);
  std::vector<std::uint8_t> in_z1(vertex_count, 0), in_z2(vertex_count, 0);
  auto mark_cycle = [&](const std::vector<Vertex>& z, std::vector<std::uint8_t>& member) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      member[z[i]] = 1;
      const std::size_t e = host.edge_index(make_edge(z[i], z[(i + 1) % z.size()]));
      if (e == Graph::npos || on_cycle[e])
        throw std::logic_error("torus_sunlet_pair: cycle layout broken");
      on_cycle[e] = 1;
    }
  };
  mark_cycle(z1, in_z1);
  mark_cycle(z2, in_z2);
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (in_z1[v] + in_z2[v] != 1) throw std::logic_error("torus_sunlet_pair: cycles do not split V");

  // Leftover edges form a 2-regular graph; walk its cycles and alternate
  // colors starting with A on each cycle's smallest canonical edge.
  detail::TwoRegular leftover;
  leftover.init(vertex_count);
  for (std::size_t e = 0; e < host.edges.size(); ++e)
    if (!on_cycle[e]) leftover.add(host.edges[e].a, host.edges[e].b);

  std::vector<Vertex> pendant_of(vertex_count, 0);
  std::vector<std::uint8_t> visited(vertex_count, 0);
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (visited[v]) continue;
    const std::vector<Vertex> walk = detail::cycle_walk(leftover, v);
    const std::size_t len = walk.size();
    std::size_t min_idx = 0;
    Edge min_e = make_edge(walk[0], walk[1]);
    for (std::size_t i = 0; i < len; ++i) {
      visited[walk[i]] = 1;
      const Edge e = make_edge(walk[i], walk[(i + 1) % len]);
      if (e < min_e) {
        min_e = e;
        min_idx = i;
      }
    }
    for (std::size_t i = 0; i < len; ++i) {
      const Vertex x = walk[i], y = walk[(i + 1) % len];
      const bool color_a = ((i + len - min_idx) % len) % 2 == 0;
      // Color A edges feed piece 1 (pendant at the Z_1 endpoint), color B
      // edges feed piece 2.  Leftover cycles alternate sides, so every
      // vertex receives exactly one pendant this way.
      if (color_a)
        pendant_of[in_z1[x] ? x : y] = in_z1[x] ? y : x;
      else
        pendant_of[in_z2[x] ? x : y] = in_z2[x] ? y : x;
    }
  }

  auto make_sunlet = [&](const std::vector<Vertex>& z) {
    Piece p{z, {}};
    p.pendants.reserve(z.size());
    for (Vertex v : z) p.pendants.push_back(pendant_of[v]);
    canonicalize(p);
    return p;
  };
  return Decomposition{
      GraphDescriptor::product(GraphDescriptor::cycle(k), GraphDescriptor::cycle(k)),
      PieceKind{PieceShape::sunlet, (k * k) / 2},
      {make_sunlet(z1), make_sunlet(z2)}};
}

// Spanning sunlet(16) pair for Q_4 through the Gray-code isomorphism
// Q_4 = C_4 x C_4: torus pair (i, j) -> gray(i)*4 + gray(j).
inline Decomposition sunlet16_q4() {
  static constexpr std::array<Vertex, 4> gray{0, 1, 3, 2};
  const Decomposition torus = torus_sunlet_pair(4);
  Decomposition out{GraphDescriptor::hypercube(4), torus.kind, {}};
  for (const Piece& p : torus.pieces) {
    Piece q = relabel_piece(p, [&](Vertex v) { return gray[v / 4] * 4 + gray[v % 4]; });
    canonicalize(q);
    out.pieces.push_back(std::move(q));
  }
  return out;
}

// 2n spanning sunlets of Q_{4n}: write Q_{4n} = Q_{2n} x Q_{2n}; each
// Hamiltonian cycle H of Q_{2n} spans a torus C_K x C_K (K = 2^{2n}) via
// (r, c) -> H[r]*K + H[c], and the torus pairs over all n cycles cover
// every product edge exactly once.
inline Decomposition spanning_sunlets_q4n(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("spanning_sunlets_q4n: supported range is 1 <= n <= 3");
  const Decomposition ham = hamiltonian_decomposition(2 * n);
  const Vertex K = Vertex{1} << (2 * n);
  const Decomposition torus = torus_sunlet_pair(static_cast<int>(K));
  Decomposition out{GraphDescriptor::hypercube(4 * n), torus.kind, {}};
  out.pieces.reserve(2 * static_cast<std::size_t>(n));
  for (const Piece& h : ham.pieces) {
    const std::vector<Vertex>& H = h.cycle;
    for (const Piece& p : torus.pieces) {
      Piece q = relabel_piece(p, [&](Vertex v) { return H[v / K] * K + H[v % K]; });
      canonicalize(q);
      out.pieces.push_back(std::move(q));
    }
  }
  return out;
}

// 12 sunlet(16) pieces of Q_6 = Q_4 x Q_2.  Around the quotient 4-cycle
// <0,1,3,2>, the copies at labels 0 and 3 carry the spanning Q_4 pair; the
// copies at labels 1 and 2 carry C_8 decompositions whose cycles take
// pendants along the matching edges toward both quotient neighbors.
inline Decomposition sunlet16_q6() {
  const Decomposition q4sun = sunlet16_q4();
  const Decomposition cd = cycle_decomposition_pow2(4, 3);
  Decomposition out{GraphDescriptor::hypercube(6), PieceKind{PieceShape::sunlet, 8}, {}};
  out.pieces.reserve(12);
  for (const Vertex q : {Vertex{0}, Vertex{3}})
    for (const Piece& p : q4sun.pieces)
      out.pieces.push_back(relabel_piece(p, [&](Vertex u) { return u * 4 + q; }));
  for (const Vertex q : {Vertex{1}, Vertex{2}}) {
    std::vector<Piece> copy =
        detail::relabel_pieces(cd.pieces, [&](Vertex u) { return u * 4 + q; });
    detail::attach_pendants(copy, [&](Vertex host_v) {
      return std::vector<Vertex>{host_v ^ 1, host_v ^ 2};  // toward both quotient neighbors
    });
    for (Piece& p : copy) {
      canonicalize(p);
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

// 28 sunlet(16) pieces of Q_7 = Q_4 x Q_3.  The Q_3 quotient carries the
// two-sink orientation: sink copies get the spanning Q_4 pair, every other
// copy a C_8 decomposition with pendants along its two outgoing matchings.
inline Decomposition sunlet16_q7() {
  const Orientation d = two_sink_orientation_q3();
  const Decomposition q4sun = sunlet16_q4();
  const Decomposition cd = cycle_decomposition_pow2(4, 3);
  Decomposition out{GraphDescriptor::hypercube(7), PieceKind{PieceShape::sunlet, 8}, {}};
  out.pieces.reserve(28);
  for (Vertex q = 0; q < 8; ++q) {
    if (d.out_degree(q) == 0) {
      for (const Piece& p : q4sun.pieces)
        out.pieces.push_back(relabel_piece(p, [&](Vertex u) { return u * 8 + q; }));
      continue;
    }
    std::vector<Piece> copy = detail::relabel_pieces(cd.pieces, [&](Vertex u) { return u * 8 + q; });
    detail::attach_pendants(copy, [&](Vertex host_v) {
      std::vector<Vertex> targets;
      for (Vertex w : d.out_neighbors(q)) targets.push_back((host_v & ~Vertex{7}) | w);
      return targets;
    });
    for (Piece& p : copy) {
      canonicalize(p);
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

// 144 sunlet(16) pieces of Q_9 = Q_6 x Q_3.  The Q_3 quotient carries the
// parity orientation: odd copies embed the Q_6 result, even copies get C_8
// decompositions with pendants along their three outgoing matchings.
inline Decomposition sunlet16_q9() {
  const Orientation d = parity_orientation(3);
  const Decomposition q6sun = sunlet16_q6();
  const Decomposition cd = cycle_decomposition_pow2(6, 3);
  Decomposition out{GraphDescriptor::hypercube(9), PieceKind{PieceShape::sunlet, 8}, {}};
  out.pieces.reserve(144);
  for (Vertex q = 0; q < 8; ++q) {
    if (parity(q) == Parity::odd) {
      for (const Piece& p : q6sun.pieces)
        out.pieces.push_back(relabel_piece(p, [&](Vertex u) { return u * 8 + q; }));
      continue;
    }
    std::vector<Piece> copy = detail::relabel_pieces(cd.pieces, [&](Vertex u) { return u * 8 + q; });
    detail::attach_pendants(copy, [&](Vertex host_v) {
      std::vector<Vertex> targets;
      for (Vertex w : d.out_neighbors(q)) targets.push_back((host_v & ~Vertex{7}) | w);
      return targets;
    });
    for (Piece& p : copy) {
      canonicalize(p);
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

// sunlet(16) decomposition of Q_n, or the arithmetic reason none exists.
// n = 4 and n >= 6 construct; n in {1,2,3} fail divisibility and n = 5
// fails the degree-counting bound.
inline std::variant<Decomposition, ImpossibilityCertificate> sunlet16(int n) {
  if (n < 1 || n > 14) throw std::invalid_argument("sunlet16: supported range is 1 <= n <= 14");
  if (auto cert = divisibility_check(n)) return *cert;
  if (auto cert = counting_obstruction(n)) return *cert;
  switch (n) {
    case 4: return sunlet16_q4();
    case 6: return sunlet16_q6();
    case 7: return sunlet16_q7();
    case 8: return compose_product(sunlet16_q4(), sunlet16_q4());
    case 9: return sunlet16_q9();
    default:
      return compose_product(std::get<Decomposition>(sunlet16(n - 4)), sunlet16_q4());
  }
}

// From a C_k decomposition of Q_n (n even) to a sunlet(2k) decomposition
// of Q_{2n}: each of the 2^n copies of Q_n carries the cycle decomposition
// and an Eulerian orientation of the quotient turns, at every vertex, the
// n/2 incident cycles into sunlets along the n/2 outgoing matching edges.
inline Decomposition sunlet_double(const Decomposition& cd) {
  const int n = detail::require_even_hypercube_cycles(cd, "sunlet_double");
  const Vertex V = Vertex{1} << n;
  const std::vector<std::vector<Vertex>> dim_order = dimension_order_adjacency(n);
  const Orientation euler = eulerian_orientation(hypercube(n), &dim_order);
  Decomposition out{GraphDescriptor::hypercube(2 * n), PieceKind{PieceShape::sunlet, cd.kind.cycle_length},
                    {}};
  out.pieces.reserve(static_cast<std::size_t>(V) * cd.pieces.size());
  for (Vertex i = 0; i < V; ++i) {
    std::vector<Piece> copy = detail::relabel_pieces(cd.pieces, [&](Vertex v) { return i * V + v; });
    detail::attach_pendants(copy, [&](Vertex host_v) {
      const Vertex inner = host_v % V;
      std::vector<Vertex> targets;
      for (Vertex j : euler.out_neighbors(i)) targets.push_back(j * V + inner);
      return targets;
    });
    for (Piece& p : copy) {
      canonicalize(p);
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

// From a C_k decomposition of Q_n (n even) to a sunlet(2k) decomposition
// of Q_{3n} = Q_{2n} x Q_n: odd-parity Q_{2n} copies carry sunlet_double,
// even-parity copies carry the composed C_k decomposition of Q_{2n} with
// pendants along all n outgoing matchings (parity orientation).
inline Decomposition sunlet_triple(const Decomposition& cd) {
  const int n = detail::require_even_hypercube_cycles(cd, "sunlet_triple");
  const Vertex V = Vertex{1} << n;
  const Orientation d = parity_orientation(n);
  const Decomposition doubled = sunlet_double(cd);
  const Decomposition cd2 = compose_product(cd, cd);
  Decomposition out{GraphDescriptor::hypercube(3 * n), PieceKind{PieceShape::sunlet, cd.kind.cycle_length},
                    {}};
  for (Vertex w = 0; w < V; ++w) {
    if (parity(w) == Parity::odd) {
      for (const Piece& p : doubled.pieces)
        out.pieces.push_back(relabel_piece(p, [&](Vertex u) { return u * V + w; }));
      continue;
    }
    std::vector<Piece> copy = detail::relabel_pieces(cd2.pieces, [&](Vertex u) { return u * V + w; });
    detail::attach_pendants(copy, [&](Vertex host_v) {
      const Vertex outer = host_v / V;
      std::vector<Vertex> targets;
      for (Vertex w2 : d.out_neighbors(w)) targets.push_back(outer * V + w2);
      return targets;
    });
    for (Piece& p : copy) {
      canonicalize(p);
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

// sunlet(2k) decomposition of Q_{mn} for any m >= 2: factor m = 2a + 3b
// (b = m mod 2), build a doubled and b tripled factors, fold with the
// product composition.
inline Decomposition sunlet_multiple(int m, const Decomposition& cd) {
  if (m < 2) throw std::invalid_argument("sunlet_multiple: m must be at least 2");
  const int n = detail::require_even_hypercube_cycles(cd, "sunlet_multiple");
  if (m * n > 16) throw std::invalid_argument("sunlet_multiple: resource bound m*n <= 16");
  const int b = m % 2;
  const int a = (m - 3 * b) / 2;
  std::optional<Decomposition> doubled, tripled;
  if (a > 0) doubled = sunlet_double(cd);
  if (b > 0) tripled = sunlet_triple(cd);
  std::vector<const Decomposition*> plan;
  for (int i = 0; i < a; ++i) plan.push_back(&*doubled);
  for (int i = 0; i < b; ++i) plan.push_back(&*tripled);
  Decomposition result = *plan.front();
  for (std::size_t i = 1; i < plan.size(); ++i) result = compose_product(result, *plan[i]);
  return result;
}

}  // namespace hdecomp
