#pragma once

// Product composition of decompositions: given edge decompositions of G1
// and G2 into the same piece kind, every G1-piece copied into each layer
// plus every G2-piece copied into each fiber decomposes G1 x G2.

#include <stdexcept>
#include <vector>

#include "hdecomp/graph.hpp"
#include "hdecomp/piece.hpp"
#include "hdecomp/verify.hpp"

namespace hdecomp {

// Hypercube(a) x Hypercube(b) carries exactly Hypercube(a+b)'s labels, so
// the descriptor collapses; other combinations stay symbolic products.
inline GraphDescriptor product_descriptor(const GraphDescriptor& a, const GraphDescriptor& b) {
  if (a.kind() == GraphDescriptor::Kind::hypercube && b.kind() == GraphDescriptor::Kind::hypercube &&
      a.dim() + b.dim() <= kMaxHypercubeDim)
    return GraphDescriptor::hypercube(a.dim() + b.dim());
  return GraphDescriptor::product(a, b);
}

inline Decomposition compose_product(const Decomposition& d1, const Decomposition& d2) {
  if (d1.kind != d2.kind) throw std::invalid_argument("compose_product: piece kind mismatch");
  const Graph g1 = d1.graph.build();
  const Graph g2 = d2.graph.build();
  if (!verify_decomposition(g1, d1).valid)
    throw std::invalid_argument("compose_product: first input fails verification");
  if (!verify_decomposition(g2, d2).valid)
    throw std::invalid_argument("compose_product: second input fails verification");

  const Vertex n1 = static_cast<Vertex>(g1.vertex_count);
  const Vertex n2 = static_cast<Vertex>(g2.vertex_count);
  Decomposition out{product_descriptor(d1.graph, d2.graph), d1.kind, {}};
  out.pieces.reserve(d1.pieces.size() * n2 + d2.pieces.size() * n1);
  for (Vertex w = 0; w < n2; ++w)
    for (const Piece& p : d1.pieces)
      out.pieces.push_back(relabel_piece(p, [&](Vertex u) { return u * n2 + w; }));
  for (Vertex u = 0; u < n1; ++u)
    for (const Piece& p : d2.pieces)
      out.pieces.push_back(relabel_piece(p, [&](Vertex v) { return u * n2 + v; }));
  return out;
}

}  // namespace hdecomp
