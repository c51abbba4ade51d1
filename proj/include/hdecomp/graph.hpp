#pragma once

// Core host-graph types: hypercubes, cycles and their Cartesian products.
//
// Label conventions (every module relies on these):
//   - vertices are integers 0..|V|-1
//   - hypercube Q_n: coordinate i is bit i (LSB is coordinate 0); XOR by
//     (1u << d) moves along dimension d
//   - product G1 x G2: the pair (u, v) gets label u * |V(G2)| + v, left
//     factor in the high positions.  Hypercube(a) x Hypercube(b) therefore
//     carries exactly the labels of Hypercube(a+b), u in the high a bits.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdecomp {

using Vertex = std::uint32_t;

// Resource bound: |V| <= 2^24 keeps every host comfortably in memory.
constexpr int kMaxHypercubeDim = 24;
constexpr std::uint64_t kMaxVertices = std::uint64_t{1} << kMaxHypercubeDim;

struct Edge {
  Vertex a = 0;  // canonical: a < b
  Vertex b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("make_edge: loop at vertex " + std::to_string(u));
  return u < v ? Edge{u, v} : Edge{v, u};
}

enum class Parity { even, odd };

inline Parity parity(Vertex v) {
  return (std::popcount(v) & 1) ? Parity::odd : Parity::even;
}

// Dimension flipped along a hypercube edge.
inline int edge_dimension(Vertex u, Vertex v) {
  Vertex x = u ^ v;
  if (std::popcount(x) != 1) throw std::invalid_argument("edge_dimension: not a hypercube edge");
  return std::countr_zero(x);
}

// Undirected simple graph; edges kept canonical (a < b) and sorted.
struct Graph {
  std::uint64_t vertex_count = 0;
  std::vector<Edge> edges;

  bool has_edge(Vertex u, Vertex v) const {
    const Edge e = make_edge(u, v);
    return std::binary_search(edges.begin(), edges.end(), e);
  }

  // Index of a canonical edge in `edges`, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t edge_index(const Edge& e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || !(*it == e)) return npos;
    return static_cast<std::size_t>(it - edges.begin());
  }

  std::vector<std::uint32_t> degrees() const {
    std::vector<std::uint32_t> deg(vertex_count, 0);
    for (const Edge& e : edges) {
      ++deg[e.a];
      ++deg[e.b];
    }
    return deg;
  }

  // Neighbor lists, each sorted ascending.
  std::vector<std::vector<Vertex>> adjacency() const {
    std::vector<std::vector<Vertex>> adj(vertex_count);
    for (const Edge& e : edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    return adj;
  }

  friend bool operator==(const Graph&, const Graph&) = default;
};

inline Graph hypercube(int n) {
  if (n < 1 || n > kMaxHypercubeDim)
    throw std::invalid_argument("hypercube: dimension " + std::to_string(n) +
                                " out of bounds [1, " + std::to_string(kMaxHypercubeDim) + "]");
  Graph g;
  g.vertex_count = std::uint64_t{1} << n;
  g.edges.reserve(static_cast<std::size_t>(n) << (n - 1));
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    for (int d = 0; d < n; ++d) {
      const Vertex u = v ^ (Vertex{1} << d);
      if (u > v) g.edges.push_back(Edge{v, u});  // emitted in sorted order
    }
  }
  return g;
}

inline Graph cycle_graph(int k) {
  if (k < 3) throw std::invalid_argument("cycle_graph: need k >= 3, got " + std::to_string(k));
  Graph g;
  g.vertex_count = static_cast<std::uint64_t>(k);
  g.edges.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i + 1 < k; ++i) g.edges.push_back(Edge{static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  g.edges.push_back(Edge{0, static_cast<Vertex>(k - 1)});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Cartesian product with the (u, v) -> u * |V(G2)| + v labeling.
inline Graph cartesian_product(const Graph& g1, const Graph& g2) {
  const std::uint64_t n1 = g1.vertex_count, n2 = g2.vertex_count;
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("cartesian_product: empty factor");
  if (n1 > kMaxVertices / n2)
    throw std::invalid_argument("cartesian_product: product exceeds vertex cap");
  Graph g;
  g.vertex_count = n1 * n2;
  g.edges.reserve(g1.edges.size() * n2 + g2.edges.size() * n1);
  for (const Edge& e : g1.edges)
    for (Vertex w = 0; w < n2; ++w)
      g.edges.push_back(make_edge(static_cast<Vertex>(e.a * n2 + w), static_cast<Vertex>(e.b * n2 + w)));
  for (Vertex u = 0; u < n1; ++u)
    for (const Edge& e : g2.edges)
      g.edges.push_back(make_edge(static_cast<Vertex>(u * n2 + e.a), static_cast<Vertex>(u * n2 + e.b)));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Symbolic description of a host graph; value type, cheap to copy.
class GraphDescriptor {
 public:
  enum class Kind { hypercube, cycle, product };

  static GraphDescriptor hypercube(int n) {
    if (n < 1 || n > kMaxHypercubeDim) throw std::invalid_argument("GraphDescriptor: bad hypercube dimension");
    return GraphDescriptor(std::make_shared<const Node>(Node{Kind::hypercube, n, nullptr, nullptr}));
  }
  static GraphDescriptor cycle(int k) {
    if (k < 3) throw std::invalid_argument("GraphDescriptor: bad cycle length");
    return GraphDescriptor(std::make_shared<const Node>(Node{Kind::cycle, k, nullptr, nullptr}));
  }
  static GraphDescriptor product(GraphDescriptor left, GraphDescriptor right) {
    auto node = std::make_shared<const Node>(Node{Kind::product, 0, left.node_, right.node_});
    return GraphDescriptor(std::move(node));
  }

  Kind kind() const { return node_->kind; }

  int dim() const {
    if (kind() != Kind::hypercube) throw std::logic_error("GraphDescriptor::dim on non-hypercube");
    return node_->param;
  }
  int cycle_length() const {
    if (kind() != Kind::cycle) throw std::logic_error("GraphDescriptor::cycle_length on non-cycle");
    return node_->param;
  }
  GraphDescriptor left() const {
    if (kind() != Kind::product) throw std::logic_error("GraphDescriptor::left on non-product");
    return GraphDescriptor(node_->left);
  }
  GraphDescriptor right() const {
    if (kind() != Kind::product) throw std::logic_error("GraphDescriptor::right on non-product");
    return GraphDescriptor(node_->right);
  }

  std::uint64_t vertex_count() const { return count(node_.get()); }

  Graph build() const {
    switch (kind()) {
      case Kind::hypercube:
        return hdecomp::hypercube(node_->param);
      case Kind::cycle:
        return cycle_graph(node_->param);
      case Kind::product:
        return cartesian_product(left().build(), right().build());
    }
    throw std::logic_error("GraphDescriptor::build: bad kind");
  }

  std::string to_string() const {
    switch (kind()) {
      case Kind::hypercube:
        return "hypercube(" + std::to_string(node_->param) + ")";
      case Kind::cycle:
        return "cycle(" + std::to_string(node_->param) + ")";
      case Kind::product:
        return "product(" + left().to_string() + "," + right().to_string() + ")";
    }
    throw std::logic_error("GraphDescriptor::to_string: bad kind");
  }

  // Inverse of to_string.  Accepts e.g. "product(hypercube(4),cycle(8))".
  static GraphDescriptor parse(const std::string& text) {
    std::size_t pos = 0;
    GraphDescriptor d = parse_at(text, pos);
    if (pos != text.size()) throw std::invalid_argument("GraphDescriptor::parse: trailing input");
    return d;
  }

  friend bool operator==(const GraphDescriptor& x, const GraphDescriptor& y) {
    return equal(x.node_.get(), y.node_.get());
  }

 private:
  struct Node {
    Kind kind;
    int param;  // dimension or cycle length
    std::shared_ptr<const Node> left, right;
  };

  explicit GraphDescriptor(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::uint64_t count(const Node* n) {
    switch (n->kind) {
      case Kind::hypercube:
        return std::uint64_t{1} << n->param;
      case Kind::cycle:
        return static_cast<std::uint64_t>(n->param);
      case Kind::product: {
        const std::uint64_t l = count(n->left.get()), r = count(n->right.get());
        if (l > kMaxVertices / r) throw std::invalid_argument("GraphDescriptor: product exceeds vertex cap");
        return l * r;
      }
    }
    throw std::logic_error("GraphDescriptor: bad kind");
  }

  static bool equal(const Node* x, const Node* y) {
    if (x->kind != y->kind || x->param != y->param) return false;
    if (x->kind != Kind::product) return true;
    return equal(x->left.get(), y->left.get()) && equal(x->right.get(), y->right.get());
  }

  static GraphDescriptor parse_at(const std::string& s, std::size_t& pos) {
    auto expect = [&](char c) {
      if (pos >= s.size() || s[pos] != c)
        throw std::invalid_argument("GraphDescriptor::parse: expected '" + std::string(1, c) + "'");
      ++pos;
    };
    auto read_name = [&]() {
      std::size_t start = pos;
      while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
      return s.substr(start, pos - start);
    };
    auto read_int = [&]() {
      std::size_t start = pos;
      while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
      if (start == pos) throw std::invalid_argument("GraphDescriptor::parse: expected integer");
      return std::stoi(s.substr(start, pos - start));
    };
    const std::string name = read_name();
    expect('(');
    if (name == "hypercube") {
      int n = read_int();
      expect(')');
      return hypercube(n);
    }
    if (name == "cycle") {
      int k = read_int();
      expect(')');
      return cycle(k);
    }
    if (name == "product") {
      GraphDescriptor l = parse_at(s, pos);
      expect(',');
      GraphDescriptor r = parse_at(s, pos);
      expect(')');
      return product(std::move(l), std::move(r));
    }
    throw std::invalid_argument("GraphDescriptor::parse: unknown graph '" + name + "'");
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace hdecomp
