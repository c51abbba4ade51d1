#pragma once

// Independent validation of claimed decompositions, impossibility
// arithmetic for sunlet(16) on hypercubes, and a brute-force exact-cover
// oracle for small hosts.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdecomp/graph.hpp"
#include "hdecomp/piece.hpp"

namespace hdecomp {

struct VerificationFailure {
  enum class Kind { missing_edge, duplicated_edge, foreign_edge, bad_piece };
  Kind kind = Kind::bad_piece;
  Edge edge{};                 // set for the edge kinds
  std::size_t piece_index = 0; // set for foreign_edge, duplicated_edge, bad_piece
  std::string detail;
};

inline const char* to_string(VerificationFailure::Kind k) {
  switch (k) {
    case VerificationFailure::Kind::missing_edge: return "missing_edge";
    case VerificationFailure::Kind::duplicated_edge: return "duplicated_edge";
    case VerificationFailure::Kind::foreign_edge: return "foreign_edge";
    case VerificationFailure::Kind::bad_piece: return "bad_piece";
  }
  return "?";
}

struct VerificationReport {
  bool valid = false;
  std::vector<VerificationFailure> failures;
  std::size_t piece_count = 0;
};

// Checks that the piece edge multisets partition E(host) exactly and that
// every piece classifies as d.kind.  All failures are data, never throws.
inline VerificationReport verify_decomposition(const Graph& host, const Decomposition& d) {
  VerificationReport report;
  report.piece_count = d.pieces.size();

  const Classification expected{d.kind.shape == PieceShape::cycle ? Classification::Type::cycle
                                                                  : Classification::Type::sunlet,
                                d.kind.cycle_length};

  struct Owned {
    Edge edge;
    std::size_t piece;
  };
  std::vector<Owned> claimed;
  claimed.reserve(d.pieces.size() * static_cast<std::size_t>(d.kind.edges_per_piece()));

  for (std::size_t i = 0; i < d.pieces.size(); ++i) {
    const Piece& p = d.pieces[i];
    bool labels_ok = true;
    for (Vertex v : p.cycle) labels_ok = labels_ok && v < host.vertex_count;
    for (Vertex v : p.pendants) labels_ok = labels_ok && v < host.vertex_count;
    if (!labels_ok) {
      report.failures.push_back({VerificationFailure::Kind::bad_piece, {}, i, "label out of range"});
      continue;
    }
    const bool shape_ok =
        d.kind.shape == PieceShape::cycle ? p.pendants.empty() : p.pendants.size() == p.cycle.size();
    if (!shape_ok) {
      report.failures.push_back({VerificationFailure::Kind::bad_piece, {}, i, "pendant list shape mismatch"});
      continue;
    }
    bool walk_ok = p.cycle.size() >= 3;
    for (std::size_t j = 0; walk_ok && j < p.cycle.size(); ++j)
      if (p.cycle[j] == p.cycle[(j + 1) % p.cycle.size()]) walk_ok = false;
    for (std::size_t j = 0; walk_ok && j < p.pendants.size(); ++j)
      if (p.pendants[j] == p.cycle[j]) walk_ok = false;
    if (!walk_ok) {
      report.failures.push_back({VerificationFailure::Kind::bad_piece, {}, i, "degenerate walk"});
      continue;
    }
    if (classify_piece(p) != expected) {
      report.failures.push_back(
          {VerificationFailure::Kind::bad_piece, {}, i, "does not classify as " + to_string(d.kind)});
      // keep its edges: coverage failures are still informative
    }
    for (const Edge& e : piece_edges(p)) claimed.push_back({e, i});
  }

  std::sort(claimed.begin(), claimed.end(),
            [](const Owned& x, const Owned& y) { return x.edge < y.edge || (x.edge == y.edge && x.piece < y.piece); });

  // Merge against the sorted host edge list.
  std::size_t ci = 0;
  for (const Edge& he : host.edges) {
    while (ci < claimed.size() && claimed[ci].edge < he) {
      report.failures.push_back(
          {VerificationFailure::Kind::foreign_edge, claimed[ci].edge, claimed[ci].piece, "not a host edge"});
      ++ci;
    }
    std::size_t count = 0;
    while (ci < claimed.size() && claimed[ci].edge == he) {
      if (count >= 1)
        report.failures.push_back(
            {VerificationFailure::Kind::duplicated_edge, he, claimed[ci].piece, "covered more than once"});
      ++count;
      ++ci;
    }
    if (count == 0)
      report.failures.push_back({VerificationFailure::Kind::missing_edge, he, 0, "not covered by any piece"});
  }
  while (ci < claimed.size()) {
    report.failures.push_back(
        {VerificationFailure::Kind::foreign_edge, claimed[ci].edge, claimed[ci].piece, "not a host edge"});
    ++ci;
  }

  report.valid = report.failures.empty();
  return report;
}

// Why sunlet(16) cannot decompose Q_n for a given n.
struct ImpossibilityCertificate {
  int dimension = 0;
  enum class Reason { divisibility, degree_counting } reason = Reason::divisibility;
  // divisibility: divisor must divide edge_count but does not
  std::uint64_t divisor = 0;
  std::uint64_t edge_count = 0;
  // degree_counting: each of `pieces` copies needs 8 private degree-3
  // vertices, forcing `forced` > `available` vertices
  std::uint64_t pieces = 0;
  std::uint64_t forced = 0;
  std::uint64_t available = 0;

  friend bool operator==(const ImpossibilityCertificate&, const ImpossibilityCertificate&) = default;
};

inline std::uint64_t hypercube_edge_count(int n) {
  if (n < 1 || n > kMaxHypercubeDim) throw std::invalid_argument("hypercube_edge_count: bad n");
  return static_cast<std::uint64_t>(n) << (n - 1);
}

// pass (= nullopt) unless 16 does not divide |E(Q_n)|.
inline std::optional<ImpossibilityCertificate> divisibility_check(int n) {
  const std::uint64_t edges = hypercube_edge_count(n);
  if (edges % 16 == 0) return std::nullopt;
  ImpossibilityCertificate cert;
  cert.dimension = n;
  cert.reason = ImpossibilityCertificate::Reason::divisibility;
  cert.divisor = 16;
  cert.edge_count = edges;
  return cert;
}

// Degree-counting obstruction: every sunlet(16) copy has 8 degree-3
// vertices, and while vertex degrees stay below 6 no vertex can serve two
// copies.  With p = |E|/16 copies that forces 8p distinct vertices, which
// exceeds 2^n exactly when n = 5.  Requires divisibility_check(n) to pass.
inline std::optional<ImpossibilityCertificate> counting_obstruction(int n) {
  if (divisibility_check(n).has_value())
    throw std::invalid_argument("counting_obstruction: divisibility_check must pass first");
  if (n >= 6) return std::nullopt;  // degree >= 6 allows degree-3 sharing
  const std::uint64_t pieces = hypercube_edge_count(n) / 16;
  const std::uint64_t forced = 8 * pieces;
  const std::uint64_t available = std::uint64_t{1} << n;
  if (forced <= available) return std::nullopt;
  ImpossibilityCertificate cert;
  cert.dimension = n;
  cert.reason = ImpossibilityCertificate::Reason::degree_counting;
  cert.pieces = pieces;
  cert.forced = forced;
  cert.available = available;
  return cert;
}

// Recomputes a certificate's arithmetic from its dimension.
inline bool certificate_consistent(const ImpossibilityCertificate& cert) {
  if (cert.reason == ImpossibilityCertificate::Reason::divisibility) {
    auto fresh = divisibility_check(cert.dimension);
    return fresh.has_value() && *fresh == cert;
  }
  auto fresh = counting_obstruction(cert.dimension);
  return fresh.has_value() && *fresh == cert;
}

struct OracleResult {
  enum class Status { found, exhausted, timed_out };
  Status status = Status::exhausted;
  std::optional<Decomposition> decomposition;
};

namespace detail {

// State for the exact-cover search over piece embeddings.
struct OracleState {
  OracleState(const Graph& h, PieceKind k) : host(h), kind(k) {}

  const Graph& host;
  PieceKind kind;
  std::vector<std::vector<Vertex>> adj;
  std::vector<std::uint32_t> dist_scratch;
  std::vector<std::uint8_t> covered;  // per canonical edge index
  std::size_t uncovered = 0;
  std::vector<Piece> chosen;
  std::mt19937_64 rng;
  bool shuffle = false;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t ticks = 0;
  bool timed_out = false;

  bool edge_free(Vertex u, Vertex v) const {
    const std::size_t i = host.edge_index(make_edge(u, v));
    return i != Graph::npos && !covered[i];
  }
  void mark(const std::vector<Edge>& es, std::uint8_t value) {
    for (const Edge& e : es) {
      const std::size_t i = host.edge_index(e);
      covered[i] = value;
    }
    if (value)
      uncovered -= es.size();
    else
      uncovered += es.size();
  }
  bool check_time() {
    if ((++ticks & 1023) == 0 && std::chrono::steady_clock::now() >= deadline) timed_out = true;
    return timed_out;
  }
};

// BFS distances to `target` over the full host (a lower bound for any
// uncovered-edge subgraph), used to prune the cycle path enumeration.
inline void oracle_bfs(OracleState& s, Vertex target) {
  s.dist_scratch.assign(s.host.vertex_count, UINT32_MAX);
  s.dist_scratch[target] = 0;
  std::vector<Vertex> queue{target};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex v = queue[qi];
    for (Vertex w : s.adj[v])
      if (s.dist_scratch[w] == UINT32_MAX) {
        s.dist_scratch[w] = s.dist_scratch[v] + 1;
        queue.push_back(w);
      }
  }
}

// All k-cycles formed from uncovered edges that pass through `through`,
// starting the walk at `from` and optionally banning one vertex.  `extra`
// is an uncovered edge being reserved as a pendant, never reused.
inline void enumerate_cycles(OracleState& s, Vertex from, Vertex through, int k,
                             std::optional<Edge> reserved, std::optional<Vertex> banned,
                             std::vector<std::vector<Vertex>>& out) {
  oracle_bfs(s, through);
  std::vector<Vertex> path{through, from};
  std::vector<std::uint8_t> on_path(s.host.vertex_count, 0);
  on_path[through] = 1;
  on_path[from] = 1;
  auto usable = [&](Vertex u, Vertex v) {
    if (!s.edge_free(u, v)) return false;
    return !(reserved && *reserved == make_edge(u, v));
  };
  if (!usable(through, from)) return;
  auto dfs = [&](auto&& self, Vertex cur, int steps_left) -> void {
    if (s.check_time()) return;
    if (steps_left == 1) {
      if (usable(cur, through)) out.push_back(path);
      return;
    }
    for (Vertex w : s.adj[cur]) {
      if (on_path[w] || (banned && *banned == w)) continue;
      if (!usable(cur, w)) continue;
      if (s.dist_scratch[w] > static_cast<std::uint32_t>(steps_left - 1)) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, w, steps_left - 1);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  dfs(dfs, from, k - 1);
}

// Enumerates pendant assignments for a fixed cycle: pendants[i] adjacent to
// cycle[i] through a free edge, all pendant edges distinct, pendant vertices
// off the cycle.  `forced` pins one position.
inline void enumerate_pendant_sets(OracleState& s, const std::vector<Vertex>& cycle,
                                   const std::vector<std::optional<Vertex>>& forced,
                                   std::vector<std::vector<Vertex>>& out) {
  const std::size_t k = cycle.size();
  std::vector<std::uint8_t> on_cycle(s.host.vertex_count, 0);
  for (Vertex v : cycle) on_cycle[v] = 1;
  std::vector<Vertex> pick(k, 0);
  std::vector<Edge> used;
  auto dfs = [&](auto&& self, std::size_t i) -> void {
    if (s.check_time()) return;
    if (i == k) {
      out.push_back(pick);
      return;
    }
    auto try_vertex = [&](Vertex w) {
      if (on_cycle[w]) return;
      if (std::find(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(i), w) !=
          pick.begin() + static_cast<std::ptrdiff_t>(i))
        return;  // pendant vertices must be pairwise distinct
      const Edge e = make_edge(cycle[i], w);
      if (!s.edge_free(e.a, e.b)) return;
      if (std::find(used.begin(), used.end(), e) != used.end()) return;
      used.push_back(e);
      pick[i] = w;
      self(self, i + 1);
      used.pop_back();
    };
    if (forced[i]) {
      try_vertex(*forced[i]);
    } else {
      for (Vertex w : s.adj[cycle[i]]) try_vertex(w);
    }
  };
  dfs(dfs, 0);
}

// All embeddings of s.kind whose edge set is free and contains the target
// edge.  Distinct construction modes cannot produce the same piece twice:
// the target edge is either a cycle edge or a pendant edge of the result.
inline std::vector<Piece> enumerate_pieces_through(OracleState& s, const Edge& target) {
  const int k = s.kind.cycle_length;
  std::vector<Piece> result;
  std::vector<std::vector<Vertex>> cycles;

  // Mode 1: target lies on the piece cycle.
  enumerate_cycles(s, target.b, target.a, k, std::nullopt, std::nullopt, cycles);
  for (const auto& cyc : cycles) {
    if (s.kind.shape == PieceShape::cycle) {
      Piece p{cyc, {}};
      canonicalize(p);
      result.push_back(std::move(p));
    } else {
      std::vector<std::vector<Vertex>> pendant_sets;
      enumerate_pendant_sets(s, cyc, std::vector<std::optional<Vertex>>(cyc.size()), pendant_sets);
      for (auto& ps : pendant_sets) {
        Piece p{cyc, ps};
        canonicalize(p);
        result.push_back(std::move(p));
      }
    }
  }

  // Mode 2 (sunlets only): target is the pendant edge of one cycle vertex.
  if (s.kind.shape == PieceShape::sunlet) {
    for (const auto& [attach, leaf] : {std::pair{target.a, target.b}, std::pair{target.b, target.a}}) {
      // Cycle passes through `attach`, avoids the leaf entirely, and must
      // not consume the reserved pendant edge.
      for (Vertex second : s.adj[attach]) {
        if (second == leaf) continue;
        if (!s.edge_free(attach, second)) continue;
        if (make_edge(attach, second) == target) continue;
        cycles.clear();
        enumerate_cycles(s, second, attach, k, target, leaf, cycles);
        for (const auto& cyc : cycles) {
          // Each undirected cycle is found twice (once per departure edge);
          // keep the orientation where the second vertex is the smaller
          // neighbor of `attach` on the cycle.
          if (cyc[1] > cyc[k - 1]) continue;
          std::vector<std::optional<Vertex>> forced(cyc.size());
          forced[0] = leaf;  // cyc[0] == attach
          std::vector<std::vector<Vertex>> pendant_sets;
          enumerate_pendant_sets(s, cyc, forced, pendant_sets);
          for (auto& ps : pendant_sets) {
            Piece p{cyc, ps};
            canonicalize(p);
            result.push_back(std::move(p));
          }
        }
      }
    }
  }
  return result;
}

inline bool oracle_dfs(OracleState& s) {
  if (s.timed_out) return false;
  if (s.uncovered == 0) return true;
  // Lowest uncovered canonical edge (exact-cover column heuristic).
  std::size_t idx = 0;
  while (idx < s.covered.size() && s.covered[idx]) ++idx;
  const Edge target = s.host.edges[idx];

  std::vector<Piece> candidates = enumerate_pieces_through(s, target);
  if (s.timed_out) return false;
  if (s.shuffle) std::shuffle(candidates.begin(), candidates.end(), s.rng);

  for (Piece& p : candidates) {
    const std::vector<Edge> es = piece_edges(p);
    s.mark(es, 1);
    s.chosen.push_back(p);
    if (oracle_dfs(s)) return true;
    s.chosen.pop_back();
    s.mark(es, 0);
    if (s.timed_out) return false;
  }
  return false;
}

}  // namespace detail

// Exhaustive exact-cover search for a (host, kind)-decomposition.
// `exhausted` is a proof of nonexistence; `timed_out` only means the search
// ran out of time.  The seed shuffles candidate order (0 = canonical order)
// without affecting completeness.
inline OracleResult brute_force_decompose(const GraphDescriptor& host_desc, PieceKind kind,
                                          std::uint64_t seed = 0,
                                          std::chrono::milliseconds timeout = std::chrono::milliseconds(60000)) {
  const Graph host = host_desc.build();
  if (host.edges.size() > 256) throw std::invalid_argument("brute_force_decompose: host exceeds 256 edges");
  if (kind.cycle_length < 3) throw std::invalid_argument("brute_force_decompose: bad piece kind");

  OracleResult result;
  if (host.edges.size() % static_cast<std::size_t>(kind.edges_per_piece()) != 0) {
    result.status = OracleResult::Status::exhausted;  // rejected before search
    return result;
  }

  detail::OracleState s(host, kind);
  s.adj = host.adjacency();
  s.covered.assign(host.edges.size(), 0);
  s.uncovered = host.edges.size();
  s.rng.seed(seed);
  s.shuffle = seed != 0;
  s.deadline = std::chrono::steady_clock::now() + timeout;
  const bool found = detail::oracle_dfs(s);
  if (s.timed_out && !found) {
    result.status = OracleResult::Status::timed_out;
    return result;
  }
  if (!found) {
    result.status = OracleResult::Status::exhausted;
    return result;
  }
  result.status = OracleResult::Status::found;
  result.decomposition = Decomposition{host_desc, kind, std::move(s.chosen)};
  return result;
}

}  // namespace hdecomp
