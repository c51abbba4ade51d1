// Cycle decompositions of hypercubes: Hamiltonian splits, power-of-two
// cycle lengths, and the fixture cache for searched instances.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include "hdecomp/cycles.hpp"

using namespace hdecomp;

namespace {

std::map<Vertex, int> incident_piece_counts(const Decomposition& d) {
  std::map<Vertex, int> count;
  for (const Piece& p : d.pieces)
    for (Vertex v : p.cycle) ++count[v];
  return count;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hdecomp-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("hamiltonian decomposition of the square is the 4-cycle") {
  const Decomposition d = hamiltonian_decomposition(2);
  REQUIRE(d.pieces.size() == 1);
  CHECK(d.pieces[0].cycle.size() == 4);
  CHECK(d.kind == cycle_kind(4));
  CHECK(verify_decomposition(hypercube(2), d).valid);
}

TEST_CASE("hamiltonian decompositions split even hypercubes into spanning cycles") {
  for (int n : {4, 6, 8, 10}) {
    const Decomposition d = hamiltonian_decomposition(n);
    const Graph host = hypercube(n);
    REQUIRE(d.pieces.size() == static_cast<std::size_t>(n) / 2);
    for (const Piece& p : d.pieces) {
      CHECK(p.cycle.size() == host.vertex_count);  // spanning
      CHECK(p.pendants.empty());
    }
    CHECK(verify_decomposition(host, d).valid);
  }
}

TEST_CASE("hamiltonian decomposition rejects odd and oversized dimensions") {
  CHECK_THROWS_AS(hamiltonian_decomposition(3), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_decomposition(0), std::invalid_argument);
  CHECK_THROWS_AS(hamiltonian_decomposition(14), std::invalid_argument);
}

TEST_CASE("power-of-two cycle decompositions hit the expected piece counts") {
  TempDir tmp;
  const struct {
    int n, t;
    std::size_t pieces;
  } cases[] = {{4, 2, 8}, {4, 3, 4}, {4, 4, 2}, {6, 3, 24}, {6, 6, 3}, {8, 3, 128}};
  for (const auto& c : cases) {
    const Decomposition d = cycle_decomposition_pow2(c.n, c.t, 0, tmp.path.string());
    CHECK(d.pieces.size() == c.pieces);
    CHECK(d.kind == cycle_kind(1 << c.t));
    CHECK(verify_decomposition(hypercube(c.n), d).valid);
    for (const auto& [v, cnt] : incident_piece_counts(d)) CHECK(cnt == c.n / 2);
  }
}

TEST_CASE("power-of-two cycle decomposition validates its arguments") {
  CHECK_THROWS_AS(cycle_decomposition_pow2(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(cycle_decomposition_pow2(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(cycle_decomposition_pow2(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(cycle_decomposition_pow2(4, 5), std::invalid_argument);
  CHECK_THROWS_AS(cycle_decomposition_pow2(14, 3), std::invalid_argument);
}

TEST_CASE("instances without a strategy raise the search failure, not a wrong answer") {
  TempDir tmp;
  CHECK_THROWS_AS(cycle_decomposition_pow2(6, 4, 0, tmp.path.string()), SearchExhausted);
  CHECK_THROWS_AS(cycle_decomposition_pow2(10, 6, 0, tmp.path.string()), SearchExhausted);
}

TEST_CASE("searched instances persist to the fixture directory and reload") {
  TempDir tmp;
  const Decomposition first = cycle_decomposition_pow2(4, 3, 11, tmp.path.string());
  const std::filesystem::path fx = tmp.path / "cycles-n4-t3-seed11-v1.json";
  REQUIRE(std::filesystem::exists(fx));

  const Decomposition second = cycle_decomposition_pow2(4, 3, 11, tmp.path.string());
  CHECK(first.pieces == second.pieces);

  SECTION("corrupt fixture is ignored and recomputed") {
    std::ofstream(fx) << "not json";
    const Decomposition third = cycle_decomposition_pow2(4, 3, 11, tmp.path.string());
    CHECK(first.pieces == third.pieces);
    // and the fixture was rewritten with real content
    const Decomposition fourth = cycle_decomposition_pow2(4, 3, 11, tmp.path.string());
    CHECK(first.pieces == fourth.pieces);
  }

  SECTION("fixture for a different seed is a different file") {
    cycle_decomposition_pow2(4, 3, 12, tmp.path.string());
    CHECK(std::filesystem::exists(tmp.path / "cycles-n4-t3-seed12-v1.json"));
  }
}

TEST_CASE("same seed, same result; empty fixture dir never writes") {
  const Decomposition a = cycle_decomposition_pow2(6, 3, 5, "");
  const Decomposition b = cycle_decomposition_pow2(6, 3, 5, "");
  CHECK(a.pieces == b.pieces);
  CHECK(verify_decomposition(hypercube(6), a).valid);
}

TEST_CASE("composed instances agree with the vertex incidence invariant") {
  TempDir tmp;
  // 10 = 4 + 6 with 8-cycles on both factors
  const Decomposition d = cycle_decomposition_pow2(10, 3, 0, tmp.path.string());
  CHECK(d.pieces.size() == 640);
  CHECK(verify_decomposition(hypercube(10), d).valid);
  const auto counts = incident_piece_counts(d);
  CHECK(counts.size() == 1024);
  for (const auto& [v, cnt] : counts) CHECK(cnt == 5);
}
