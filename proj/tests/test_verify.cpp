// Independent checking: edge-partition verification, impossibility
// certificates, and the exact-cover oracle used as ground truth.

#include <algorithm>
#include <chrono>

#include <catch2/catch_amalgamated.hpp>

#include "hdecomp/cycles.hpp"
#include "hdecomp/sunlet.hpp"
#include "hdecomp/verify.hpp"

using namespace hdecomp;

TEST_CASE("a constructed decomposition verifies cleanly") {
  const Decomposition d = std::get<Decomposition>(sunlet16(6));
  const VerificationReport r = verify_decomposition(hypercube(6), d);
  CHECK(r.valid);
  CHECK(r.failures.empty());
  CHECK(r.piece_count == 12);
}

TEST_CASE("dropping a piece reports each of its edges as missing") {
  Decomposition d = std::get<Decomposition>(sunlet16(4));
  d.pieces.pop_back();
  const VerificationReport r = verify_decomposition(hypercube(4), d);
  CHECK_FALSE(r.valid);
  CHECK(r.failures.size() == 16);
  CHECK(std::all_of(r.failures.begin(), r.failures.end(), [](const VerificationFailure& f) {
    return f.kind == VerificationFailure::Kind::missing_edge;
  }));
}

TEST_CASE("duplicating a piece reports its edges as covered twice") {
  Decomposition d = std::get<Decomposition>(sunlet16(4));
  d.pieces.push_back(d.pieces[0]);
  const VerificationReport r = verify_decomposition(hypercube(4), d);
  CHECK_FALSE(r.valid);
  CHECK(r.failures.size() == 16);
  for (const VerificationFailure& f : r.failures) {
    CHECK(f.kind == VerificationFailure::Kind::duplicated_edge);
    CHECK(f.piece_index == 2);
  }
}

TEST_CASE("rewiring one cycle vertex breaks shape and coverage together") {
  Decomposition d = hamiltonian_decomposition(4);
  d.pieces[0].cycle[1] ^= 3;  // lands on another cycle vertex: walk repeats it
  const VerificationReport r = verify_decomposition(hypercube(4), d);
  CHECK_FALSE(r.valid);
  const auto count = [&](VerificationFailure::Kind k) {
    return std::count_if(r.failures.begin(), r.failures.end(),
                         [&](const VerificationFailure& f) { return f.kind == k; });
  };
  CHECK(count(VerificationFailure::Kind::bad_piece) == 1);
  // the two original edges at the old vertex went uncovered; the two claimed
  // replacements are each either off the host or collide with their owner
  CHECK(count(VerificationFailure::Kind::missing_edge) >= 2);
  CHECK(count(VerificationFailure::Kind::foreign_edge) +
            count(VerificationFailure::Kind::duplicated_edge) >=
        2);
}

TEST_CASE("labels beyond the host are flagged without crashing") {
  Decomposition d = hamiltonian_decomposition(2);
  d.pieces[0].cycle[2] = 99;
  const VerificationReport r = verify_decomposition(hypercube(2), d);
  CHECK_FALSE(r.valid);
  CHECK(std::any_of(r.failures.begin(), r.failures.end(), [](const VerificationFailure& f) {
    return f.kind == VerificationFailure::Kind::bad_piece && f.detail == "label out of range";
  }));
}

TEST_CASE("a cycle piece with pendants is the wrong shape") {
  Decomposition d = hamiltonian_decomposition(2);
  d.pieces[0].pendants = {2, 3, 1, 0};
  const VerificationReport r = verify_decomposition(hypercube(2), d);
  CHECK_FALSE(r.valid);
}

TEST_CASE("divisibility rules out dimensions 1 through 3") {
  for (int n : {1, 2, 3}) {
    const auto cert = divisibility_check(n);
    REQUIRE(cert.has_value());
    CHECK(cert->dimension == n);
    CHECK(cert->reason == ImpossibilityCertificate::Reason::divisibility);
    CHECK(cert->divisor == 16);
    CHECK(cert->edge_count == hypercube_edge_count(n));
    CHECK(cert->edge_count % 16 != 0);
    CHECK(certificate_consistent(*cert));
  }
  CHECK_FALSE(divisibility_check(4).has_value());
  CHECK_FALSE(divisibility_check(5).has_value());
  CHECK_FALSE(divisibility_check(12).has_value());
}

TEST_CASE("degree counting rules out dimension 5 only") {
  const auto cert = counting_obstruction(5);
  REQUIRE(cert.has_value());
  CHECK(cert->reason == ImpossibilityCertificate::Reason::degree_counting);
  CHECK(cert->pieces == 5);
  CHECK(cert->forced == 40);
  CHECK(cert->available == 32);
  CHECK(certificate_consistent(*cert));

  CHECK_FALSE(counting_obstruction(4).has_value());
  for (int n : {6, 7, 8, 12}) CHECK_FALSE(counting_obstruction(n).has_value());
  CHECK_THROWS_AS(counting_obstruction(3), std::invalid_argument);  // divisibility first
}

TEST_CASE("tampered certificates fail the consistency check") {
  ImpossibilityCertificate cert = *divisibility_check(3);
  cert.edge_count = 16;
  CHECK_FALSE(certificate_consistent(cert));
  ImpossibilityCertificate counting = *counting_obstruction(5);
  counting.forced = 30;
  CHECK_FALSE(certificate_consistent(counting));
  counting = *counting_obstruction(5);
  counting.dimension = 6;
  CHECK_FALSE(certificate_consistent(counting));
}

TEST_CASE("hypercube edge counts") {
  CHECK(hypercube_edge_count(1) == 1);
  CHECK(hypercube_edge_count(4) == 32);
  CHECK(hypercube_edge_count(9) == 2304);
  CHECK(hypercube_edge_count(16) == 524288);
  CHECK_THROWS_AS(hypercube_edge_count(0), std::invalid_argument);
}

TEST_CASE("oracle finds the torus sunlet pair from scratch") {
  const GraphDescriptor desc =
      GraphDescriptor::product(GraphDescriptor::cycle(4), GraphDescriptor::cycle(4));
  const OracleResult r = brute_force_decompose(desc, sunlet_kind(16));
  REQUIRE(r.status == OracleResult::Status::found);
  REQUIRE(r.decomposition.has_value());
  CHECK(r.decomposition->pieces.size() == 2);
  CHECK(verify_decomposition(desc.build(), *r.decomposition).valid);
}

TEST_CASE("oracle finds an 8-cycle decomposition of the 4-cube") {
  const GraphDescriptor desc = GraphDescriptor::hypercube(4);
  const OracleResult r = brute_force_decompose(desc, cycle_kind(8));
  REQUIRE(r.status == OracleResult::Status::found);
  CHECK(r.decomposition->pieces.size() == 4);
  CHECK(verify_decomposition(hypercube(4), *r.decomposition).valid);
}

TEST_CASE("oracle reports exhaustion when divisibility already fails") {
  const OracleResult r = brute_force_decompose(GraphDescriptor::hypercube(3), cycle_kind(8));
  CHECK(r.status == OracleResult::Status::exhausted);
  CHECK_FALSE(r.decomposition.has_value());
}

TEST_CASE("oracle exhausts a genuinely impossible search") {
  // 12 edges divide evenly into 4-cycles, but every vertex of the 3-cube
  // has odd degree, so no edge-disjoint cycle family can cover it
  const OracleResult r = brute_force_decompose(GraphDescriptor::hypercube(3), cycle_kind(4));
  CHECK(r.status == OracleResult::Status::exhausted);
}

TEST_CASE("oracle timeout is reported, not hidden") {
  const GraphDescriptor desc =
      GraphDescriptor::product(GraphDescriptor::cycle(8), GraphDescriptor::cycle(8));
  const OracleResult r =
      brute_force_decompose(desc, sunlet_kind(64), 0, std::chrono::milliseconds(0));
  CHECK(r.status == OracleResult::Status::timed_out);
  CHECK_FALSE(r.decomposition.has_value());
}

TEST_CASE("oracle refuses oversized hosts") {
  CHECK_THROWS_AS(brute_force_decompose(GraphDescriptor::hypercube(7), sunlet_kind(16)),
                  std::invalid_argument);
}

TEST_CASE("seeded oracle runs still verify") {
  const GraphDescriptor desc = GraphDescriptor::hypercube(4);
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    const OracleResult r = brute_force_decompose(desc, cycle_kind(4), seed);
    REQUIRE(r.status == OracleResult::Status::found);
    CHECK(r.decomposition->pieces.size() == 8);
    CHECK(verify_decomposition(hypercube(4), *r.decomposition).valid);
  }
}
